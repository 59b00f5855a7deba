#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace projreg {

/// Experiment description parsed from `key = value` text with `[section]`
/// headers; lists are comma-separated. truncation 0 means "no truncation".
struct ExperimentConfig {
  std::size_t m = 30;
  std::size_t q = 30;
  double kernel_width = 0.1;

  std::vector<std::size_t> n_values = {8};
  std::vector<double> delta_values = {0.0};
  std::vector<double> alpha_values = {1e-3};
  std::vector<std::size_t> truncation_values = {0};

  std::size_t trials = 1;
  std::int64_t base_seed = 0;
  std::string output_dir = "out";
  double rank_tol = 1e-12;
  double data_tol = 1e-10;

  bool operator==(const ExperimentConfig&) const = default;
};

ExperimentConfig parse_config_text(const std::string& text);
std::string serialize_config(const ExperimentConfig& config);

ExperimentConfig load_config(const std::filesystem::path& path);
void save_config(const ExperimentConfig& config,
                 const std::filesystem::path& path);

}  // namespace projreg
