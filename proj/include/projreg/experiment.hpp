#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "projreg/config.hpp"

namespace projreg {

/// One CSV row of the sweep harness. truncation is part of the row key for
/// deterministic ordering but is not a CSV column; 0 means untruncated.
struct ExperimentRow {
  std::size_t trial = 0;
  std::size_t n = 0;
  double delta = 0.0;
  double alpha = 0.0;
  std::size_t truncation = 0;
  std::string method;
  double err_x = 0.0;
  double residual = 0.0;
  double mu_n = 0.0;
  double sigma_min = 0.0;
  double bound_lhs = 0.0;
  double bound_rhs = 0.0;
  bool holds = false;
};

inline constexpr const char* kCsvHeader =
    "trial,n,delta,alpha,method,err_x,residual,mu_n,sigma_min,bound_lhs,"
    "bound_rhs,holds";

std::string to_csv_line(const ExperimentRow& row);

/// Sorts by (trial, n, delta, alpha, truncation, method) and writes header
/// plus one line per row, so output is independent of generation order.
void write_results_csv(std::vector<ExperimentRow> rows,
                       const std::filesystem::path& path);

std::vector<ExperimentRow> run_experiment(const ExperimentConfig& config,
                                          bool quiet = true);

}  // namespace projreg
