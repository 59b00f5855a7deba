#include "projreg/config.hpp"

#include <fstream>
#include <sstream>

#include "projreg/dense_map.hpp"
#include "projreg/errors.hpp"

namespace projreg {
namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = value.find(',', start);
    if (pos == std::string::npos) {
      items.push_back(trim(value.substr(start)));
      break;
    }
    items.push_back(trim(value.substr(start, pos - start)));
    start = pos + 1;
  }
  return items;
}

std::size_t parse_count(const std::string& value, const std::string& key) {
  const double v = parse_double(value);
  if (v < 0.0 || v != static_cast<double>(static_cast<std::size_t>(v))) {
    throw Error(ErrorCode::BadArgument,
                "config: '" + key + "' must be a nonnegative integer");
  }
  return static_cast<std::size_t>(v);
}

std::vector<double> parse_real_list(const std::string& value,
                                    const std::string& key) {
  std::vector<double> out;
  for (const std::string& item : split_list(value)) {
    if (item.empty()) {
      throw Error(ErrorCode::BadArgument, "config: empty item in " + key);
    }
    out.push_back(parse_double(item));
  }
  return out;
}

std::vector<std::size_t> parse_count_list(const std::string& value,
                                          const std::string& key) {
  std::vector<std::size_t> out;
  for (const std::string& item : split_list(value)) {
    out.push_back(parse_count(item, key));
  }
  return out;
}

template <typename T>
std::string join(const std::vector<T>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    if constexpr (std::is_same_v<T, double>) {
      out += format_double(values[i]);
    } else {
      out += std::to_string(values[i]);
    }
  }
  return out;
}

void validate(const ExperimentConfig& config) {
  if (config.m < 2 || config.q < 2) {
    throw Error(ErrorCode::BadArgument, "config: need m, q >= 2");
  }
  if (!(config.kernel_width > 0.0)) {
    throw Error(ErrorCode::BadArgument, "config: kernel_width must be > 0");
  }
  if (config.n_values.empty() || config.delta_values.empty() ||
      config.alpha_values.empty() || config.truncation_values.empty()) {
    throw Error(ErrorCode::BadArgument, "config: sweep lists must be nonempty");
  }
  if (config.trials < 1) {
    throw Error(ErrorCode::BadArgument, "config: trials must be >= 1");
  }
  if (config.output_dir.empty()) {
    throw Error(ErrorCode::BadArgument, "config: output_dir must be set");
  }
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig config;
  std::istringstream in(text);
  std::string line;
  std::string section;
  while (std::getline(in, line)) {
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped.front() == '#') continue;
    if (stripped.front() == '[') {
      if (stripped.back() != ']') {
        throw Error(ErrorCode::BadArgument,
                    "config: malformed section '" + stripped + "'");
      }
      section = trim(stripped.substr(1, stripped.size() - 2));
      continue;
    }
    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::BadArgument,
                  "config: expected key = value, got '" + stripped + "'");
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    const std::string qualified = section + "." + key;

    if (qualified == "problem.m") {
      config.m = parse_count(value, qualified);
    } else if (qualified == "problem.q") {
      config.q = parse_count(value, qualified);
    } else if (qualified == "problem.kernel_width") {
      config.kernel_width = parse_double(value);
    } else if (qualified == "sweep.n") {
      config.n_values = parse_count_list(value, qualified);
    } else if (qualified == "sweep.delta") {
      config.delta_values = parse_real_list(value, qualified);
    } else if (qualified == "sweep.alpha") {
      config.alpha_values = parse_real_list(value, qualified);
    } else if (qualified == "sweep.truncation") {
      config.truncation_values = parse_count_list(value, qualified);
    } else if (qualified == "run.trials") {
      config.trials = parse_count(value, qualified);
    } else if (qualified == "run.base_seed") {
      config.base_seed = static_cast<std::int64_t>(parse_double(value));
    } else if (qualified == "run.output_dir") {
      config.output_dir = value;
    } else if (qualified == "run.rank_tol") {
      config.rank_tol = parse_double(value);
    } else if (qualified == "run.data_tol") {
      config.data_tol = parse_double(value);
    } else {
      throw Error(ErrorCode::BadArgument,
                  "config: unknown key '" + qualified + "'");
    }
  }
  validate(config);
  return config;
}

std::string serialize_config(const ExperimentConfig& config) {
  std::string out;
  out += "[problem]\n";
  out += "m = " + std::to_string(config.m) + "\n";
  out += "q = " + std::to_string(config.q) + "\n";
  out += "kernel_width = " + format_double(config.kernel_width) + "\n";
  out += "\n[sweep]\n";
  out += "n = " + join(config.n_values) + "\n";
  out += "delta = " + join(config.delta_values) + "\n";
  out += "alpha = " + join(config.alpha_values) + "\n";
  out += "truncation = " + join(config.truncation_values) + "\n";
  out += "\n[run]\n";
  out += "trials = " + std::to_string(config.trials) + "\n";
  out += "base_seed = " + std::to_string(config.base_seed) + "\n";
  out += "output_dir = " + config.output_dir + "\n";
  out += "rank_tol = " + format_double(config.rank_tol) + "\n";
  out += "data_tol = " + format_double(config.data_tol) + "\n";
  return out;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::IoError, "cannot open " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

void save_config(const ExperimentConfig& config,
                 const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw Error(ErrorCode::IoError, "cannot open " + path.string());
  }
  out << serialize_config(config);
  if (!out) {
    throw Error(ErrorCode::IoError, "write failed: " + path.string());
  }
}

}  // namespace projreg
