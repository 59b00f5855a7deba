#pragma once

#include <filesystem>
#include <utility>

#include "projreg/dense_map.hpp"
#include "projreg/errors.hpp"
#include "projreg/rng.hpp"

namespace projreg::test {

inline DenseMap random_map(std::size_t rows, std::size_t cols,
                           std::uint64_t seed) {
  Rng rng(seed);
  DenseMap a(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a(i, j) = rng.normal();
  return a;
}

inline Vec random_unit(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  Vec v = rng.normal_vec(n);
  const double s = norm(v);
  return s > 0.0 ? vec_scaled(v, 1.0 / s) : v;
}

inline std::vector<Vec> random_images(std::size_t m, std::size_t n,
                                      std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Vec> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) out.push_back(rng.normal_vec(m));
  return out;
}

inline std::vector<Vec> apply_all(const DenseMap& k,
                                  const std::vector<Vec>& xs) {
  std::vector<Vec> out;
  out.reserve(xs.size());
  for (const Vec& x : xs) out.push_back(k.apply(x));
  return out;
}

template <typename F>
bool throws_code(F&& f, ErrorCode code) {
  try {
    std::forward<F>(f)();
  } catch (const Error& e) {
    return e.code() == code;
  } catch (...) {
    return false;
  }
  return false;
}

/// Fresh scratch directory under the system temp root, wiped on entry.
inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "projreg_tests" / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace projreg::test
