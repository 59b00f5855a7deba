#pragma once

#include <cstdint>
#include <filesystem>

#include "projreg/dense_map.hpp"

namespace projreg {

/// Fully known test instance: forward operator, Gaussian prior in factored
/// form (covariance = prior_factor * prior_factor*), and a deterministic
/// ground truth, so every learned quantity can be checked against it.
struct SyntheticProblem {
  DenseMap k;             // q x m
  Vec prior_mean;         // in R^m
  DenseMap prior_factor;  // m x r
  Vec x_dagger;           // in R^m
  double kernel_width = 0.0;

  std::size_t m() const noexcept { return k.cols(); }
  std::size_t q() const noexcept { return k.rows(); }
};

/// Discretized smoothing operator on [0,1]: Gaussian kernel times the 1/m
/// quadrature weight on cell-centered grids. Narrow widths approach the
/// 1/m-scaled identity; realistic widths give steeply decaying singular
/// values. The prior factor is the symmetric square root of a Matern-type
/// correlation, the prior mean one draw from it.
SyntheticProblem make_smoothing_problem(std::size_t m, std::size_t q,
                                        double kernel_width,
                                        std::uint64_t seed);

/// x_k = prior_mean + prior_factor * g_k, sample k seeded with seed + k.
std::vector<Vec> sample_images(const SyntheticProblem& problem,
                               std::size_t n, std::uint64_t seed);

/// e1, e1 + eps*e2, ..., e1 + eps*e_n: nearly collinear for small eps,
/// with smallest singular value on the order of eps.
std::vector<Vec> make_collinear_images(std::size_t m, std::size_t n,
                                       double epsilon);

/// Three points of R^3 on one affine line: spans a plane (p = 2) but the
/// centered rank drops to p' = 1.
std::vector<Vec> aligned_triplet();

/// Three affinely independent points of R^3 inside a plane: p = p' = 2.
std::vector<Vec> planar_triplet();

void save_problem(const SyntheticProblem& problem,
                  const std::filesystem::path& dir);
SyntheticProblem load_problem(const std::filesystem::path& dir);

}  // namespace projreg
