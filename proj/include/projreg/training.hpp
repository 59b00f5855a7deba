#pragma once

#include <filesystem>

#include "projreg/dense_map.hpp"
#include "projreg/linalg.hpp"

namespace projreg {

/// Training pairs (x_k, y_k) with the per-pair noise bound delta.
/// delta is metadata here; only synthetic generators can verify it,
/// since the forward operator is unknown in the data-driven setting.
struct TrainingSet {
  std::vector<Vec> images;
  std::vector<Vec> data;
  double delta = 0.0;

  std::size_t n() const noexcept { return images.size(); }
  std::size_t m() const noexcept {
    return images.empty() ? 0 : images.front().size();
  }
  std::size_t q() const noexcept {
    return data.empty() ? 0 : data.front().size();
  }

  // One column per pair.
  DenseMap image_map() const { return DenseMap::from_columns(images); }
  DenseMap data_map() const { return DenseMap::from_columns(data); }
};

/// Sample mean/covariance statistics in factored form: the thin SVD of the
/// centered image map. The covariance spectrum is lambdas[k]^2 / n; the
/// dense covariance is never assembled outside test oracles.
struct CenteredModel {
  Vec x_mean;
  Vec y_mean;
  DenseMap basis;  // m x p', orthonormal columns
  Vec lambdas;     // p' positive singular values, non-increasing
  DenseMap xi;     // n x p', orthonormal columns
  std::size_t p_prime = 0;

  std::size_t n() const noexcept { return xi.rows(); }
};

struct RankBoundsReport {
  std::size_t p = 0;
  std::size_t p_prime = 0;
  bool holds = false;
};

TrainingSet assemble(std::vector<Vec> images, std::vector<Vec> data,
                     double delta);

CenteredModel sample_stats(const TrainingSet& ts,
                           double rel_tol = kDefaultRankTol);

/// p - 1 <= p' <= min(p, n-1), and p = n forces p' = n - 1.
RankBoundsReport rank_bounds_check(const TrainingSet& ts,
                                   double rel_tol = kDefaultRankTol);

/// Cameron-Martin norm of the sample covariance: sqrt(n) * |Lambda^-1 U* u|
/// when u lies in the span of the basis, +infinity otherwise. Membership
/// tolerance: residual <= 1e-9 * |u|.
double en_norm(const CenteredModel& model, const Vec& u);

void save_training_set(const TrainingSet& ts,
                       const std::filesystem::path& dir);
TrainingSet load_training_set(const std::filesystem::path& dir);

}  // namespace projreg
