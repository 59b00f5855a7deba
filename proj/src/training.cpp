#include "projreg/training.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "projreg/errors.hpp"
#include "projreg/kernels.hpp"
#include "projreg/kv.hpp"

namespace projreg {

TrainingSet assemble(std::vector<Vec> images, std::vector<Vec> data,
                     double delta) {
  if (images.empty() || data.empty()) {
    throw Error(ErrorCode::EmptySet, "assemble: no training pairs");
  }
  if (images.size() != data.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                "assemble: image/data count mismatch");
  }
  if (!(delta >= 0.0)) {
    throw Error(ErrorCode::BadArgument, "assemble: delta must be >= 0");
  }
  const std::size_t m = images.front().size();
  const std::size_t q = data.front().size();
  if (m == 0 || q == 0) {
    throw Error(ErrorCode::DimensionMismatch, "assemble: empty vectors");
  }
  for (std::size_t k = 0; k < images.size(); ++k) {
    if (images[k].size() != m || data[k].size() != q) {
      throw Error(ErrorCode::DimensionMismatch,
                  "assemble: inconsistent vector lengths");
    }
    for (double v : images[k]) {
      if (!std::isfinite(v)) {
        throw Error(ErrorCode::NonFinite, "assemble: non-finite image entry");
      }
    }
    for (double v : data[k]) {
      if (!std::isfinite(v)) {
        throw Error(ErrorCode::NonFinite, "assemble: non-finite data entry");
      }
    }
  }
  TrainingSet ts;
  ts.images = std::move(images);
  ts.data = std::move(data);
  ts.delta = delta;
  return ts;
}

namespace {

// Two-pass mean: the correction pass removes the O(n*eps*|mean|) bias of
// naive summation, which keeps the all-ones vector numerically in the null
// space of the centered map even when the mean dominates the spread.
Vec refined_mean(const std::vector<Vec>& vectors) {
  const std::size_t dim = vectors.front().size();
  const double inv_n = 1.0 / static_cast<double>(vectors.size());
  Vec mean(dim, 0.0);
  for (const Vec& v : vectors) {
    kernels::axpy(1.0, v.data(), mean.data(), dim);
  }
  kernels::scal(inv_n, mean.data(), mean.size());
  Vec correction(dim, 0.0);
  for (const Vec& v : vectors) {
    for (std::size_t i = 0; i < dim; ++i) correction[i] += v[i] - mean[i];
  }
  kernels::axpy(inv_n, correction.data(), mean.data(), dim);
  return mean;
}

}  // namespace

CenteredModel sample_stats(const TrainingSet& ts, double rel_tol) {
  const std::size_t n = ts.n();
  const std::size_t m = ts.m();
  CenteredModel model;
  model.x_mean = refined_mean(ts.images);
  model.y_mean = refined_mean(ts.data);

  DenseMap centered(m, n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < m; ++i) {
      centered(i, k) = ts.images[k][i] - model.x_mean[i];
    }
  }
  ThinSVD svd = thin_svd(centered, rel_tol);
  model.basis = std::move(svd.left);
  model.lambdas = std::move(svd.singulars);
  model.xi = std::move(svd.right);
  model.p_prime = model.lambdas.size();
  return model;
}

RankBoundsReport rank_bounds_check(const TrainingSet& ts, double rel_tol) {
  RankBoundsReport report;
  report.p = thin_svd(ts.image_map(), rel_tol).rank();
  report.p_prime = sample_stats(ts, rel_tol).p_prime;
  const std::size_t n = ts.n();
  const std::size_t upper = std::min(report.p, n - 1);
  const bool lower_ok = report.p_prime + 1 >= report.p;
  const bool upper_ok = report.p_prime <= upper;
  const bool full_rank_ok = report.p != n || report.p_prime == n - 1;
  report.holds = lower_ok && upper_ok && full_rank_ok;
  return report;
}

double en_norm(const CenteredModel& model, const Vec& u) {
  if (u.size() != model.x_mean.size()) {
    throw Error(ErrorCode::DimensionMismatch, "en_norm: vector length");
  }
  const double u_norm = norm(u);
  Vec coeffs = model.basis.apply_transposed(u);
  Vec residual = u;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    for (std::size_t i = 0; i < residual.size(); ++i) {
      residual[i] -= coeffs[k] * model.basis(i, k);
    }
  }
  if (norm(residual) > 1e-9 * u_norm) {
    return std::numeric_limits<double>::infinity();
  }
  double acc = 0.0;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    const double c = coeffs[k] / model.lambdas[k];
    acc += c * c;
  }
  return std::sqrt(static_cast<double>(model.n()) * acc);
}

void save_training_set(const TrainingSet& ts,
                       const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  save_csv(ts.image_map(), dir / "images.csv");
  save_csv(ts.data_map(), dir / "data.csv");
  save_kv({{"n", std::to_string(ts.n())},
           {"m", std::to_string(ts.m())},
           {"q", std::to_string(ts.q())},
           {"delta", format_double(ts.delta)}},
          dir / "meta");
}

TrainingSet load_training_set(const std::filesystem::path& dir) {
  const DenseMap images = load_csv(dir / "images.csv");
  const DenseMap data = load_csv(dir / "data.csv");
  const KvPairs meta = load_kv(dir / "meta");
  const std::size_t n = static_cast<std::size_t>(
      parse_double(kv_get(meta, "n")));
  const std::size_t m = static_cast<std::size_t>(
      parse_double(kv_get(meta, "m")));
  const std::size_t q = static_cast<std::size_t>(
      parse_double(kv_get(meta, "q")));
  if (images.cols() != n || data.cols() != n || images.rows() != m ||
      data.rows() != q) {
    throw Error(ErrorCode::IoError, "training set meta/content mismatch");
  }
  std::vector<Vec> xs(n), ys(n);
  for (std::size_t k = 0; k < n; ++k) {
    xs[k] = images.column(k);
    ys[k] = data.column(k);
  }
  return assemble(std::move(xs), std::move(ys),
                  parse_double(kv_get(meta, "delta")));
}

}  // namespace projreg
