#include "projreg/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "projreg/errors.hpp"
#include "projreg/kernels.hpp"

namespace projreg {
namespace {

constexpr double kJacobiEps = 1e-13;
constexpr int kMaxSweeps = 100;

// One-sided Jacobi on the rows of wt (= columns of the input map).
// Rotations are applied in a fixed cyclic pivot order, which makes the
// factorization deterministic, including the basis chosen within
// degenerate singular subspaces.
void orthogonalize_rows(DenseMap& wt, DenseMap& vt) {
  const std::size_t n = wt.rows();
  const std::size_t len = wt.cols();
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double alpha = kernels::sumsq(wt.row(i), len);
        const double beta = kernels::sumsq(wt.row(j), len);
        const double gamma = kernels::dot(wt.row(i), wt.row(j), len);
        if (std::abs(gamma) <=
            kJacobiEps * std::sqrt(alpha) * std::sqrt(beta)) {
          continue;
        }
        const double tau = (beta - alpha) / (2.0 * gamma);
        double t;
        if (std::abs(tau) > 1e150) {
          t = 1.0 / (2.0 * tau);
        } else {
          t = std::copysign(1.0, tau) /
              (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        }
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        kernels::rot(wt.row(i), wt.row(j), c, -s, len);
        kernels::rot(vt.row(i), vt.row(j), c, -s, vt.cols());
        rotated = true;
      }
    }
    if (!rotated) break;
  }
}

ThinSVD thin_svd_tall(const DenseMap& a, double rel_tol) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  DenseMap wt = a.transposed();
  DenseMap vt = DenseMap::identity(n);
  orthogonalize_rows(wt, vt);

  Vec norms(n);
  for (std::size_t i = 0; i < n; ++i) {
    norms[i] = std::sqrt(kernels::sumsq(wt.row(i), m));
  }
  const double sigma_max =
      norms.empty() ? 0.0 : *std::max_element(norms.begin(), norms.end());
  const double cutoff = rel_tol * sigma_max;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) {
                     return norms[i] > norms[j];
                   });

  ThinSVD out;
  out.rank_tolerance_used = cutoff;
  std::vector<std::size_t> kept;
  for (std::size_t idx : order) {
    if (norms[idx] > cutoff && norms[idx] > 0.0) kept.push_back(idx);
  }
  const std::size_t r = kept.size();
  out.left = DenseMap(m, r);
  out.right = DenseMap(n, r);
  out.singulars.resize(r);
  for (std::size_t k = 0; k < r; ++k) {
    const std::size_t idx = kept[k];
    const double sigma = norms[idx];
    out.singulars[k] = sigma;
    for (std::size_t i = 0; i < m; ++i) out.left(i, k) = wt(idx, i) / sigma;
    for (std::size_t i = 0; i < n; ++i) out.right(i, k) = vt(idx, i);
  }
  return out;
}

DenseMap scale_columns(const DenseMap& a, const Vec& w) {
  DenseMap out = a;
  for (std::size_t i = 0; i < out.rows(); ++i) {
    for (std::size_t j = 0; j < out.cols(); ++j) out(i, j) *= w[j];
  }
  return out;
}

}  // namespace

DenseMap svd_compose(const DenseMap& left, const Vec& weights,
                     const DenseMap& right) {
  if (left.cols() != weights.size() || right.cols() != weights.size()) {
    throw Error(ErrorCode::DimensionMismatch, "svd_compose: factor mismatch");
  }
  if (weights.empty()) return DenseMap(left.rows(), right.rows());
  return matmul(scale_columns(left, weights), right.transposed());
}

DenseMap ThinSVD::reconstruct() const {
  return svd_compose(left, singulars, right);
}

ThinSVD thin_svd(const DenseMap& a, double rel_tol) {
  if (!a.is_finite()) {
    throw Error(ErrorCode::NonFinite, "thin_svd: non-finite input");
  }
  if (rel_tol < 0.0) {
    throw Error(ErrorCode::BadArgument, "thin_svd: negative tolerance");
  }
  if (a.rows() >= a.cols()) return thin_svd_tall(a, rel_tol);
  ThinSVD t = thin_svd_tall(a.transposed(), rel_tol);
  std::swap(t.left, t.right);
  return t;
}

ThinSVD truncate(const ThinSVD& svd, std::size_t k) {
  if (k == 0) {
    throw Error(ErrorCode::RankZero, "truncate: rank-zero factorization");
  }
  if (k > svd.rank()) {
    throw Error(ErrorCode::TruncationTooLarge,
                "truncate: rank exceeds retained triplets");
  }
  ThinSVD out;
  out.rank_tolerance_used = svd.rank_tolerance_used;
  out.singulars.assign(svd.singulars.begin(), svd.singulars.begin() + k);
  out.left = DenseMap(svd.left.rows(), k);
  out.right = DenseMap(svd.right.rows(), k);
  for (std::size_t j = 0; j < k; ++j) {
    out.left.set_column(j, svd.left.column(j));
    out.right.set_column(j, svd.right.column(j));
  }
  return out;
}

DenseMap pinv(const DenseMap& a, double rel_tol) {
  const ThinSVD svd = thin_svd(a, rel_tol);
  Vec inverted(svd.rank());
  for (std::size_t k = 0; k < svd.rank(); ++k) {
    inverted[k] = 1.0 / svd.singulars[k];
  }
  return svd_compose(svd.right, inverted, svd.left);
}

DenseMap pinv_tikhonov(const DenseMap& a, double alpha) {
  if (!(alpha > 0.0)) {
    throw Error(ErrorCode::NonPositiveAlpha,
                "pinv_tikhonov: alpha must be positive");
  }
  const ThinSVD svd = thin_svd(a, 0.0);
  Vec factors(svd.rank());
  for (std::size_t k = 0; k < svd.rank(); ++k) {
    const double sigma = svd.singulars[k];
    factors[k] = sigma / (sigma * sigma + alpha);
  }
  return svd_compose(svd.right, factors, svd.left);
}

double hs_norm(const DenseMap& a) {
  if (!a.is_finite()) {
    throw Error(ErrorCode::NonFinite, "hs_norm: non-finite input");
  }
  return std::sqrt(kernels::sumsq(a.entries().data(), a.entries().size()));
}

double spectral_norm(const DenseMap& a) {
  const ThinSVD svd = thin_svd(a);
  return svd.rank() == 0 ? 0.0 : svd.singulars.front();
}

double smallest_singular(const DenseMap& a, double rel_tol) {
  const ThinSVD svd = thin_svd(a, rel_tol);
  if (svd.rank() == 0) {
    throw Error(ErrorCode::RankZero, "smallest_singular: zero map");
  }
  return svd.singulars.back();
}

DenseMap orthonormal_completion(const DenseMap& q) {
  const std::size_t m = q.rows();
  DenseMap residual = DenseMap::identity(m);
  if (q.cols() > 0) {
    residual = sub(residual, matmul(q, q.transposed()));
  }
  // The residual is a projector, so its singular values sit near 0 or 1;
  // an absolute cutoff keeps the complement and rejects rounding noise
  // even when the complement is empty.
  const ThinSVD svd = thin_svd(residual, 0.0);
  std::size_t keep = 0;
  while (keep < svd.singulars.size() && svd.singulars[keep] > 0.5) ++keep;
  DenseMap out(m, keep);
  for (std::size_t j = 0; j < keep; ++j) out.set_column(j, svd.left.column(j));
  return out;
}

}  // namespace projreg
