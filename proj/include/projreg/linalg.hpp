#pragma once

#include "projreg/dense_map.hpp"
#include "projreg/tolerance.hpp"

namespace projreg {

/// Thin singular value decomposition A = left * diag(singulars) * right*.
/// Only triplets with sigma > rel_tol * sigma_max are retained, so rank()
/// is the tolerance-aware numerical rank; the zero map has empty factors.
struct ThinSVD {
  DenseMap left;
  Vec singulars;
  DenseMap right;
  double rank_tolerance_used = 0.0;

  std::size_t rank() const noexcept { return singulars.size(); }
  DenseMap reconstruct() const;
};

ThinSVD thin_svd(const DenseMap& a, double rel_tol = kDefaultRankTol);

/// Keep the k largest triplets (the truncated-SVD remedy for nearly
/// collinear training images).
ThinSVD truncate(const ThinSVD& svd, std::size_t k);

DenseMap pinv(const DenseMap& a, double rel_tol = kDefaultRankTol);

/// (A*A + alpha I)^-1 A*, evaluated through the SVD of A.
DenseMap pinv_tikhonov(const DenseMap& a, double alpha);

double hs_norm(const DenseMap& a);
double spectral_norm(const DenseMap& a);
double smallest_singular(const DenseMap& a, double rel_tol = kDefaultRankTol);

/// Orthonormal basis of the orthogonal complement of the columns of q
/// (columns of q must themselves be orthonormal).
DenseMap orthonormal_completion(const DenseMap& q);

/// left * diag(weights) * right* without forming the diagonal map.
DenseMap svd_compose(const DenseMap& left, const Vec& weights,
                     const DenseMap& right);

}  // namespace projreg
