#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "projreg/operator_learning.hpp"

namespace projreg {

enum class Method { MethodI, MethodIII, Map, OracleDLS };

const char* method_token(Method method) noexcept;

struct Reconstruction {
  Vec x_hat;
  Method method = Method::MethodI;
  double alpha = 0.0;  // Map only
  double residual_norm = 0.0;
  std::vector<std::pair<std::string, double>> diagnostics;
};

/// Least-squares projection: minimal-norm least-squares solution through
/// the pseudoinverse of the learned operator.
Reconstruction method1(const LearnedOperator& learned, const Vec& y,
                       double rel_tol = kDefaultRankTol);

/// Bayesian dual least squares: x_mean + U Lambda L^dagger (y - y_mean),
/// the minimizer of minimal Cameron-Martin norm on the affine sample space.
Reconstruction method3(const CenteredModel& model,
                       const LearnedOperator& learned, const Vec& y,
                       double rel_tol = kDefaultDataRankTol);

/// Maximum a posteriori estimate: L^dagger replaced by the Tikhonov
/// inverse (L*L + alpha I)^-1 L*, evaluated through the SVD of L.
Reconstruction map_estimate(const CenteredModel& model,
                            const LearnedOperator& learned, const Vec& y,
                            double alpha);

/// The objective the MAP estimate minimizes over the affine sample space,
/// written in image coordinates; +infinity off the affine space.
double map_objective(const CenteredModel& model,
                     const LearnedOperator& learned, const Vec& y,
                     double alpha, const Vec& x);

/// Dual least squares against the true operator, projected onto the span
/// of subspace_basis. Baseline only: it needs knowledge the data-driven
/// methods do not have.
Reconstruction oracle_dls(const DenseMap& k_true,
                          const DenseMap& subspace_basis, const Vec& y,
                          double rel_tol = kDefaultRankTol);

void save_reconstruction(const Reconstruction& rec,
                         const std::filesystem::path& dir);
Reconstruction load_reconstruction(const std::filesystem::path& dir);

}  // namespace projreg
