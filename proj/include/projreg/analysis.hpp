#pragma once

#include <cstdint>

#include "projreg/solvers.hpp"

namespace projreg {

/// Report on A = U Lambda L^dagger, the closed-form pseudoinverse of the
/// centered surrogate. The first three identities hold unconditionally;
/// the last two require K_n restricted to the sample span to be injective,
/// decided by rank(L_n) = p'.
struct PinvIdentityReport {
  DenseMap a;                       // m x q
  bool projector_onto_range = false;  // K_n A = P_range(K_n)
  bool a_recovery = false;            // A K_n A = A
  bool kn_recovery = false;           // K_n A K_n = K_n
  bool injective = false;             // rank(L_n) = p'
  bool projector_onto_span = false;   // A K_n = U U*, injective case
  bool matches_pinv = false;          // A = K_n^dagger, injective case
};

/// Split of the reconstruction error x_hat - x_truth into the projection
/// of the prior shift onto the orthogonal complement of the sample span
/// plus the propagated consistency defect d_n = A r_n, with the bound
/// |d_n| <= (|(K - K_n)(x_mean - x_truth)| + |y_mean - K x_mean|) / mu_n.
struct ErrorDecomposition {
  Vec x_hat;
  Vec projection_term;
  Vec d_n;
  Vec r_n;
  double mu_n = 0.0;
  double bound_rhs = 0.0;
  double equality_defect = 0.0;
  bool decomposition_holds = false;
  bool bound_holds = false;
};

bool centered_injective(const CenteredModel& model,
                        const LearnedOperator& learned,
                        double rel_tol = kDefaultDataRankTol);

PinvIdentityReport pinv_identity_check(
    const CenteredModel& model, const LearnedOperator& learned,
    double rel_tol = kDefaultDataRankTol);

/// Exact-data form: the observation is K x_truth, and the bound on |d_n|
/// is asserted (bound_holds).
ErrorDecomposition error_bound_check(
    const DenseMap& k_true, const Vec& x_truth, const CenteredModel& model,
    const LearnedOperator& learned, double rel_tol = kDefaultDataRankTol);

/// Same decomposition at an arbitrary observed y (noisy data). The bound
/// fields are diagnostics only; the bound is not guaranteed off y = K x.
ErrorDecomposition error_decomposition_at(
    const DenseMap& k_true, const Vec& x_truth, const Vec& y,
    const CenteredModel& model, const LearnedOperator& learned,
    double rel_tol = kDefaultDataRankTol);

/// y_k = K x_k + delta * rho_k * g_k / |g_k| with rho uniform on [0,1),
/// so |y_k - K x_k| <= delta exactly by construction.
TrainingSet noise_inject(const DenseMap& k, const std::vector<Vec>& x_list,
                         double delta, std::uint64_t seed);

/// y = K x_dagger + eta with |eta| = eta_level exactly.
Vec data_noise(const DenseMap& k, const Vec& x_dagger, double eta_level,
               std::uint64_t seed);

}  // namespace projreg
