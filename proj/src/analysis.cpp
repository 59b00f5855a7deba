#include "projreg/analysis.hpp"

#include <cmath>

#include "projreg/errors.hpp"
#include "projreg/rng.hpp"

namespace projreg {
namespace {

constexpr double kIdentityTol = 1e-8;

bool close_maps(const DenseMap& a, const DenseMap& b) {
  return hs_norm(sub(a, b)) <= kIdentityTol * (1.0 + hs_norm(b));
}

DenseMap scale_columns(const DenseMap& a, const Vec& w) {
  DenseMap out = a;
  for (std::size_t i = 0; i < out.rows(); ++i) {
    for (std::size_t j = 0; j < out.cols(); ++j) out(i, j) *= w[j];
  }
  return out;
}

}  // namespace

bool centered_injective(const CenteredModel& model,
                        const LearnedOperator& learned, double rel_tol) {
  return thin_svd(learned.ln, rel_tol).rank() == model.p_prime;
}

PinvIdentityReport pinv_identity_check(const CenteredModel& model,
                                       const LearnedOperator& learned,
                                       double rel_tol) {
  if (learned.kind != OperatorKind::Centered) {
    throw Error(ErrorCode::BadArgument,
                "pinv_identity_check expects a centered operator");
  }
  PinvIdentityReport report;
  report.a =
      matmul(scale_columns(model.basis, model.lambdas),
             pinv(learned.ln, rel_tol));

  const DenseMap kn_a = matmul(learned.kn, report.a);
  const ThinSVD kn_svd = thin_svd(learned.kn, rel_tol);
  const DenseMap range_projector =
      kn_svd.rank() == 0
          ? DenseMap(learned.kn.rows(), learned.kn.rows())
          : matmul(kn_svd.left, kn_svd.left.transposed());
  report.projector_onto_range = close_maps(kn_a, range_projector);
  report.a_recovery = close_maps(matmul(report.a, kn_a), report.a);
  report.kn_recovery = close_maps(matmul(kn_a, learned.kn), learned.kn);

  report.injective = centered_injective(model, learned, rel_tol);
  if (report.injective) {
    const DenseMap span_projector =
        matmul(model.basis, model.basis.transposed());
    report.projector_onto_span =
        close_maps(matmul(report.a, learned.kn), span_projector);
    report.matches_pinv =
        close_maps(report.a, pinv(learned.kn, rel_tol));
  }
  return report;
}

ErrorDecomposition error_decomposition_at(const DenseMap& k_true,
                                          const Vec& x_truth, const Vec& y,
                                          const CenteredModel& model,
                                          const LearnedOperator& learned,
                                          double rel_tol) {
  if (!centered_injective(model, learned, rel_tol)) {
    throw Error(ErrorCode::NotInjective,
                "error decomposition needs rank(L_n) = p'");
  }
  const Reconstruction rec = method3(model, learned, y, rel_tol);

  ErrorDecomposition dec;
  dec.x_hat = rec.x_hat;
  const Vec shift = vec_sub(x_truth, model.x_mean);
  dec.r_n = vec_sub(vec_sub(y, model.y_mean), learned.kn.apply(shift));

  const DenseMap a = matmul(scale_columns(model.basis, model.lambdas),
                            pinv(learned.ln, rel_tol));
  dec.d_n = a.apply(dec.r_n);

  const Vec prior_shift = vec_sub(model.x_mean, x_truth);
  dec.projection_term = vec_sub(
      prior_shift, model.basis.apply(model.basis.apply_transposed(prior_shift)));

  dec.mu_n = smallest_singular(learned.kn, rel_tol);
  const double mismatch = norm(vec_sub(k_true.apply(prior_shift),
                                       learned.kn.apply(prior_shift)));
  const double mean_defect =
      norm(vec_sub(model.y_mean, k_true.apply(model.x_mean)));
  dec.bound_rhs = (mismatch + mean_defect) / dec.mu_n;

  const Vec error = vec_sub(rec.x_hat, x_truth);
  dec.equality_defect =
      norm(vec_sub(error, vec_add(dec.projection_term, dec.d_n)));
  dec.decomposition_holds =
      dec.equality_defect <= 1e-9 * (1.0 + norm(x_truth));
  dec.bound_holds = norm(dec.d_n) <= dec.bound_rhs + 1e-9 * (1.0 + dec.bound_rhs);
  return dec;
}

ErrorDecomposition error_bound_check(const DenseMap& k_true,
                                     const Vec& x_truth,
                                     const CenteredModel& model,
                                     const LearnedOperator& learned,
                                     double rel_tol) {
  if (k_true.cols() != x_truth.size()) {
    throw Error(ErrorCode::NoTruth,
                "error_bound_check: operator and truth do not match");
  }
  return error_decomposition_at(k_true, x_truth, k_true.apply(x_truth),
                                model, learned, rel_tol);
}

TrainingSet noise_inject(const DenseMap& k, const std::vector<Vec>& x_list,
                         double delta, std::uint64_t seed) {
  if (!(delta >= 0.0)) {
    throw Error(ErrorCode::BadArgument, "noise_inject: delta must be >= 0");
  }
  std::vector<Vec> data;
  data.reserve(x_list.size());
  for (std::size_t idx = 0; idx < x_list.size(); ++idx) {
    Vec y = k.apply(x_list[idx]);
    if (delta > 0.0) {
      Rng rng(mix_seed(seed, idx));
      Vec g = rng.normal_vec(y.size());
      const double g_norm = norm(g);
      const double rho = rng.uniform();
      if (g_norm > 0.0) {
        const double scale = delta * rho / g_norm;
        for (std::size_t i = 0; i < y.size(); ++i) y[i] += scale * g[i];
      }
    }
    data.push_back(std::move(y));
  }
  return assemble(x_list, std::move(data), delta);
}

Vec data_noise(const DenseMap& k, const Vec& x_dagger, double eta_level,
               std::uint64_t seed) {
  if (!(eta_level >= 0.0)) {
    throw Error(ErrorCode::BadArgument, "data_noise: eta must be >= 0");
  }
  Vec y = k.apply(x_dagger);
  if (eta_level > 0.0) {
    Rng rng(mix_seed(seed, 0xd474));
    Vec g = rng.normal_vec(y.size());
    double g_norm = norm(g);
    while (g_norm == 0.0) {
      g = rng.normal_vec(y.size());
      g_norm = norm(g);
    }
    const double scale = eta_level / g_norm;
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += scale * g[i];
  }
  return y;
}

}  // namespace projreg
