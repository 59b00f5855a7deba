#include "projreg/solvers.hpp"

#include <cmath>
#include <limits>

#include "projreg/errors.hpp"
#include "projreg/kv.hpp"
#include "projreg/training.hpp"

namespace projreg {

const char* method_token(Method method) noexcept {
  switch (method) {
    case Method::MethodI:
      return "i";
    case Method::MethodIII:
      return "iii";
    case Method::Map:
      return "map";
    case Method::OracleDLS:
      return "oracle-dls";
  }
  return "?";
}

namespace {

void require_kind(const LearnedOperator& learned, OperatorKind kind,
                  const char* what) {
  if (learned.kind != kind) {
    throw Error(ErrorCode::BadArgument, what);
  }
}

// y - y_mean, plus the coefficient-space solve shared by method3 and the
// MAP estimate: x_hat = x_mean + U Lambda xi_coeffs.
Vec lift(const CenteredModel& model, const Vec& xi_coeffs) {
  Vec scaled = xi_coeffs;
  for (std::size_t k = 0; k < scaled.size(); ++k) {
    scaled[k] *= model.lambdas[k];
  }
  return vec_add(model.x_mean, model.basis.apply(scaled));
}

double centered_residual(const LearnedOperator& learned, const Vec& x_hat,
                         const CenteredModel& model, const Vec& yc) {
  const Vec shift = vec_sub(x_hat, model.x_mean);
  return norm(vec_sub(learned.kn.apply(shift), yc));
}

}  // namespace

Reconstruction method1(const LearnedOperator& learned, const Vec& y,
                       double rel_tol) {
  require_kind(learned, OperatorKind::Uncentered,
               "method1 expects an uncentered operator");
  const ThinSVD svd = thin_svd(learned.kn, rel_tol);
  if (svd.rank() == 0) {
    throw Error(ErrorCode::RankZero, "method1: learned operator is zero");
  }
  Vec coeffs = svd.left.apply_transposed(y);
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    coeffs[k] /= svd.singulars[k];
  }
  Reconstruction rec;
  rec.method = Method::MethodI;
  rec.x_hat = svd.right.apply(coeffs);
  rec.residual_norm = norm(vec_sub(learned.kn.apply(rec.x_hat), y));
  rec.diagnostics = {
      {"kn_rank", static_cast<double>(svd.rank())},
      {"mu_n", svd.singulars.back()},
  };
  return rec;
}

Reconstruction method3(const CenteredModel& model,
                       const LearnedOperator& learned, const Vec& y,
                       double rel_tol) {
  require_kind(learned, OperatorKind::Centered,
               "method3 expects a centered operator");
  if (model.p_prime == 0) {
    throw Error(ErrorCode::RankZero, "method3: empty sample space");
  }
  const Vec yc = vec_sub(y, model.y_mean);
  const Vec xi_coeffs = pinv(learned.ln, rel_tol).apply(yc);
  Reconstruction rec;
  rec.method = Method::MethodIII;
  rec.x_hat = lift(model, xi_coeffs);
  rec.residual_norm = centered_residual(learned, rec.x_hat, model, yc);
  rec.diagnostics = {
      {"en_norm_of_shift",
       std::sqrt(static_cast<double>(model.n())) * norm(xi_coeffs)},
      {"ln_rank",
       static_cast<double>(thin_svd(learned.ln, rel_tol).rank())},
  };
  return rec;
}

Reconstruction map_estimate(const CenteredModel& model,
                            const LearnedOperator& learned, const Vec& y,
                            double alpha) {
  require_kind(learned, OperatorKind::Centered,
               "map_estimate expects a centered operator");
  if (!(alpha > 0.0)) {
    throw Error(ErrorCode::NonPositiveAlpha,
                "map_estimate: alpha must be positive");
  }
  const Vec yc = vec_sub(y, model.y_mean);
  const Vec xi_coeffs = pinv_tikhonov(learned.ln, alpha).apply(yc);

  // Residual of (L*L + alpha I) xi = L* yc.
  Vec normal_lhs = learned.ln.apply_transposed(learned.ln.apply(xi_coeffs));
  for (std::size_t k = 0; k < xi_coeffs.size(); ++k) {
    normal_lhs[k] += alpha * xi_coeffs[k];
  }
  const double normal_residual =
      norm(vec_sub(normal_lhs, learned.ln.apply_transposed(yc)));

  Reconstruction rec;
  rec.method = Method::Map;
  rec.alpha = alpha;
  rec.x_hat = lift(model, xi_coeffs);
  rec.residual_norm = centered_residual(learned, rec.x_hat, model, yc);
  rec.diagnostics = {
      {"normal_eq_residual", normal_residual},
      {"objective", map_objective(model, learned, y, alpha, rec.x_hat)},
  };
  return rec;
}

double map_objective(const CenteredModel& model,
                     const LearnedOperator& learned, const Vec& y,
                     double alpha, const Vec& x) {
  const Vec shift = vec_sub(x, model.x_mean);
  const double en = en_norm(model, shift);
  if (!std::isfinite(en)) return std::numeric_limits<double>::infinity();
  const Vec yc = vec_sub(y, model.y_mean);
  const double misfit = norm(vec_sub(learned.kn.apply(shift), yc));
  return misfit * misfit +
         alpha * en * en / static_cast<double>(model.n());
}

Reconstruction oracle_dls(const DenseMap& k_true,
                          const DenseMap& subspace_basis, const Vec& y,
                          double rel_tol) {
  if (subspace_basis.rows() != k_true.rows()) {
    throw Error(ErrorCode::DimensionMismatch,
                "oracle_dls: basis does not live in data space");
  }
  const DenseMap gram =
      matmul(subspace_basis.transposed(), subspace_basis);
  const DenseMap defect = sub(gram, DenseMap::identity(gram.rows()));
  if (hs_norm(defect) > 1e-8 * std::sqrt(static_cast<double>(gram.rows()))) {
    throw Error(ErrorCode::BadArgument,
                "oracle_dls: basis columns are not orthonormal");
  }
  // P = Q Q*, solve min |P K x - P y| with minimal |x|.
  const DenseMap projected_k =
      matmul(subspace_basis,
             matmul(subspace_basis.transposed(), k_true));
  const Vec projected_y =
      subspace_basis.apply(subspace_basis.apply_transposed(y));
  const ThinSVD svd = thin_svd(projected_k, rel_tol);
  if (svd.rank() == 0) {
    throw Error(ErrorCode::RankZero, "oracle_dls: projected operator is zero");
  }
  Vec coeffs = svd.left.apply_transposed(projected_y);
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    coeffs[k] /= svd.singulars[k];
  }
  Reconstruction rec;
  rec.method = Method::OracleDLS;
  rec.x_hat = svd.right.apply(coeffs);
  rec.residual_norm =
      norm(vec_sub(projected_k.apply(rec.x_hat), projected_y));
  rec.diagnostics = {
      {"projected_rank", static_cast<double>(svd.rank())},
  };
  return rec;
}

void save_reconstruction(const Reconstruction& rec,
                         const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  save_vector_csv(rec.x_hat, dir / "x_hat.csv");
  KvPairs info{
      {"method", method_token(rec.method)},
      {"alpha", format_double(rec.alpha)},
      {"residual_norm", format_double(rec.residual_norm)},
  };
  for (const auto& [key, value] : rec.diagnostics) {
    info.emplace_back(key, format_double(value));
  }
  save_kv(info, dir / "info");
}

Reconstruction load_reconstruction(const std::filesystem::path& dir) {
  Reconstruction rec;
  rec.x_hat = load_vector_csv(dir / "x_hat.csv");
  const KvPairs info = load_kv(dir / "info");
  const std::string& token = kv_get(info, "method");
  bool matched = false;
  for (Method m : {Method::MethodI, Method::MethodIII, Method::Map,
                   Method::OracleDLS}) {
    if (token == method_token(m)) {
      rec.method = m;
      matched = true;
    }
  }
  if (!matched) {
    throw Error(ErrorCode::IoError, "unknown method token: " + token);
  }
  rec.alpha = parse_double(kv_get(info, "alpha"));
  rec.residual_norm = parse_double(kv_get(info, "residual_norm"));
  for (const auto& [key, value] : info) {
    if (key == "method" || key == "alpha" || key == "residual_norm") continue;
    rec.diagnostics.emplace_back(key, parse_double(value));
  }
  return rec;
}

}  // namespace projreg
