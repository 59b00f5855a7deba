#include "projreg/operator_learning.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "projreg/errors.hpp"
#include "projreg/kv.hpp"
#include "projreg/tolerance.hpp"

namespace projreg {
namespace {

DenseMap scale_columns(const DenseMap& a, const Vec& w) {
  DenseMap out = a;
  for (std::size_t i = 0; i < out.rows(); ++i) {
    for (std::size_t j = 0; j < out.cols(); ++j) out(i, j) *= w[j];
  }
  return out;
}

Vec inverted(const Vec& v) {
  Vec out(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) out[k] = 1.0 / v[k];
  return out;
}

}  // namespace

LearnedOperator learn_uncentered(const TrainingSet& ts, double rel_tol,
                                 std::optional<std::size_t> truncation_rank) {
  ThinSVD svd = thin_svd(ts.image_map(), rel_tol);
  if (svd.rank() == 0) {
    throw Error(ErrorCode::RankZero, "learn_uncentered: all images are zero");
  }
  if (truncation_rank) svd = truncate(svd, *truncation_rank);

  LearnedOperator learned;
  learned.kind = OperatorKind::Uncentered;
  learned.truncation_rank = truncation_rank;
  // Z_n = Y_n Xi Lambda^-1, K_n = Z_n U_n*
  learned.zn = scale_columns(matmul(ts.data_map(), svd.right),
                             inverted(svd.singulars));
  learned.kn = matmul(learned.zn, svd.left.transposed());
  learned.svd_of_images = std::move(svd);
  return learned;
}

LearnedOperator learn_centered(const CenteredModel& model,
                               const TrainingSet& ts) {
  if (model.p_prime == 0) {
    throw Error(ErrorCode::RankZero,
                "learn_centered: centered image map has rank zero");
  }
  if (model.basis.rows() != ts.m() || model.xi.rows() != ts.n() ||
      model.y_mean.size() != ts.q()) {
    throw Error(ErrorCode::DimensionMismatch,
                "learn_centered: model does not match training set");
  }
  DenseMap centered_data(ts.q(), ts.n());
  for (std::size_t k = 0; k < ts.n(); ++k) {
    for (std::size_t i = 0; i < ts.q(); ++i) {
      centered_data(i, k) = ts.data[k][i] - model.y_mean[i];
    }
  }
  LearnedOperator learned;
  learned.kind = OperatorKind::Centered;
  // L_n = [y_1 - y°, ..., y_n - y°] Xi, Z_n = L_n Lambda^-1, K_n = Z_n U_n*
  learned.ln = matmul(centered_data, model.xi);
  learned.zn = scale_columns(learned.ln, inverted(model.lambdas));
  learned.kn = matmul(learned.zn, model.basis.transposed());
  learned.svd_of_images.left = model.basis;
  learned.svd_of_images.singulars = model.lambdas;
  learned.svd_of_images.right = model.xi;
  return learned;
}

HsBoundReport hs_deviation_bound_check(const TrainingSet& ts,
                                       const LearnedOperator& learned,
                                       const DenseMap& k_true) {
  const DenseMap deviation = sub(learned.kn, k_true);
  const DenseMap& u = learned.svd_of_images.left;
  const Vec& sigmas = learned.svd_of_images.singulars;
  const double rhs = 2.0 * std::sqrt(static_cast<double>(ts.n())) * ts.delta;

  HsBoundReport report;
  report.rhs = rhs;
  double acc = 0.0;
  report.per_vector_lhs.resize(sigmas.size());
  report.per_vector_rhs.resize(sigmas.size());
  report.per_vector_holds = true;
  for (std::size_t k = 0; k < sigmas.size(); ++k) {
    const double column_norm = norm(deviation.apply(u.column(k)));
    acc += column_norm * column_norm * sigmas[k] * sigmas[k];
    report.per_vector_lhs[k] = column_norm;
    report.per_vector_rhs[k] = rhs / sigmas[k];
    if (!approx_le(column_norm, report.per_vector_rhs[k])) {
      report.per_vector_holds = false;
    }
  }
  report.lhs = std::sqrt(acc);
  report.holds = approx_le(report.lhs, rhs);
  return report;
}

CollinearityReport collinearity_report(const TrainingSet& ts,
                                       double rel_tol) {
  const ThinSVD svd = thin_svd(ts.image_map(), rel_tol);
  if (svd.rank() == 0) {
    throw Error(ErrorCode::RankZero, "collinearity_report: zero image map");
  }
  CollinearityReport report;
  report.smallest_sigma = svd.singulars.back();
  report.condition_number = svd.singulars.front() / report.smallest_sigma;
  report.amplification = 2.0 * std::sqrt(static_cast<double>(ts.n())) *
                         ts.delta / report.smallest_sigma;
  return report;
}

void save_learned(const LearnedOperator& learned,
                  const std::filesystem::path& dir) {
  if (learned.rank() == 0) {
    throw Error(ErrorCode::RankZero, "save_learned: empty factors");
  }
  std::filesystem::create_directories(dir);
  save_csv(learned.kn, dir / "kn.csv");
  save_csv(learned.zn, dir / "zn.csv");
  save_csv(learned.svd_of_images.left, dir / "u.csv");
  save_vector_csv(learned.svd_of_images.singulars, dir / "sigma.csv");
  save_csv(learned.svd_of_images.right, dir / "xi.csv");
  KvPairs meta{
      {"kind",
       learned.kind == OperatorKind::Uncentered ? "uncentered" : "centered"},
      {"rank_tolerance_used",
       format_double(learned.svd_of_images.rank_tolerance_used)},
      {"truncation", learned.truncation_rank
                         ? std::to_string(*learned.truncation_rank)
                         : "none"},
  };
  save_kv(meta, dir / "meta");
  if (learned.kind == OperatorKind::Centered) {
    save_csv(learned.ln, dir / "ln.csv");
  }
}

LearnedOperator load_learned(const std::filesystem::path& dir) {
  LearnedOperator learned;
  const KvPairs meta = load_kv(dir / "meta");
  const std::string& kind = kv_get(meta, "kind");
  if (kind == "uncentered") {
    learned.kind = OperatorKind::Uncentered;
  } else if (kind == "centered") {
    learned.kind = OperatorKind::Centered;
  } else {
    throw Error(ErrorCode::IoError, "unknown operator kind: " + kind);
  }
  learned.kn = load_csv(dir / "kn.csv");
  learned.zn = load_csv(dir / "zn.csv");
  learned.svd_of_images.left = load_csv(dir / "u.csv");
  learned.svd_of_images.singulars = load_vector_csv(dir / "sigma.csv");
  learned.svd_of_images.right = load_csv(dir / "xi.csv");
  learned.svd_of_images.rank_tolerance_used =
      parse_double(kv_get(meta, "rank_tolerance_used"));
  const std::string& trunc = kv_get(meta, "truncation");
  if (trunc != "none") {
    learned.truncation_rank = static_cast<std::size_t>(parse_double(trunc));
  }
  if (learned.kind == OperatorKind::Centered) {
    learned.ln = load_csv(dir / "ln.csv");
  }
  return learned;
}

void save_centered_model(const CenteredModel& model,
                         const std::filesystem::path& dir) {
  if (model.p_prime == 0) {
    throw Error(ErrorCode::RankZero, "save_centered_model: empty factors");
  }
  std::filesystem::create_directories(dir);
  save_vector_csv(model.x_mean, dir / "x_mean.csv");
  save_vector_csv(model.y_mean, dir / "y_mean.csv");
  save_csv(model.basis, dir / "basis.csv");
  save_vector_csv(model.lambdas, dir / "lambdas.csv");
  save_csv(model.xi, dir / "xi.csv");
  save_kv({{"p_prime", std::to_string(model.p_prime)},
           {"n", std::to_string(model.n())}},
          dir / "meta");
}

CenteredModel load_centered_model(const std::filesystem::path& dir) {
  CenteredModel model;
  model.x_mean = load_vector_csv(dir / "x_mean.csv");
  model.y_mean = load_vector_csv(dir / "y_mean.csv");
  model.basis = load_csv(dir / "basis.csv");
  model.lambdas = load_vector_csv(dir / "lambdas.csv");
  model.xi = load_csv(dir / "xi.csv");
  const KvPairs meta = load_kv(dir / "meta");
  model.p_prime =
      static_cast<std::size_t>(parse_double(kv_get(meta, "p_prime")));
  const std::size_t n =
      static_cast<std::size_t>(parse_double(kv_get(meta, "n")));
  if (model.p_prime != model.lambdas.size() || model.xi.rows() != n ||
      model.xi.cols() != model.p_prime ||
      model.basis.cols() != model.p_prime) {
    throw Error(ErrorCode::IoError, "centered model meta/content mismatch");
  }
  return model;
}

}  // namespace projreg
