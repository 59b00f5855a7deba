#include "projreg/experiment.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <tuple>

#include "projreg/analysis.hpp"
#include "projreg/errors.hpp"
#include "projreg/problems.hpp"
#include "projreg/rng.hpp"

namespace projreg {

std::string to_csv_line(const ExperimentRow& row) {
  std::string line;
  line += std::to_string(row.trial);
  line += ',';
  line += std::to_string(row.n);
  line += ',';
  line += format_double(row.delta);
  line += ',';
  line += format_double(row.alpha);
  line += ',';
  line += row.method;
  line += ',';
  line += format_double(row.err_x);
  line += ',';
  line += format_double(row.residual);
  line += ',';
  line += format_double(row.mu_n);
  line += ',';
  line += format_double(row.sigma_min);
  line += ',';
  line += format_double(row.bound_lhs);
  line += ',';
  line += format_double(row.bound_rhs);
  line += ',';
  line += row.holds ? '1' : '0';
  return line;
}

void write_results_csv(std::vector<ExperimentRow> rows,
                       const std::filesystem::path& path) {
  std::stable_sort(rows.begin(), rows.end(),
                   [](const ExperimentRow& a, const ExperimentRow& b) {
                     return std::tie(a.trial, a.n, a.delta, a.alpha,
                                     a.truncation, a.method) <
                            std::tie(b.trial, b.n, b.delta, b.alpha,
                                     b.truncation, b.method);
                   });
  std::ofstream out(path);
  if (!out) {
    throw Error(ErrorCode::IoError, "cannot open " + path.string());
  }
  out << kCsvHeader << '\n';
  for (const ExperimentRow& row : rows) out << to_csv_line(row) << '\n';
  if (!out) {
    throw Error(ErrorCode::IoError, "write failed: " + path.string());
  }
}

namespace {

ExperimentRow base_row(std::size_t trial, std::size_t n, double delta,
                       double alpha, std::size_t trunc, const char* method) {
  ExperimentRow row;
  row.trial = trial;
  row.n = n;
  row.delta = delta;
  row.alpha = alpha;
  row.truncation = trunc;
  row.method = method;
  return row;
}

}  // namespace

std::vector<ExperimentRow> run_experiment(const ExperimentConfig& config,
                                          bool quiet) {
  std::vector<ExperimentRow> rows;
  const std::size_t n_max =
      *std::max_element(config.n_values.begin(), config.n_values.end());

  for (std::size_t trial = 0; trial < config.trials; ++trial) {
    const auto seed =
        static_cast<std::uint64_t>(config.base_seed) + trial;
    const SyntheticProblem problem = make_smoothing_problem(
        config.m, config.q, config.kernel_width, seed);
    const std::vector<Vec> all_images = sample_images(problem, n_max, seed);
    const Vec y = problem.k.apply(problem.x_dagger);
    const Vec& x_truth = problem.x_dagger;

    for (std::size_t n : config.n_values) {
      if (n == 0 || n > n_max) {
        throw Error(ErrorCode::BadArgument, "experiment: bad n in sweep");
      }
      const std::vector<Vec> images(all_images.begin(),
                                    all_images.begin() + n);
      for (double delta : config.delta_values) {
        if (!quiet) {
          std::cerr << "trial " << trial << " n " << n << " delta " << delta
                    << '\n';
        }
        const TrainingSet ts =
            noise_inject(problem.k, images, delta, mix_seed(seed, 2));
        const CollinearityReport col =
            collinearity_report(ts, config.rank_tol);
        const CenteredModel model = sample_stats(ts, config.rank_tol);
        std::optional<LearnedOperator> centered;
        if (model.p_prime > 0) centered = learn_centered(model, ts);

        const ThinSVD data_svd = thin_svd(ts.data_map(), config.rank_tol);

        for (std::size_t trunc : config.truncation_values) {
          const LearnedOperator uncentered = learn_uncentered(
              ts, config.rank_tol,
              trunc == 0 ? std::nullopt
                         : std::optional<std::size_t>(trunc));
          const HsBoundReport hs =
              hs_deviation_bound_check(ts, uncentered, problem.k);
          const double mu_uncentered =
              smallest_singular(uncentered.kn, config.rank_tol);

          for (double alpha : config.alpha_values) {
            {
              ExperimentRow row =
                  base_row(trial, n, delta, alpha, trunc, "i");
              const Reconstruction rec =
                  method1(uncentered, y, config.rank_tol);
              row.err_x = norm(vec_sub(rec.x_hat, x_truth));
              row.residual = rec.residual_norm;
              row.mu_n = mu_uncentered;
              row.sigma_min = col.smallest_sigma;
              row.bound_lhs = hs.lhs;
              row.bound_rhs = hs.rhs;
              row.holds = hs.holds;
              rows.push_back(std::move(row));
            }
            if (centered) {
              ExperimentRow row =
                  base_row(trial, n, delta, alpha, trunc, "iii");
              const Reconstruction rec =
                  method3(model, *centered, y, config.data_tol);
              row.err_x = norm(vec_sub(rec.x_hat, x_truth));
              row.residual = rec.residual_norm;
              row.mu_n = smallest_singular(centered->kn, config.rank_tol);
              row.sigma_min = col.smallest_sigma;
              row.bound_lhs = hs.lhs;
              row.bound_rhs = hs.rhs;
              row.holds = hs.holds;
              rows.push_back(std::move(row));
            }
            if (centered) {
              ExperimentRow row =
                  base_row(trial, n, delta, alpha, trunc, "map");
              const Reconstruction rec =
                  map_estimate(model, *centered, y, alpha);
              row.err_x = norm(vec_sub(rec.x_hat, x_truth));
              row.residual = rec.residual_norm;
              row.mu_n = smallest_singular(centered->kn, config.rank_tol);
              row.sigma_min = col.smallest_sigma;
              row.bound_lhs = hs.lhs;
              row.bound_rhs = hs.rhs;
              row.holds = hs.holds;
              rows.push_back(std::move(row));
            }
            if (data_svd.rank() > 0) {
              ExperimentRow row =
                  base_row(trial, n, delta, alpha, trunc, "oracle-dls");
              const Reconstruction rec = oracle_dls(
                  problem.k, data_svd.left, y, config.rank_tol);
              row.err_x = norm(vec_sub(rec.x_hat, x_truth));
              row.residual = rec.residual_norm;
              const DenseMap projected = matmul(
                  data_svd.left,
                  matmul(data_svd.left.transposed(), problem.k));
              row.mu_n = smallest_singular(projected, config.rank_tol);
              row.sigma_min = col.smallest_sigma;
              row.bound_lhs = hs.lhs;
              row.bound_rhs = hs.rhs;
              row.holds = hs.holds;
              rows.push_back(std::move(row));
            }
          }
        }
      }
    }
  }
  return rows;
}

}  // namespace projreg
