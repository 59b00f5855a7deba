#include "projreg/cli.hpp"

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "projreg/analysis.hpp"
#include "projreg/errors.hpp"
#include "projreg/experiment.hpp"
#include "projreg/kv.hpp"
#include "projreg/problems.hpp"
#include "projreg/rng.hpp"

namespace projreg {
namespace {

namespace fs = std::filesystem;

std::int64_t env_or(std::int64_t fallback) {
  const char* env = std::getenv("PROJREG_SEED");
  if (!env) return fallback;
  char* end = nullptr;
  const long long v = std::strtoll(env, &end, 10);
  if (end == env || *end != '\0') {
    throw Error(ErrorCode::BadArgument, "PROJREG_SEED is not an integer");
  }
  return v;
}

std::int64_t resolve_seed(const std::optional<std::int64_t>& flag,
                          std::int64_t config_seed) {
  if (flag) return *flag;
  return env_or(config_seed);
}

const char* flag_text(bool b) { return b ? "1" : "0"; }

struct GenerateArgs {
  std::string config_path;
  std::string out = "out";
  std::optional<std::size_t> n;
  std::optional<double> delta;
  std::optional<std::int64_t> seed;
  bool truth_in_span = false;
  bool quiet = false;
};

void cmd_generate(const GenerateArgs& args) {
  const ExperimentConfig config = load_config(args.config_path);
  const auto seed = static_cast<std::uint64_t>(
      resolve_seed(args.seed, config.base_seed));
  const std::size_t n = args.n.value_or(config.n_values.front());
  const double delta = args.delta.value_or(config.delta_values.front());
  if (n == 0) {
    throw Error(ErrorCode::BadArgument, "generate: need n >= 1");
  }

  SyntheticProblem problem =
      make_smoothing_problem(config.m, config.q, config.kernel_width, seed);
  const std::vector<Vec> images = sample_images(problem, n, seed);
  if (args.truth_in_span) {
    const ThinSVD svd =
        thin_svd(DenseMap::from_columns(images), config.rank_tol);
    problem.x_dagger =
        svd.left.apply(svd.left.apply_transposed(problem.x_dagger));
  }
  const TrainingSet ts =
      noise_inject(problem.k, images, delta, mix_seed(seed, 2));
  const Vec y = problem.k.apply(problem.x_dagger);

  const fs::path ws(args.out);
  fs::create_directories(ws);
  save_problem(problem, ws / "problem");
  save_training_set(ts, ws / "training");
  save_vector_csv(y, ws / "y.csv");
  if (!args.quiet) {
    std::cout << "generated m=" << config.m << " q=" << config.q
              << " n=" << n << " delta=" << format_double(delta)
              << " seed=" << seed << " -> " << ws.string() << '\n';
  }
}

struct LearnArgs {
  std::string out = "out";
  std::optional<double> tol;
  std::size_t trunc = 0;
  bool quiet = false;
};

void cmd_learn(const LearnArgs& args) {
  const fs::path ws(args.out);
  const TrainingSet ts = load_training_set(ws / "training");
  const double tol = args.tol.value_or(kDefaultRankTol);
  const std::optional<std::size_t> trunc =
      args.trunc == 0 ? std::nullopt
                      : std::optional<std::size_t>(args.trunc);

  const LearnedOperator uncentered = learn_uncentered(ts, tol, trunc);
  save_learned(uncentered, ws / "learned" / "uncentered");

  const CenteredModel model = sample_stats(ts, tol);
  if (model.p_prime > 0) {
    const LearnedOperator centered = learn_centered(model, ts);
    save_learned(centered, ws / "learned" / "centered");
    save_centered_model(model, ws / "model");
  } else if (!args.quiet) {
    std::cout << "centered rank is zero; only the uncentered operator was "
                 "written\n";
  }
  if (!args.quiet) {
    std::cout << "learned rank=" << uncentered.rank()
              << " p_prime=" << model.p_prime << " -> "
              << (ws / "learned").string() << '\n';
  }
}

struct SolveArgs {
  std::string out = "out";
  std::string method;
  double alpha = 1e-3;
  std::optional<double> tol;
  bool quiet = false;
};

void cmd_solve(const SolveArgs& args) {
  const fs::path ws(args.out);
  const Vec y = load_vector_csv(ws / "y.csv");

  Reconstruction rec;
  if (args.method == "i") {
    const LearnedOperator learned =
        load_learned(ws / "learned" / "uncentered");
    rec = method1(learned, y, args.tol.value_or(kDefaultRankTol));
  } else if (args.method == "iii") {
    const CenteredModel model = load_centered_model(ws / "model");
    const LearnedOperator learned = load_learned(ws / "learned" / "centered");
    rec = method3(model, learned, y, args.tol.value_or(kDefaultDataRankTol));
  } else if (args.method == "map") {
    const CenteredModel model = load_centered_model(ws / "model");
    const LearnedOperator learned = load_learned(ws / "learned" / "centered");
    rec = map_estimate(model, learned, y, args.alpha);
  } else {
    const SyntheticProblem problem = load_problem(ws / "problem");
    const TrainingSet ts = load_training_set(ws / "training");
    const ThinSVD data_svd =
        thin_svd(ts.data_map(), args.tol.value_or(kDefaultRankTol));
    if (data_svd.rank() == 0) {
      throw Error(ErrorCode::RankZero, "solve: data span is trivial");
    }
    rec = oracle_dls(problem.k, data_svd.left, y,
                     args.tol.value_or(kDefaultRankTol));
  }

  const fs::path dest = ws / ("recon_" + args.method);
  save_reconstruction(rec, dest);
  if (!args.quiet) {
    std::cout << "method=" << args.method
              << " residual=" << format_double(rec.residual_norm);
    const fs::path truth_path = ws / "problem" / "xdagger.csv";
    if (fs::exists(truth_path)) {
      const Vec x_truth = load_vector_csv(truth_path);
      if (x_truth.size() == rec.x_hat.size()) {
        std::cout << " err_x="
                  << format_double(norm(vec_sub(rec.x_hat, x_truth)));
      }
    }
    std::cout << " -> " << dest.string() << '\n';
  }
}

struct DiagnoseArgs {
  std::string out = "out";
  std::optional<double> tol;
  bool quiet = false;
};

void cmd_diagnose(const DiagnoseArgs& args) {
  const fs::path ws(args.out);
  const TrainingSet ts = load_training_set(ws / "training");
  const double tol = args.tol.value_or(kDefaultRankTol);

  KvPairs report;
  const RankBoundsReport rb = rank_bounds_check(ts, tol);
  report.emplace_back("p", std::to_string(rb.p));
  report.emplace_back("p_prime", std::to_string(rb.p_prime));
  report.emplace_back("rank_bounds_holds", flag_text(rb.holds));

  const CollinearityReport col = collinearity_report(ts, tol);
  report.emplace_back("sigma_min", format_double(col.smallest_sigma));
  report.emplace_back("condition_number",
                      format_double(col.condition_number));
  report.emplace_back("amplification", format_double(col.amplification));

  const CenteredModel model = sample_stats(ts, tol);
  std::optional<LearnedOperator> centered;
  if (model.p_prime > 0) {
    centered = learn_centered(model, ts);
    const PinvIdentityReport idr = pinv_identity_check(model, *centered);
    report.emplace_back("identity_projector_onto_range",
                        flag_text(idr.projector_onto_range));
    report.emplace_back("identity_a_recovery", flag_text(idr.a_recovery));
    report.emplace_back("identity_kn_recovery", flag_text(idr.kn_recovery));
    report.emplace_back("injective", flag_text(idr.injective));
    if (idr.injective) {
      report.emplace_back("identity_projector_onto_span",
                          flag_text(idr.projector_onto_span));
      report.emplace_back("identity_matches_pinv",
                          flag_text(idr.matches_pinv));
    }
  }

  if (fs::exists(ws / "problem")) {
    const SyntheticProblem problem = load_problem(ws / "problem");
    const LearnedOperator uncentered = learn_uncentered(ts, tol);
    const HsBoundReport hs =
        hs_deviation_bound_check(ts, uncentered, problem.k);
    report.emplace_back("hs_lhs", format_double(hs.lhs));
    report.emplace_back("hs_rhs", format_double(hs.rhs));
    report.emplace_back("hs_holds", flag_text(hs.holds));
    report.emplace_back("hs_per_vector_holds",
                        flag_text(hs.per_vector_holds));
    if (centered && centered_injective(model, *centered)) {
      const ErrorDecomposition dec =
          error_bound_check(problem.k, problem.x_dagger, model, *centered);
      report.emplace_back("mu_n", format_double(dec.mu_n));
      report.emplace_back("decomposition_defect",
                          format_double(dec.equality_defect));
      report.emplace_back("decomposition_holds",
                          flag_text(dec.decomposition_holds));
      report.emplace_back("dn_norm", format_double(norm(dec.d_n)));
      report.emplace_back("bound_rhs", format_double(dec.bound_rhs));
      report.emplace_back("bound_holds", flag_text(dec.bound_holds));
    }
  }

  save_kv(report, ws / "diagnostics");
  if (!args.quiet) {
    for (const auto& [key, value] : report) {
      std::cout << key << '=' << value << '\n';
    }
  }
}

struct ExperimentArgs {
  std::string config_path;
  std::optional<std::string> out;
  std::optional<std::int64_t> seed;
  bool quiet = false;
};

void cmd_experiment(const ExperimentArgs& args) {
  ExperimentConfig config = load_config(args.config_path);
  config.base_seed = resolve_seed(args.seed, config.base_seed);
  if (args.out) config.output_dir = *args.out;

  const std::vector<ExperimentRow> rows = run_experiment(config, args.quiet);
  const fs::path dir(config.output_dir);
  fs::create_directories(dir);
  write_results_csv(rows, dir / "results.csv");
  if (!args.quiet) {
    std::cout << "wrote " << (dir / "results.csv").string() << " ("
              << rows.size() << " rows)\n";
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"learns a finite-rank surrogate of a forward operator from "
               "training pairs and solves linear inverse problems by "
               "projection"};
  app.require_subcommand(1);

  GenerateArgs gen;
  CLI::App* generate =
      app.add_subcommand("generate", "make a synthetic problem + training set");
  generate->add_option("--config", gen.config_path, "experiment config file")
      ->required();
  generate->add_option("--out", gen.out, "workspace directory");
  generate->add_option("--n", gen.n, "number of training pairs");
  generate->add_option("--delta", gen.delta, "training noise bound");
  generate->add_option("--seed", gen.seed, "seed override");
  generate->add_flag("--truth-in-span", gen.truth_in_span,
                     "project the ground truth onto the sampled image span");
  generate->add_flag("--quiet", gen.quiet, "suppress progress output");

  LearnArgs learn;
  CLI::App* learn_cmd =
      app.add_subcommand("learn", "fit the surrogate operators");
  learn_cmd->add_option("--out", learn.out, "workspace directory");
  learn_cmd->add_option("--tol", learn.tol, "relative rank tolerance");
  learn_cmd->add_option("--trunc", learn.trunc,
                        "keep only this many singular triplets (0 = all)");
  learn_cmd->add_flag("--quiet", learn.quiet, "suppress progress output");

  SolveArgs solve;
  CLI::App* solve_cmd = app.add_subcommand("solve", "reconstruct from y.csv");
  solve_cmd->add_option("--out", solve.out, "workspace directory");
  solve_cmd->add_option("--method", solve.method, "reconstruction method")
      ->required()
      ->check(CLI::IsMember({"i", "iii", "map", "oracle-dls"}));
  solve_cmd->add_option("--alpha", solve.alpha, "regularization weight");
  solve_cmd->add_option("--tol", solve.tol, "relative rank tolerance");
  solve_cmd->add_flag("--quiet", solve.quiet, "suppress progress output");

  DiagnoseArgs diag;
  CLI::App* diag_cmd =
      app.add_subcommand("diagnose", "rank bounds, identities, error bounds");
  diag_cmd->add_option("--out", diag.out, "workspace directory");
  diag_cmd->add_option("--tol", diag.tol, "relative rank tolerance");
  diag_cmd->add_flag("--quiet", diag.quiet, "suppress report echo");

  ExperimentArgs exp;
  CLI::App* exp_cmd =
      app.add_subcommand("experiment", "sweep (n, delta, alpha) to CSV");
  exp_cmd->add_option("--config", exp.config_path, "experiment config file")
      ->required();
  exp_cmd->add_option("--out", exp.out, "output directory override");
  exp_cmd->add_option("--seed", exp.seed, "base seed override");
  exp_cmd->add_flag("--quiet", exp.quiet, "suppress progress output");

  try {
    app.parse(argc, argv);
    if (generate->parsed()) cmd_generate(gen);
    if (learn_cmd->parsed()) cmd_learn(learn);
    if (solve_cmd->parsed()) cmd_solve(solve);
    if (diag_cmd->parsed()) cmd_diagnose(diag);
    if (exp_cmd->parsed()) cmd_experiment(exp);
    return 0;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error code=bad_argument msg=\"" << e.what() << "\"\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error code=" << to_string(e.code()) << " msg=\""
              << e.what() << "\"\n";
    return e.is_numerical() ? 3 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error code=internal msg=\"" << e.what() << "\"\n";
    return 2;
  }
}

}  // namespace projreg
