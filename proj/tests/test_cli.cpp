#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "oracles.hpp"
#include "projreg/dense_map.hpp"
#include "projreg/problems.hpp"
#include "projreg/training.hpp"
#include "test_util.hpp"

using namespace projreg;
using namespace projreg::test;

namespace {

struct CliResult {
  int status = -1;
  std::string out;
  std::string err;
};

CliResult run_cli(const std::string& args, const std::string& env = "") {
  const auto dir = std::filesystem::temp_directory_path() / "projreg_tests";
  std::filesystem::create_directories(dir);
  const auto out_path = dir / "cli_stdout.txt";
  const auto err_path = dir / "cli_stderr.txt";
  const std::string cmd = env + (env.empty() ? "" : " ") + PROJREG_BIN + " " +
                          args + " >" + out_path.string() + " 2>" +
                          err_path.string();
  const int raw = std::system(cmd.c_str());
  CliResult result;
  result.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  result.out = read_file(out_path);
  result.err = read_file(err_path);
  return result;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

const char* kPipelineConfig =
    "[problem]\n"
    "m = 12\n"
    "q = 12\n"
    "kernel_width = 0.12\n"
    "[sweep]\n"
    "n = 6\n"
    "delta = 0\n"
    "[run]\n"
    "trials = 1\n"
    "base_seed = 0\n"
    "output_dir = out\n";

}  // namespace

TEST_CASE("the exact-data pipeline reconstructs the projected truth") {
  const auto dir = scratch_dir("cli_pipeline");
  const auto cfg = dir / "pipeline.cfg";
  write_text(cfg, kPipelineConfig);
  const std::string ws = (dir / "ws").string();

  CliResult gen = run_cli("generate --config " + cfg.string() + " --out " +
                          ws + " --n 6 --delta 0 --seed 5 --truth-in-span");
  CHECK(gen.status == 0);
  CHECK(gen.out.find("generated") != std::string::npos);
  CHECK(std::filesystem::exists(dir / "ws" / "problem" / "K.csv"));
  CHECK(std::filesystem::exists(dir / "ws" / "training" / "images.csv"));
  CHECK(std::filesystem::exists(dir / "ws" / "y.csv"));

  CHECK(run_cli("learn --out " + ws + " --quiet").status == 0);
  CHECK(std::filesystem::exists(dir / "ws" / "learned" / "uncentered" /
                                "kn.csv"));
  CHECK(std::filesystem::exists(dir / "ws" / "model"));

  for (const std::string method : {"i", "iii", "map", "oracle-dls"}) {
    CliResult solve = run_cli("solve --out " + ws + " --method " + method +
                              " --alpha 1e-8");
    CHECK(solve.status == 0);
    CHECK(solve.out.find("err_x=") != std::string::npos);
  }

  const Vec x_truth = load_vector_csv(dir / "ws" / "problem" / "xdagger.csv");
  const Vec x_i = load_vector_csv(dir / "ws" / "recon_i" / "x_hat.csv");
  CHECK(norm(vec_sub(x_i, x_truth)) <= 1e-7 * (1.0 + norm(x_truth)));

  CliResult diag = run_cli("diagnose --out " + ws);
  CHECK(diag.status == 0);
  CHECK(diag.out.find("rank_bounds_holds=1") != std::string::npos);
  CHECK(diag.out.find("hs_holds=1") != std::string::npos);
  CHECK(std::filesystem::exists(dir / "ws" / "diagnostics"));
}

TEST_CASE("reruns of the pipeline are byte-identical") {
  const auto dir = scratch_dir("cli_determinism");
  const auto cfg = dir / "pipeline.cfg";
  write_text(cfg, kPipelineConfig);

  for (const std::string ws : {"a", "b"}) {
    const std::string path = (dir / ws).string();
    REQUIRE(run_cli("generate --config " + cfg.string() + " --out " + path +
                    " --n 5 --delta 1e-3 --seed 11 --quiet")
                .status == 0);
    REQUIRE(run_cli("learn --out " + path + " --quiet").status == 0);
    REQUIRE(run_cli("solve --out " + path + " --method iii --quiet").status ==
            0);
  }
  CHECK(read_file(dir / "a" / "y.csv") == read_file(dir / "b" / "y.csv"));
  CHECK(read_file(dir / "a" / "training" / "data.csv") ==
        read_file(dir / "b" / "training" / "data.csv"));
  CHECK(read_file(dir / "a" / "learned" / "uncentered" / "kn.csv") ==
        read_file(dir / "b" / "learned" / "uncentered" / "kn.csv"));
  CHECK(read_file(dir / "a" / "recon_iii" / "x_hat.csv") ==
        read_file(dir / "b" / "recon_iii" / "x_hat.csv"));

  // The environment seed is an alias for the flag.
  const std::string env_ws = (dir / "env").string();
  REQUIRE(run_cli("generate --config " + cfg.string() + " --out " + env_ws +
                      " --n 5 --delta 1e-3 --quiet",
                  "PROJREG_SEED=11")
              .status == 0);
  CHECK(read_file(dir / "env" / "y.csv") == read_file(dir / "a" / "y.csv"));
}

TEST_CASE("the sweep harness emits a stable CSV") {
  const auto dir = scratch_dir("cli_experiment");
  const auto cfg = dir / "sweep.cfg";
  write_text(cfg,
             "[problem]\n"
             "m = 10\n"
             "q = 10\n"
             "kernel_width = 0.15\n"
             "[sweep]\n"
             "n = 4, 6\n"
             "delta = 0, 1e-3\n"
             "alpha = 1e-3\n"
             "[run]\n"
             "trials = 2\n"
             "base_seed = 7\n");

  const std::string out_a = (dir / "run_a").string();
  const std::string out_b = (dir / "run_b").string();
  REQUIRE(run_cli("experiment --config " + cfg.string() + " --out " + out_a +
                  " --quiet")
              .status == 0);
  REQUIRE(run_cli("experiment --config " + cfg.string() + " --out " + out_b +
                  " --quiet")
              .status == 0);

  const std::string csv = read_file(dir / "run_a" / "results.csv");
  CHECK(csv == read_file(dir / "run_b" / "results.csv"));

  std::istringstream lines(csv);
  std::string line;
  REQUIRE(std::getline(lines, line));
  CHECK(line ==
        "trial,n,delta,alpha,method,err_x,residual,mu_n,sigma_min,bound_lhs,"
        "bound_rhs,holds");
  std::size_t rows = 0;
  std::size_t holds_rows = 0;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    ++rows;
    if (line.back() == '1') ++holds_rows;
  }
  CHECK(rows == 32);  // 2 trials x 2 n x 2 delta x 4 methods
  CHECK(holds_rows == rows);
}

TEST_CASE("diagnose reports the canned degenerate sample") {
  const auto dir = scratch_dir("cli_diagnose");
  const auto images = aligned_triplet();
  save_training_set(assemble(images, images, 0.0), dir / "ws" / "training");
  const CliResult diag = run_cli("diagnose --out " + (dir / "ws").string());
  CHECK(diag.status == 0);
  CHECK(diag.out.find("p=2\n") != std::string::npos);
  CHECK(diag.out.find("p_prime=1\n") != std::string::npos);
  CHECK(diag.out.find("rank_bounds_holds=1\n") != std::string::npos);
}

TEST_CASE("failures surface as machine-readable exit codes") {
  const auto dir = scratch_dir("cli_errors");

  const CliResult missing =
      run_cli("solve --out " + (dir / "nowhere").string() + " --method i");
  CHECK(missing.status == 2);
  CHECK(missing.err.find("error code=io_error") != std::string::npos);

  const auto bad_cfg = dir / "bad.cfg";
  write_text(bad_cfg, "[problem]\nbogus = 1\n");
  const CliResult bad = run_cli("generate --config " + bad_cfg.string() +
                                " --out " + (dir / "ws").string());
  CHECK(bad.status == 2);
  CHECK(bad.err.find("error code=bad_argument") != std::string::npos);

  const std::vector<Vec> zeros(2, Vec(3, 0.0));
  save_training_set(assemble(zeros, zeros, 0.0), dir / "zero" / "training");
  const CliResult rank =
      run_cli("learn --out " + (dir / "zero").string() + " --quiet");
  CHECK(rank.status == 3);
  CHECK(rank.err.find("error code=rank_zero") != std::string::npos);

  const CliResult unknown =
      run_cli("solve --out " + (dir / "ws").string() + " --method bogus");
  CHECK(unknown.status == 2);

  const CliResult quiet = run_cli(
      "diagnose --out " + (dir / "zero").string() + " --quiet");
  CHECK(quiet.status == 3);
}
