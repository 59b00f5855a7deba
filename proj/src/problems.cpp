#include "projreg/problems.hpp"

#include <cmath>
#include <numbers>

#include "projreg/errors.hpp"
#include "projreg/kv.hpp"
#include "projreg/linalg.hpp"
#include "projreg/rng.hpp"

namespace projreg {
namespace {

constexpr double kMaternLength = 0.2;

double cell_center(std::size_t i, std::size_t count) {
  return (static_cast<double>(i) + 0.5) / static_cast<double>(count);
}

// Smooth bump plus a kink, fixed so acceptance numbers do not move with
// the seed.
double truth_profile(double t) {
  const double smooth = std::sin(2.0 * std::numbers::pi * t);
  const double kink = std::max(0.0, 1.0 - 8.0 * std::abs(t - 0.35));
  return smooth + kink;
}

DenseMap matern_sqrt(std::size_t m) {
  DenseMap corr(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double d =
          std::abs(cell_center(i, m) - cell_center(j, m)) / kMaternLength;
      corr(i, j) = (1.0 + d) * std::exp(-d);
    }
  }
  const ThinSVD svd = thin_svd(corr);
  DenseMap factor = svd.left;
  for (std::size_t j = 0; j < factor.cols(); ++j) {
    const double root = std::sqrt(svd.singulars[j]);
    for (std::size_t i = 0; i < factor.rows(); ++i) factor(i, j) *= root;
  }
  return factor;
}

}  // namespace

SyntheticProblem make_smoothing_problem(std::size_t m, std::size_t q,
                                        double kernel_width,
                                        std::uint64_t seed) {
  if (m < 2 || q < 2) {
    throw Error(ErrorCode::BadDimensions,
                "make_smoothing_problem: need m, q >= 2");
  }
  if (!(kernel_width > 0.0)) {
    throw Error(ErrorCode::BadArgument,
                "make_smoothing_problem: width must be positive");
  }
  SyntheticProblem problem;
  problem.kernel_width = kernel_width;
  problem.k = DenseMap(q, m);
  const double inv_m = 1.0 / static_cast<double>(m);
  const double denom = 2.0 * kernel_width * kernel_width;
  for (std::size_t i = 0; i < q; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double d = cell_center(i, q) - cell_center(j, m);
      problem.k(i, j) = std::exp(-d * d / denom) * inv_m;
    }
  }
  problem.x_dagger.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    problem.x_dagger[j] = truth_profile(cell_center(j, m));
  }
  problem.prior_factor = matern_sqrt(m);
  Rng mean_rng(mix_seed(seed, 1));
  problem.prior_mean =
      problem.prior_factor.apply(mean_rng.normal_vec(problem.prior_factor.cols()));
  return problem;
}

std::vector<Vec> sample_images(const SyntheticProblem& problem,
                               std::size_t n, std::uint64_t seed) {
  if (n == 0) {
    throw Error(ErrorCode::BadArgument, "sample_images: need n >= 1");
  }
  std::vector<Vec> images;
  images.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    Rng rng(seed + k);
    const Vec g = rng.normal_vec(problem.prior_factor.cols());
    images.push_back(
        vec_add(problem.prior_mean, problem.prior_factor.apply(g)));
  }
  return images;
}

std::vector<Vec> make_collinear_images(std::size_t m, std::size_t n,
                                       double epsilon) {
  if (n < 2 || m < n) {
    throw Error(ErrorCode::BadDimensions,
                "make_collinear_images: need 2 <= n <= m");
  }
  if (!(epsilon > 0.0) || epsilon > 1.0) {
    throw Error(ErrorCode::BadArgument,
                "make_collinear_images: epsilon must be in (0, 1]");
  }
  std::vector<Vec> images(n, Vec(m, 0.0));
  for (std::size_t k = 0; k < n; ++k) {
    images[k][0] = 1.0;
    if (k > 0) images[k][k] = epsilon;
  }
  return images;
}

std::vector<Vec> aligned_triplet() {
  return {{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {-4.0, 5.0, 0.0}};
}

std::vector<Vec> planar_triplet() {
  return {{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {2.0, 2.0, 0.0}};
}

void save_problem(const SyntheticProblem& problem,
                  const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  save_csv(problem.k, dir / "K.csv");
  save_vector_csv(problem.x_dagger, dir / "xdagger.csv");
  save_csv(problem.prior_factor, dir / "prior_factor.csv");
  save_vector_csv(problem.prior_mean, dir / "prior_mean.csv");
  save_kv({{"m", std::to_string(problem.m())},
           {"q", std::to_string(problem.q())},
           {"kernel_width", format_double(problem.kernel_width)}},
          dir / "meta");
}

SyntheticProblem load_problem(const std::filesystem::path& dir) {
  SyntheticProblem problem;
  problem.k = load_csv(dir / "K.csv");
  problem.x_dagger = load_vector_csv(dir / "xdagger.csv");
  problem.prior_factor = load_csv(dir / "prior_factor.csv");
  problem.prior_mean = load_vector_csv(dir / "prior_mean.csv");
  const KvPairs meta = load_kv(dir / "meta");
  problem.kernel_width = parse_double(kv_get(meta, "kernel_width"));
  if (problem.m() != static_cast<std::size_t>(parse_double(kv_get(meta, "m"))) ||
      problem.q() != static_cast<std::size_t>(parse_double(kv_get(meta, "q")))) {
    throw Error(ErrorCode::IoError, "problem meta/content mismatch");
  }
  return problem;
}

}  // namespace projreg
