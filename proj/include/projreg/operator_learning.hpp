#pragma once

#include <filesystem>
#include <optional>

#include "projreg/linalg.hpp"
#include "projreg/training.hpp"

namespace projreg {

enum class OperatorKind { Uncentered, Centered };

/// Learned finite-rank surrogate of the forward operator. The uncentered
/// construction factors through the SVD of the raw image map; the centered
/// one goes through the sample statistics and keeps the product ln, whose
/// columns avoid inverting small singular values.
struct LearnedOperator {
  OperatorKind kind = OperatorKind::Uncentered;
  DenseMap kn;          // q x m
  DenseMap ln;          // q x p', Centered kind only
  DenseMap zn;          // q x rank
  ThinSVD svd_of_images;
  std::optional<std::size_t> truncation_rank;

  std::size_t rank() const noexcept { return svd_of_images.rank(); }
};

struct HsBoundReport {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
  Vec per_vector_lhs;
  Vec per_vector_rhs;
  bool per_vector_holds = false;
};

struct CollinearityReport {
  double condition_number = 0.0;
  double smallest_sigma = 0.0;
  double amplification = 0.0;
};

LearnedOperator learn_uncentered(
    const TrainingSet& ts, double rel_tol = kDefaultRankTol,
    std::optional<std::size_t> truncation_rank = std::nullopt);

LearnedOperator learn_centered(const CenteredModel& model,
                               const TrainingSet& ts);

/// Verifies |(K_n - K) U_n Lambda|_HS <= 2 sqrt(n) delta, plus the
/// per-singular-pair form |(K_n - K) u_k| <= 2 sqrt(n) delta / sigma_k.
HsBoundReport hs_deviation_bound_check(const TrainingSet& ts,
                                       const LearnedOperator& learned,
                                       const DenseMap& k_true);

CollinearityReport collinearity_report(const TrainingSet& ts,
                                       double rel_tol = kDefaultRankTol);

void save_learned(const LearnedOperator& learned,
                  const std::filesystem::path& dir);
LearnedOperator load_learned(const std::filesystem::path& dir);

void save_centered_model(const CenteredModel& model,
                         const std::filesystem::path& dir);
CenteredModel load_centered_model(const std::filesystem::path& dir);

}  // namespace projreg
