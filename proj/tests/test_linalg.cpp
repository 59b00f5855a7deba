#include <cmath>
#include <limits>

#include "doctest.h"
#include "oracles.hpp"
#include "projreg/linalg.hpp"
#include "test_util.hpp"

using namespace projreg;
using namespace projreg::test;

namespace {

double orthonormality_defect(const DenseMap& q) {
  const DenseMap gram = matmul(q.transposed(), q);
  return hs_norm(sub(gram, DenseMap::identity(q.cols())));
}

}  // namespace

TEST_CASE("thin_svd of the identity keeps all unit singular values") {
  const ThinSVD svd = thin_svd(DenseMap::identity(3));
  REQUIRE(svd.rank() == 3);
  for (double s : svd.singulars) CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(hs_norm(sub(svd.reconstruct(), DenseMap::identity(3))) <= 1e-12);
}

TEST_CASE("thin_svd reconstructs seeded tall and wide maps") {
  for (auto [rows, cols] : {std::pair<std::size_t, std::size_t>{7, 5}, {5, 9}}) {
    const DenseMap a = random_map(rows, cols, 11 + rows);
    const ThinSVD svd = thin_svd(a);
    CHECK(svd.rank() == std::min(rows, cols));
    CHECK(hs_norm(sub(svd.reconstruct(), a)) <= 1e-9 * hs_norm(a));
    CHECK(orthonormality_defect(svd.left) <= 1e-10);
    CHECK(orthonormality_defect(svd.right) <= 1e-10);
    CHECK(std::is_sorted(svd.singulars.rbegin(), svd.singulars.rend()));
  }
}

TEST_CASE("singular values agree with the Gram eigen-oracle") {
  const DenseMap a = random_map(6, 4, 31);
  const ThinSVD svd = thin_svd(a);
  const Vec oracle = singulars_via_eigen(a);
  REQUIRE(svd.singulars.size() == oracle.size());
  for (std::size_t k = 0; k < oracle.size(); ++k)
    CHECK(svd.singulars[k] == doctest::Approx(oracle[k]).epsilon(1e-9));
}

TEST_CASE("hs_norm squared equals the sum of squared singular values") {
  const DenseMap a = random_map(5, 8, 77);
  const ThinSVD svd = thin_svd(a);
  double sum = 0.0;
  for (double s : svd.singulars) sum += s * s;
  CHECK(hs_norm(a) * hs_norm(a) == doctest::Approx(sum).epsilon(1e-10));
}

TEST_CASE("rank tolerance drops relatively tiny singular values") {
  const ThinSVD base = thin_svd(random_map(6, 2, 5));
  const DenseMap b = svd_compose(base.left, {1.0, 1e-14}, base.right);
  CHECK(thin_svd(b).rank() == 1);
  CHECK(thin_svd(b, 0.0).rank() == 2);
  CHECK(thin_svd(b, 1e-12).rank() == 1);
}

TEST_CASE("thin_svd is deterministic across repeated runs") {
  const DenseMap a = random_map(6, 6, 99);
  const ThinSVD s1 = thin_svd(a);
  const ThinSVD s2 = thin_svd(a);
  CHECK(s1.singulars == s2.singulars);
  CHECK(s1.left.entries() == s2.left.entries());
  CHECK(s1.right.entries() == s2.right.entries());
}

TEST_CASE("thin_svd rejects non-finite input") {
  DenseMap a(2, 2);
  a(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK(throws_code([&] { thin_svd(a); }, ErrorCode::NonFinite));
  CHECK(throws_code([&] { thin_svd(DenseMap::identity(2), -1.0); },
                    ErrorCode::BadArgument));
}

TEST_CASE("truncate keeps the leading triplets and validates the rank") {
  const DenseMap a = random_map(7, 5, 13);
  const ThinSVD svd = thin_svd(a);
  const ThinSVD cut = truncate(svd, 2);
  REQUIRE(cut.rank() == 2);
  CHECK(cut.singulars[0] == svd.singulars[0]);
  CHECK(cut.singulars[1] == svd.singulars[1]);

  // Eckart-Young: the truncation error is the tail of the spectrum.
  double tail = 0.0;
  for (std::size_t k = 2; k < svd.rank(); ++k)
    tail += svd.singulars[k] * svd.singulars[k];
  const double err = hs_norm(sub(a, cut.reconstruct()));
  CHECK(err * err == doctest::Approx(tail).epsilon(1e-9));

  CHECK(throws_code([&] { truncate(svd, 0); }, ErrorCode::RankZero));
  CHECK(throws_code([&] { truncate(svd, 6); }, ErrorCode::TruncationTooLarge));
}

TEST_CASE("pinv of a diagonal map inverts retained entries only") {
  const DenseMap ap = pinv(DenseMap::diagonal({3.0, 1e-30, 0.0}));
  CHECK(ap(0, 0) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(ap(1, 1) == 0.0);
  CHECK(ap(2, 2) == 0.0);
}

TEST_CASE("pinv satisfies the four Penrose identities") {
  const DenseMap a = random_map(6, 4, 17);
  const DenseMap ap = pinv(a);
  const DenseMap aap = matmul(a, ap);
  const DenseMap apa = matmul(ap, a);
  CHECK(hs_norm(sub(matmul(aap, a), a)) <= 1e-9 * (1.0 + hs_norm(a)));
  CHECK(hs_norm(sub(matmul(apa, ap), ap)) <= 1e-9 * (1.0 + hs_norm(ap)));
  CHECK(hs_norm(sub(aap, aap.transposed())) <= 1e-9 * (1.0 + hs_norm(aap)));
  CHECK(hs_norm(sub(apa, apa.transposed())) <= 1e-9 * (1.0 + hs_norm(apa)));
}

TEST_CASE("pinv matches the eigen-oracle pseudoinverse") {
  const DenseMap a = random_map(5, 7, 23);
  const DenseMap ap = pinv(a);
  CHECK(hs_norm(sub(ap, pinv_via_eigen(a))) <= 1e-8 * (1.0 + hs_norm(ap)));
}

TEST_CASE("pinv solves least squares with minimal norm") {
  const DenseMap a = random_map(4, 6, 29);
  const Vec b = random_unit(4, 30);
  const Vec x = pinv(a).apply(b);
  const Vec oracle = least_squares_min_norm(a, b);
  CHECK(norm(vec_sub(x, oracle)) <= 1e-8 * (1.0 + norm(x)));

  const double best = norm(vec_sub(a.apply(x), b));
  const DenseMap null_basis = orthonormal_completion(thin_svd(a).right);
  REQUIRE(null_basis.cols() == 2);
  for (std::size_t j = 0; j < null_basis.cols(); ++j) {
    const Vec shifted = vec_add(x, null_basis.column(j));
    CHECK(norm(vec_sub(a.apply(shifted), b)) >= best - 1e-10);
    CHECK(norm(shifted) >= norm(x) - 1e-10);
  }
}

TEST_CASE("pinv of the zero map is the transposed zero map") {
  const DenseMap ap = pinv(DenseMap(3, 5));
  CHECK(ap.rows() == 5);
  CHECK(ap.cols() == 3);
  CHECK(hs_norm(ap) == 0.0);
}

TEST_CASE("pinv_tikhonov reproduces closed forms per singular value") {
  const DenseMap one = pinv_tikhonov(DenseMap::diagonal({1.0}), 1.0);
  CHECK(one(0, 0) == doctest::Approx(0.5).epsilon(1e-12));

  const DenseMap two = pinv_tikhonov(DenseMap::diagonal({2.0, 0.0}), 0.01);
  CHECK(two(0, 0) == doctest::Approx(2.0 / 4.01).epsilon(1e-12));
  CHECK(two(1, 1) == 0.0);
}

TEST_CASE("pinv_tikhonov solves the shifted normal equations") {
  const DenseMap a = random_map(5, 3, 41);
  const double alpha = 1e-2;
  const DenseMap r = pinv_tikhonov(a, alpha);
  const DenseMap lhs = add(matmul(matmul(a.transposed(), a), r),
                           scaled(r, alpha));
  CHECK(hs_norm(sub(lhs, a.transposed())) <= 1e-10 * (1.0 + hs_norm(a)));
}

TEST_CASE("pinv_tikhonov tends to pinv as alpha vanishes") {
  const DenseMap a = random_map(5, 3, 43);
  const DenseMap limit = pinv_tikhonov(a, 1e-8);
  CHECK(spectral_norm(sub(limit, pinv(a))) <= 1e-5);
  CHECK(throws_code([&] { pinv_tikhonov(a, 0.0); }, ErrorCode::NonPositiveAlpha));
  CHECK(throws_code([&] { pinv_tikhonov(a, -1.0); }, ErrorCode::NonPositiveAlpha));
}

TEST_CASE("hs_norm closed forms") {
  CHECK(hs_norm(DenseMap(2, 3)) == 0.0);
  CHECK(hs_norm(DenseMap::identity(3)) == doctest::Approx(std::sqrt(3.0)));
  CHECK(hs_norm(DenseMap::diagonal({3.0, 4.0})) == doctest::Approx(5.0));
}

TEST_CASE("spectral_norm and smallest_singular read off the spectrum edges") {
  const DenseMap d = DenseMap::diagonal({2.0, 0.1});
  CHECK(spectral_norm(d) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(smallest_singular(d) == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(spectral_norm(DenseMap::identity(4)) == doctest::Approx(1.0));
  CHECK(smallest_singular(DenseMap::identity(4)) == doctest::Approx(1.0));
  CHECK(spectral_norm(DenseMap(3, 3)) == 0.0);
  CHECK(throws_code([&] { smallest_singular(DenseMap(3, 3)); },
                    ErrorCode::RankZero));

  const DenseMap a = random_map(4, 4, 53);
  const Vec oracle = singulars_via_eigen(a);
  CHECK(spectral_norm(a) == doctest::Approx(oracle.front()).epsilon(1e-10));
  CHECK(smallest_singular(a) == doctest::Approx(oracle.back()).epsilon(1e-10));
}

TEST_CASE("orthonormal_completion fills out an orthonormal basis") {
  DenseMap q(4, 2);
  q(0, 0) = 1.0;
  q(1, 1) = 1.0;
  const DenseMap c = orthonormal_completion(q);
  REQUIRE(c.cols() == 2);
  CHECK(orthonormality_defect(c) <= 1e-10);
  CHECK(hs_norm(matmul(q.transposed(), c)) <= 1e-10);

  const DenseMap q2 = thin_svd(random_map(6, 3, 61)).left;
  const DenseMap c2 = orthonormal_completion(q2);
  REQUIRE(c2.cols() == 3);
  CHECK(orthonormality_defect(c2) <= 1e-10);
  CHECK(hs_norm(matmul(q2.transposed(), c2)) <= 1e-10);

  CHECK(orthonormal_completion(DenseMap::identity(3)).cols() == 0);
}

TEST_CASE("misfit splits into coefficient part plus complement part") {
  // For any z: |y - z diag(w) xi^T|^2 = |y xi - z diag(w)|^2 + |y xi'|^2.
  const DenseMap xi = thin_svd(random_map(6, 3, 71)).left;  // 6 x 3 orthonormal
  const DenseMap xi_prime = orthonormal_completion(xi);
  const DenseMap y = random_map(4, 6, 72);
  const Vec w = {3.0, 2.0, 0.5};
  for (std::uint64_t trial = 0; trial < 5; ++trial) {
    const DenseMap z = random_map(4, 3, 73 + trial);
    const double total = phi_value(y, z, w, xi);
    const DenseMap coeff = sub(matmul(y, xi), svd_compose(z, w, DenseMap::identity(3)));
    const double part1 = hs_norm(coeff);
    const double part2 = hs_norm(matmul(y, xi_prime));
    CHECK(total * total ==
          doctest::Approx(part1 * part1 + part2 * part2).epsilon(1e-10));
  }
}

TEST_CASE("svd_compose multiplies out the factored form") {
  DenseMap left(3, 2);
  left(0, 0) = 1.0;
  left(1, 1) = 1.0;
  DenseMap right(4, 2);
  right(0, 0) = 1.0;
  right(1, 1) = 1.0;
  const DenseMap out = svd_compose(left, {5.0, 2.0}, right);
  CHECK(out.rows() == 3);
  CHECK(out.cols() == 4);
  CHECK(out(0, 0) == 5.0);
  CHECK(out(1, 1) == 2.0);
  CHECK(out(2, 2) == 0.0);
}
