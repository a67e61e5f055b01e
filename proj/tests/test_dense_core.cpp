#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "saddleprec/dense_matrix.hpp"
#include "saddleprec/errors.hpp"
#include "saddleprec/factorizations.hpp"
#include "saddleprec/rng.hpp"
#include "test_support.hpp"

using namespace saddleprec;
using namespace saddleprec::testing;

TEST_CASE("DenseMatrix construction enforces shape and finiteness") {
  CHECK_THROWS_AS(DenseMatrix(2, 2, Vector{1.0, 2.0, 3.0}), Error);
  CHECK_THROWS_AS(
      DenseMatrix(1, 2, Vector{1.0, std::numeric_limits<double>::infinity()}),
      Error);
  CHECK_THROWS_AS(
      DenseMatrix(1, 1, Vector{std::numeric_limits<double>::quiet_NaN()}),
      Error);
  const DenseMatrix m{{1.0, 2.0}, {3.0, 4.0}};
  CHECK(m(1, 0) == 3.0);
}

TEST_CASE("matrix arithmetic basics") {
  const DenseMatrix a{{1.0, 2.0}, {3.0, 4.0}};
  const DenseMatrix b{{0.0, 1.0}, {1.0, 0.0}};
  const DenseMatrix ab = a * b;
  CHECK(ab(0, 0) == 2.0);
  CHECK(ab(0, 1) == 1.0);
  CHECK(ab(1, 0) == 4.0);
  CHECK(ab(1, 1) == 3.0);

  const Vector x{1.0, -1.0};
  const Vector ax = a * x;
  CHECK(ax[0] == -1.0);
  CHECK(ax[1] == -1.0);

  CHECK(a.transpose()(0, 1) == 3.0);
  CHECK(a.symmetrized()(0, 1) == 2.5);
  CHECK(a.symmetry_error() == doctest::Approx(std::sqrt(2.0)));

  DenseMatrix big(4, 4);
  big.set_block(1, 1, a);
  CHECK(big(2, 2) == 4.0);
  CHECK(big.block(1, 1, 2, 2) == a);
}

TEST_CASE("multiply with empty factors yields zeros of the right shape") {
  const DenseMatrix a(3, 0);
  const DenseMatrix b(0, 2);
  const DenseMatrix c = a * b;
  CHECK(c.rows() == 3);
  CHECK(c.cols() == 2);
  CHECK(c.frobenius_norm() == 0.0);
}

TEST_CASE("factor_spd identity solve") {
  const auto f = factor_spd(DenseMatrix::identity(3));
  const Vector b{1.0, -2.0, 0.5};
  const Vector x = f.solve(b);
  for (std::size_t i = 0; i < 3; ++i) CHECK(x[i] == doctest::Approx(b[i]));
}

TEST_CASE("factor_spd 2x2 closed-form oracle") {
  // For M = [[4,1],[1,3]]: inverse = [[3,-1],[-1,4]]/11 so M^{-1}(1,2)^T
  // = (1/11, 7/11)^T.
  const DenseMatrix m{{4.0, 1.0}, {1.0, 3.0}};
  const Vector x = factor_spd(m).solve(Vector{1.0, 2.0});
  CHECK(x[0] == doctest::Approx(1.0 / 11.0).epsilon(1e-14));
  CHECK(x[1] == doctest::Approx(7.0 / 11.0).epsilon(1e-14));
}

TEST_CASE("factor_spd rejects indefinite and nonsymmetric input") {
  CHECK_THROWS_AS(factor_spd(DenseMatrix{{1.0, 0.0}, {0.0, -1.0}}),
                  NotPositiveDefinite);
  CHECK_THROWS_AS(factor_spd(DenseMatrix{{1.0, 1.0}, {0.0, 1.0}}),
                  NotSymmetric);
}

TEST_CASE("SPD solve residual over 100 random right-hand sides") {
  Rng rng(11);
  const DenseMatrix m = random_spd(rng, 12, 1e4);
  const auto f = factor_spd(m);
  for (int t = 0; t < 100; ++t) {
    const Vector b = rng.normal_vector(12);
    const Vector x = f.solve(b);
    Vector r = b;
    axpy(-1.0, m * x, r);
    CHECK(norm2(r) <= 1e-10 * norm2(b));
  }
}

TEST_CASE("LU solve and dense inverse") {
  Rng rng(3);
  const DenseMatrix m = rng.normal_matrix(10, 10);
  const DenseMatrix minv = inverse(m);
  CHECK(matrix_near(m * minv, DenseMatrix::identity(10), 1e-11));
  CHECK(matrix_near(minv * m, DenseMatrix::identity(10), 1e-11));

  DenseMatrix sing(3, 3);
  sing(0, 0) = 1.0;  // rank 1
  CHECK_THROWS_AS(factor_lu(sing), SingularMatrix);
}

TEST_CASE("Householder QR reproduces the matrix with orthogonal Q") {
  Rng rng(5);
  const DenseMatrix m = rng.normal_matrix(8, 5);
  const auto f = qr_householder(m);
  CHECK(matrix_near(f.q * f.r, m, 1e-12 * m.frobenius_norm()));
  CHECK(matrix_near(f.q.transpose() * f.q, DenseMatrix::identity(8), 1e-12));
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < std::min<std::size_t>(i, 5); ++j)
      CHECK(f.r(i, j) == 0.0);
}

TEST_CASE("column-pivoted QR reveals rank") {
  Rng rng(9);
  // 6x4 with exact rank 2: product of 6x2 and 2x4.
  const DenseMatrix m = rng.normal_matrix(6, 2) * rng.normal_matrix(2, 4);
  const auto f = qr_col_pivoted(m);
  CHECK(f.rank(1e-10) == 2);
  CHECK(std::fabs(f.r(0, 0)) >= std::fabs(f.r(1, 1)));

  const auto full = qr_col_pivoted(rng.normal_matrix(5, 5));
  CHECK(full.rank(1e-10) == 5);
}
