#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "saddleprec/eig.hpp"
#include "saddleprec/factorizations.hpp"
#include "test_support.hpp"

using namespace saddleprec;
using namespace saddleprec::testing;

TEST_CASE("eigenvalues of diag(3,-1)") {
  const auto eigs =
      sorted_real_parts(eig_general(DenseMatrix{{3.0, 0.0}, {0.0, -1.0}}));
  CHECK(eigs[0] == doctest::Approx(-1.0));
  CHECK(eigs[1] == doctest::Approx(3.0));
}

TEST_CASE("eigenvalues of the symmetric swap") {
  const auto eigs =
      sorted_real_parts(eig_general(DenseMatrix{{0.0, 1.0}, {1.0, 0.0}}));
  CHECK(eigs[0] == doctest::Approx(-1.0));
  CHECK(eigs[1] == doctest::Approx(1.0));
}

TEST_CASE("companion matrix of lambda^2 - lambda - 1") {
  // Quadratic-formula oracle: roots (1 +- sqrt(5))/2.
  const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
  const auto eigs =
      sorted_real_parts(eig_general(DenseMatrix{{1.0, 1.0}, {1.0, 0.0}}));
  CHECK(eigs[0] == doctest::Approx(1.0 - golden).epsilon(1e-12));
  CHECK(eigs[1] == doctest::Approx(golden).epsilon(1e-12));
}

TEST_CASE("complex pair from a rotation-like matrix") {
  const double c = 0.6, s = 0.8;
  const auto eigs = eig_general(DenseMatrix{{c, -s}, {s, c}});
  REQUIRE(eigs.size() == 2);
  CHECK(std::fabs(eigs[0].real() - c) <= 1e-14);
  CHECK(std::fabs(std::fabs(eigs[0].imag()) - s) <= 1e-14);
  CHECK(eigs[0].imag() == doctest::Approx(-eigs[1].imag()));
}

TEST_CASE("eig_general matches the Jacobi route on random symmetric matrices") {
  for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
    Rng rng(seed);
    DenseMatrix m = rng.normal_matrix(5, 5).symmetrized();
    const auto general = sorted_real_parts(eig_general(m));
    const auto jacobi = eig_symmetric_jacobi(m);
    double scale = 0.0;
    for (double v : jacobi.values) scale = std::max(scale, std::fabs(v));
    for (std::size_t i = 0; i < 5; ++i)
      CHECK(std::fabs(general[i] - jacobi.values[i]) <= 1e-9 * scale);
  }
}

TEST_CASE("eig_general on a similarity-constructed nonsymmetric matrix") {
  Rng rng(17);
  const std::size_t n = 6;
  Vector d{1.0, 2.0, 3.0, 4.0, 5.0, 6.0};
  DenseMatrix x = rng.normal_matrix(n, n);
  x += DenseMatrix::identity(n) * 6.0;  // keep X well conditioned
  const DenseMatrix m = x * DenseMatrix::diagonal(d) * inverse(x);
  const auto eigs = sorted_real_parts(eig_general(m));
  for (std::size_t i = 0; i < n; ++i)
    CHECK(eigs[i] == doctest::Approx(d[i]).epsilon(1e-8));
}

TEST_CASE("repeated eigenvalues keep their multiplicities") {
  Rng rng(23);
  const DenseMatrix m =
      random_symmetric_with_spectrum(rng, {2.0, 2.0, 2.0, 5.0, 5.0});
  const auto eigs = sorted_real_parts(eig_general(m));
  CHECK(eigs[0] == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(eigs[2] == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(eigs[3] == doctest::Approx(5.0).epsilon(1e-10));
  CHECK(eigs[4] == doctest::Approx(5.0).epsilon(1e-10));
}

TEST_CASE("Jacobi eigenvectors diagonalize") {
  Rng rng(31);
  const DenseMatrix m = rng.normal_matrix(8, 8).symmetrized();
  const auto f = eig_symmetric_jacobi(m);
  const DenseMatrix lam = DenseMatrix::diagonal(f.values);
  CHECK(matrix_near(m * f.vectors, f.vectors * lam,
                    1e-12 * (1.0 + m.frobenius_norm())));
  CHECK(matrix_near(f.vectors.transpose() * f.vectors,
                    DenseMatrix::identity(8), 1e-12));
}

TEST_CASE("larger symmetric cross-check") {
  Rng rng(47);
  const DenseMatrix m = rng.normal_matrix(40, 40).symmetrized();
  const auto general = sorted_real_parts(eig_general(m));
  const auto jacobi = eig_symmetric_jacobi(m);
  double scale = std::max(std::fabs(jacobi.values.front()),
                          std::fabs(jacobi.values.back()));
  for (std::size_t i = 0; i < 40; ++i)
    CHECK(std::fabs(general[i] - jacobi.values[i]) <= 1e-9 * scale);
}
