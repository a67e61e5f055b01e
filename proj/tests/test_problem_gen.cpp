#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "saddleprec/eig.hpp"
#include "saddleprec/errors.hpp"
#include "saddleprec/problem.hpp"
#include "saddleprec/svd.hpp"
#include "test_support.hpp"

using namespace saddleprec;
using namespace saddleprec::testing;

TEST_CASE("smallest max-rd instance: A = [0], K = [[0,b],[b,0]]") {
  const SaddleProblem p = generate(1, 0, 1, Regime::MaxRankDeficient, 0);
  CHECK(p.a(0, 0) == 0.0);
  CHECK(p.b2(0, 0) != 0.0);
  const DenseMatrix k = assemble_k(p);
  CHECK(k(0, 0) == 0.0);
  CHECK(k(1, 1) == 0.0);
  CHECK(k(0, 1) == k(1, 0));
  CHECK(sigma_min(k) > 1e-8 * sigma_max(k));
}

TEST_CASE("minimally independent problem satisfies its invariants") {
  const SaddleProblem p = generate(4, 1, 1, Regime::MinimallyIndependent, 7);
  const NullBasis za = nullspace(p.a, 1e-10);
  REQUIRE(za.dim() == 1);
  CHECK((p.b1 * za.basis).frobenius_norm() <= 1e-10 * p.b1.frobenius_norm());
  CHECK(cond2(p.b2 * za.basis) < 1e8);
  const DenseMatrix k = assemble_k(p);
  CHECK(sigma_min(k) > 1e-8 * sigma_max(k));
  // Bordered submatrix invertible.
  CHECK(sigma_min(assemble_bordered(p.a, p.b2)) > 1e-10);
}

TEST_CASE("general regime keeps B1 out of the row space of A") {
  const SaddleProblem p = generate(4, 1, 1, Regime::General, 7);
  const NullBasis za = nullspace(p.a, 1e-10);
  CHECK((p.b1 * za.basis).frobenius_norm() > 1e-6 * p.b1.frobenius_norm());
  CHECK(sigma_min(assemble_k(p)) > 1e-8 * sigma_max(assemble_k(p)));
}

TEST_CASE("generated A is symmetric PSD with nullity m2") {
  for (std::uint64_t seed : {1u, 5u, 9u}) {
    const SaddleProblem p =
        generate(12, 2, 3, Regime::MinimallyIndependent, seed);
    CHECK(p.a.symmetry_error() == 0.0);
    CHECK(min_eigenvalue_symmetric(p.a) >= -1e-10 * p.a.frobenius_norm());
    CHECK(nullspace(p.a, 1e-10).dim() == 3);
  }
}

TEST_CASE("assembled K is exactly symmetric") {
  const SaddleProblem p = generate(10, 2, 2, Regime::General, 3);
  CHECK(assemble_k(p).symmetry_error() == 0.0);
}

TEST_CASE("determinism: identical inputs give bitwise-identical problems") {
  const SaddleProblem p1 = generate(9, 2, 2, Regime::MinimallyIndependent, 42);
  const SaddleProblem p2 = generate(9, 2, 2, Regime::MinimallyIndependent, 42);
  CHECK(p1.a == p2.a);
  CHECK(p1.b1 == p2.b1);
  CHECK(p1.b2 == p2.b2);
  const SaddleProblem p3 = generate(9, 2, 2, Regime::MinimallyIndependent, 43);
  CHECK_FALSE(p1.a == p3.a);
}

TEST_CASE("nonsingular K iff trivial kernel intersection") {
  // Generated problems: intersection of ker(A) and ker(B) is trivial and K
  // is nonsingular.
  const SaddleProblem p = generate(8, 2, 2, Regime::General, 11);
  DenseMatrix stack(p.n() + p.m1() + p.m2(), p.n());
  stack.set_block(0, 0, p.a);
  stack.set_block(p.n(), 0, p.b_stacked());
  CHECK(nullspace(stack, 1e-10).dim() == 0);
  CHECK(sigma_min(assemble_k(p)) > 0.0);

  // Hand-built counterexample: e2 in both kernels makes K singular.
  SaddleProblem bad;
  bad.a = DenseMatrix{{1.0, 0.0}, {0.0, 0.0}};
  bad.b1 = DenseMatrix(0, 2);
  bad.b2 = DenseMatrix{{1.0, 0.0}};
  DenseMatrix bad_stack(3, 2);
  bad_stack.set_block(0, 0, bad.a);
  bad_stack.set_block(2, 0, bad.b2);
  CHECK(nullspace(bad_stack, 1e-10).dim() == 1);
  CHECK(sigma_min(assemble_k(bad)) <= 1e-12);
}

TEST_CASE("generator rejects inconsistent dimensions") {
  CHECK_THROWS_AS(generate(4, 1, 1, Regime::MaxRankDeficient, 0), Error);
  CHECK_THROWS_AS(generate(3, 2, 2, Regime::General, 0), Error);
}

TEST_CASE("split_b coordinate case") {
  const DenseMatrix a{{1.0, 0.0}, {0.0, 0.0}};
  const DenseMatrix b = DenseMatrix::identity(2);
  const SplitResult s = split_b(a, b);
  REQUIRE(s.b2.rows() == 1);
  CHECK(s.b2(0, 0) == 0.0);
  CHECK(s.b2(0, 1) == 1.0);
  CHECK(s.b1(0, 0) == 1.0);
  CHECK(s.permutation == std::vector<std::size_t>{0, 1});
}

TEST_CASE("split_b reports unsplittable systems") {
  // The only row of B lies in the row space of A, so K is singular.
  const DenseMatrix a{{1.0, 0.0}, {0.0, 0.0}};
  const DenseMatrix b{{1.0, 0.0}};
  CHECK_THROWS_AS(split_b(a, b), NotSplittable);
}

TEST_CASE("split_b recovers the generator split after shuffling") {
  const SaddleProblem p = generate(6, 2, 2, Regime::MinimallyIndependent, 13);
  const DenseMatrix b = p.b_stacked();
  // Shuffle rows with a fixed permutation.
  const std::vector<std::size_t> shuffle{2, 0, 3, 1};
  DenseMatrix shuffled(4, 6);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 6; ++j) shuffled(i, j) = b(shuffle[i], j);

  const SplitResult s = split_b(p.a, shuffled);
  const NullBasis za = nullspace(p.a, 1e-10);
  CHECK((s.b1 * za.basis).frobenius_norm() <=
        1e-10 * (1.0 + s.b1.frobenius_norm()));
  CHECK(cond2(s.b2 * za.basis) < 1e8);

  // Idempotence: re-splitting the already-split stack returns it unchanged.
  SaddleProblem q = p;
  q.b1 = s.b1;
  q.b2 = s.b2;
  const SplitResult s2 = split_b(p.a, q.b_stacked());
  CHECK(s2.b1 == s.b1);
  CHECK(s2.b2 == s.b2);
}

TEST_CASE("split_b with full-rank A returns everything in B1") {
  Rng rng(2);
  const DenseMatrix a = random_spd(rng, 5);
  const DenseMatrix b = rng.normal_matrix(2, 5);
  const SplitResult s = split_b(a, b);
  CHECK(s.b2.rows() == 0);
  CHECK(s.b1 == b);
}

TEST_CASE("rhs stacking round-trips") {
  const SaddleProblem p = generate(5, 1, 2, Regime::General, 1);
  const RhsVector r = random_rhs(p, 1);
  CHECK(r.f.size() == 5);
  CHECK(r.g1.size() == 1);
  CHECK(r.g2.size() == 2);
  const Vector v = r.stacked();
  const RhsVector back = RhsVector::split(v, 5, 1, 2);
  CHECK(back.f == r.f);
  CHECK(back.g1 == r.g1);
  CHECK(back.g2 == r.g2);
}

TEST_CASE("max-rd regime across sizes") {
  const SaddleProblem p = generate(10, 0, 4, Regime::MaxRankDeficient, 21);
  CHECK(p.m1() == 0);
  CHECK(nullspace(p.a, 1e-10).dim() == 4);
  CHECK(sigma_min(assemble_k(p)) > 1e-8 * sigma_max(assemble_k(p)));
}
