#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "saddleprec/dense_matrix.hpp"
#include "saddleprec/svd.hpp"

namespace saddleprec {

enum class Regime { MaxRankDeficient, MinimallyIndependent, General };

std::string to_string(Regime r);
Regime regime_from_string(const std::string& s);

/// Saddle point problem with the 3x3 row split [A, B1^T, B2^T; B1 0 0; B2 0 0]
/// and exactly controlled rank structure: A symmetric PSD with
/// nullity(A) = m2, B2*Z_A invertible, and (in the minimally independent
/// regime) every row of B1 inside the row space of A.
struct SaddleProblem {
  DenseMatrix a;   // n x n
  DenseMatrix b1;  // m1 x n
  DenseMatrix b2;  // m2 x n
  Regime regime = Regime::General;
  std::uint64_t seed = 0;

  std::size_t n() const { return a.rows(); }
  std::size_t m1() const { return b1.rows(); }
  std::size_t m2() const { return b2.rows(); }
  std::size_t total_dim() const { return n() + m1() + m2(); }

  /// B = [B1; B2] stacked, m x n.
  DenseMatrix b_stacked() const;
};

struct RhsVector {
  Vector f;   // length n
  Vector g1;  // length m1
  Vector g2;  // length m2

  Vector stacked() const;
  static RhsVector split(const Vector& v, std::size_t n, std::size_t m1,
                         std::size_t m2);
};

struct GeneratorOptions {
  double cond_a = 1e4;    // condition number of the nonzero spectrum of A
  double rank_tol = 1e-10;
  int max_retries = 10;
};

/// Deterministic generator: (dims, regime, seed) -> problem, bitwise
/// reproducible. Throws DegenerateDraw if max_retries consecutive draws fail
/// the nonsingularity checks.
SaddleProblem generate(std::size_t n, std::size_t m1, std::size_t m2,
                       Regime regime, std::uint64_t seed,
                       const GeneratorOptions& opt = {});

/// Random right-hand side for a problem, deterministic in the seed.
RhsVector random_rhs(const SaddleProblem& p, std::uint64_t seed);

/// Assembled (n+m1+m2)^2 matrix [[A,B1^T,B2^T],[B1,0,0],[B2,0,0]].
DenseMatrix assemble_k(const SaddleProblem& p);

/// The 2x2 bordered matrix [[A,B2^T],[B2,0]].
DenseMatrix assemble_bordered(const DenseMatrix& a, const DenseMatrix& b2);

struct SplitResult {
  DenseMatrix b1;
  DenseMatrix b2;
  std::vector<std::size_t> permutation;  // row i of [B1;B2] = row perm[i] of B
};

/// Selects nullity(A) rows of B whose projections onto ker(A) are linearly
/// independent (column-pivoted QR on Z_A^T B^T); those become B2, the rest
/// B1. Throws NotSplittable when fewer than nullity(A) rows project onto
/// ker(A) independently (then K would be singular).
SplitResult split_b(const DenseMatrix& a, const DenseMatrix& b,
                    double tol = 1e-10);

}  // namespace saddleprec
