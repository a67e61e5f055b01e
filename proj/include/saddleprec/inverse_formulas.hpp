#pragma once

#include <string>
#include <vector>

#include "saddleprec/dense_matrix.hpp"
#include "saddleprec/preconditioners.hpp"
#include "saddleprec/problem.hpp"
#include "saddleprec/svd.hpp"

namespace saddleprec {

enum class Provenance {
  Direct,
  PosDefA,
  NullspaceZ,
  NullB2,
  NullA,
  NullAMult,
  AugShift
};
std::string to_string(Provenance p);

/// K^{-1} represented as a grid of dense blocks with the formula that
/// produced it.
struct BlockInverse {
  std::vector<std::vector<DenseMatrix>> grid;  // square grid of blocks
  Provenance provenance = Provenance::Direct;

  std::size_t block_rows() const { return grid.size(); }
  DenseMatrix assemble() const;
  /// max over (i,j) of ||grid(i,j) - grid(j,i)^T||_F
  double symmetry_residual() const;
};

/// Residual ||assembled * K - I||_F; the caller compares against the
/// condition-aware bound 1e-8 * cond2(K).
double inverse_residual(const BlockInverse& inv, const DenseMatrix& k);

/// 2x2 inverse for SPD leading block: S_B = Bcal Acal^{-1} Bcal^T,
///   [[A^{-1} - A^{-1}B^T S^{-1} B A^{-1},  A^{-1}B^T S^{-1}],
///    [S^{-1} B A^{-1},                     -S^{-1}]].
BlockInverse inv2_posdef(const DenseMatrix& acal, const DenseMatrix& bcal);

/// 2x2 inverse via a null basis Z of Bcal, valid for singular Acal with
/// Z^T Acal Z SPD; V_B = Z (Z^T Acal Z)^{-1} Z^T.
BlockInverse inv2_nullspace(const DenseMatrix& acal, const DenseMatrix& bcal,
                            const NullBasis& z);

/// Null-B2 3x3 inverse. Minimally independent problems get the simplified
/// grid (zero trailing blocks, short X3); anything else gets the full
/// X1..X6 grid, which holds whenever [[A,B2^T],[B2,0]] is invertible.
BlockInverse inv3_null_b2(const SaddleProblem& p, const NullBasis& z_b2);

enum class LeadingForm { Additive, Multiplicative };

/// Null-A 3x3 inverse (minimally independent problems only), with the
/// leading block in additive (A_hat - Z_A L^{-1} Z_A^T) or multiplicative
/// form.
BlockInverse inv3_null_a(const SaddleProblem& p, const NullBasis& z_a,
                         LeadingForm form = LeadingForm::Additive);

/// Direct dense inverse of K partitioned into the 3x3 grid (LU oracle).
BlockInverse direct_block_inverse(const SaddleProblem& p);

/// ||K(W)^{-1} - (K^{-1} - blockdiag(0,0,W^{-1}))||_F / ||K^{-1}||_F where
/// K(W) augments the leading block with B2^T W^{-1} B2.
double aug_shift_residual(const SaddleProblem& p, const WeightMatrix& w);

/// The auxiliary matrices of the inverse formulas, computed for a given
/// weight: V, S_V = B1 V B1^T, Atilde_W, S_B = B1 Atilde_W^{-1} B1^T,
/// A_hat, S_bar = B2 A_hat B2^T.
struct ScratchTerms {
  DenseMatrix v;
  DenseMatrix s_v;
  DenseMatrix a_tilde;
  DenseMatrix s_b;
  DenseMatrix a_hat;
  DenseMatrix s_bar;
};
ScratchTerms compute_scratch(const SaddleProblem& p, const WeightMatrix& w,
                             double rank_tol = 1e-10);

}  // namespace saddleprec
