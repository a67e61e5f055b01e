#pragma once

#include <memory>
#include <string>

#include "saddleprec/dense_matrix.hpp"
#include "saddleprec/factorizations.hpp"
#include "saddleprec/problem.hpp"
#include "saddleprec/svd.hpp"

namespace saddleprec {

enum class WeightKind { WB, W, L };

/// Symmetric positive definite weight matrix with its Cholesky factor.
struct WeightMatrix {
  WeightKind kind = WeightKind::W;
  DenseMatrix value;
  SPDFactorization factor;

  static WeightMatrix identity(WeightKind kind, std::size_t m);
  /// Factors the given matrix; throws NotPositiveDefinite/NotSymmetric.
  static WeightMatrix from_dense(WeightKind kind, DenseMatrix value);
};

/// A + aug^T W^{-1} aug with its Cholesky factor.
struct AugmentedBlock {
  DenseMatrix value;
  SPDFactorization factor;
};
AugmentedBlock build_augmented(const DenseMatrix& a, const DenseMatrix& aug,
                               const WeightMatrix& w);

/// L = (B2 Z_A)(B2 Z_A)^T together with the renormalized null matrix
/// Z_A' = Z_A (B2 Z_A)^T, which satisfies B2 Z_A' = L and
/// (A + B2^T L^{-1} B2) Z_A' = B2^T.
struct WeightL {
  WeightMatrix l;
  DenseMatrix basis;  // Z_A' (columns span ker(A); not orthonormal)
};
WeightL build_weight_l(const DenseMatrix& b2, const NullBasis& z_a);

/// The operator V = Z_B2 (Z_B2^T A Z_B2)^{-1} Z_B2^T, computable two ways.
enum class VMode { NullB2, AugSolve };

class VOperator {
public:
  VMode mode() const { return mode_; }
  std::size_t dim() const { return dim_; }
  Vector apply(const Vector& x) const;
  /// Exact dense evaluation.
  DenseMatrix dense() const;

private:
  friend VOperator build_v(const DenseMatrix& a, const DenseMatrix& b2,
                           VMode mode, double rank_tol);
  VMode mode_ = VMode::NullB2;
  std::size_t dim_ = 0;
  // NullB2 route
  DenseMatrix zb2_;
  SPDFactorization reduced_;  // Z_B2^T A Z_B2
  // AugSolve route
  SPDFactorization atilde_;
  DenseMatrix b2_;
  WeightL weight_l_;
};

/// Builds V from either route. Throws ReducedHessianNotSPD when
/// Z_B2^T A Z_B2 is not positive definite, BorderedSingular when the
/// AugSolve route needs ker(A) but B2 Z_A is singular.
VOperator build_v(const DenseMatrix& a, const DenseMatrix& b2, VMode mode,
                  double rank_tol = 1e-10);

enum class PrecondTag { P2D, P3D, P3T, Identity };
std::string to_string(PrecondTag t);

class Preconditioner {
public:
  virtual ~Preconditioner() = default;
  PrecondTag tag() const { return tag_; }
  std::size_t dim() const { return dim_; }
  /// MINRES requires this; true for P2D/P3D/Identity.
  bool is_spd() const { return spd_; }
  /// False when built outside the regime its spectrum theorem assumes.
  bool ideal() const { return ideal_; }

  virtual Vector apply_inverse(const Vector& v) const = 0;
  /// Columnwise apply_inverse; used to assemble P^{-1} K and P^{-1}.
  DenseMatrix apply_inverse(const DenseMatrix& m) const;
  DenseMatrix assemble_inverse() const;
  /// Explicit dense P. Verification only; throws for P3T (not formed as P).
  virtual DenseMatrix assemble() const = 0;

protected:
  PrecondTag tag_ = PrecondTag::Identity;
  std::size_t dim_ = 0;
  bool spd_ = true;
  bool ideal_ = true;
};

/// diag(A + B^T WB^{-1} B, WB) over the 2x2 view with B = [B1; B2].
/// Flagged non-ideal unless the problem is maximally rank-deficient.
std::unique_ptr<Preconditioner> build_p2d(const SaddleProblem& p,
                                          const WeightMatrix& wb);

/// diag(A + B2^T W^{-1} B2, schur_scale * B1 Atilde^{-1} B1^T, W).
/// The 1/2 scaling is the three-eigenvalue choice; other scalings are
/// exposed for the empirical sweep.
std::unique_ptr<Preconditioner> build_p3d(const SaddleProblem& p,
                                          const WeightMatrix& w,
                                          double schur_scale = 0.5);

enum class CornerForm { NullA, NullB2 };

/// Block triangular preconditioner applying
///   [[V, 0, Z_A L^{-1}], [0, (B1 V B1^T)^{-1}, 0], [L^{-1} Z_A^T, 0, 0]].
/// CornerForm::NullB2 swaps the corner blocks for
/// (I - V A) B2^T (B2 B2^T)^{-1} and its transpose-analogue.
std::unique_ptr<Preconditioner> build_p3t(const SaddleProblem& p,
                                          const WeightL& wl,
                                          const VOperator& v,
                                          CornerForm corner = CornerForm::NullA);

std::unique_ptr<Preconditioner> build_identity(std::size_t dim);

/// The explicit block matrix of the P3T inverse formula, assembled from dense
/// inverses. Oracle for P3T::apply_inverse; verification only.
DenseMatrix assemble_p3t_inverse_explicit(const SaddleProblem& p,
                                          const WeightL& wl, const VOperator& v,
                                          CornerForm corner = CornerForm::NullA);

/// ||B Atilde_WB^{-1} B^T - WB||_F / ||WB||_F for any invertible (not
/// necessarily symmetric) WB; LU-based.
double schur_identity_residual(const SaddleProblem& p, const DenseMatrix& wb);

}  // namespace saddleprec
