#pragma once

#include <cstddef>
#include <vector>

#include "saddleprec/dense_matrix.hpp"

namespace saddleprec {

/// Cholesky factorization M = L L^T of a symmetric positive definite matrix.
/// solve() runs one step of iterative refinement with an extended-precision
/// residual, which keeps badly conditioned augmented blocks (cond ~ 1e8)
/// accurate enough for the 1e-9-level identity checks built on them.
class SPDFactorization {
public:
  std::size_t dim() const { return l_.rows(); }
  Vector solve(const Vector& b) const;
  /// Columnwise solve: returns X with M X = B.
  DenseMatrix solve(const DenseMatrix& b) const;
  const DenseMatrix& chol_lower() const { return l_; }

private:
  friend SPDFactorization factor_spd(const DenseMatrix& m);
  Vector solve_nofinish(const Vector& b) const;
  DenseMatrix l_;
  DenseMatrix a_;  // symmetrized input, kept for refinement residuals
};

/// Throws NotSymmetric if ||M - M^T||_F > 1e-12 ||M||_F, NotPositiveDefinite
/// on a nonpositive (or negligibly small) pivot. The input is symmetrized as
/// (M + M^T)/2 before factoring.
SPDFactorization factor_spd(const DenseMatrix& m);

/// LU with partial pivoting, for general square solves and the direct dense
/// inverse used as an oracle.
class LUFactorization {
public:
  std::size_t dim() const { return lu_.rows(); }
  Vector solve(const Vector& b) const;
  DenseMatrix solve(const DenseMatrix& b) const;

private:
  friend LUFactorization factor_lu(const DenseMatrix& m);
  Vector solve_nofinish(const Vector& b) const;
  DenseMatrix lu_;
  DenseMatrix a_;
  std::vector<std::size_t> piv_;
};

/// Throws SingularMatrix on a pivot below n*eps*max|M|.
LUFactorization factor_lu(const DenseMatrix& m);

/// Dense inverse via LU; oracle-grade plumbing, desk scale only.
DenseMatrix inverse(const DenseMatrix& m);

/// Householder QR of an m x n matrix (m >= n): M = Q R with Q m x m
/// orthogonal and R m x n upper trapezoidal.
struct QRFactorization {
  DenseMatrix q;
  DenseMatrix r;
};
QRFactorization qr_householder(const DenseMatrix& m);

/// Column-pivoted Householder QR: M P = Q R with |R(0,0)| >= |R(1,1)| >= ...
/// Only R and the permutation are formed (enough for rank decisions and row
/// selection).
struct PivotedQR {
  DenseMatrix r;
  std::vector<std::size_t> perm;  // perm[k] = original column index of col k
  /// Number of diagonal entries of R above tol_rel * |R(0,0)|.
  std::size_t rank(double tol_rel) const;
};
PivotedQR qr_col_pivoted(const DenseMatrix& m);

}  // namespace saddleprec
