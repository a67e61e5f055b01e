#pragma once

#include <cstddef>
#include <vector>

#include "saddleprec/dense_matrix.hpp"

namespace saddleprec {

/// Singular value decomposition M = U diag(sigma) V^T with sigma descending.
/// V is always full (cols x cols). Columns of U paired with zero singular
/// values are zero vectors; nothing in this library consumes them.
struct SVD {
  DenseMatrix u;
  std::vector<double> sigma;
  DenseMatrix v;
};

/// One-sided Jacobi SVD. High relative accuracy for small singular values,
/// which is what the rank/nullspace decisions here depend on.
SVD svd_jacobi(const DenseMatrix& m, int max_sweeps = 60);

std::vector<double> singular_values(const DenseMatrix& m);
double sigma_max(const DenseMatrix& m);
double sigma_min(const DenseMatrix& m);
/// sigma_max / sigma_min; +inf when numerically singular.
double cond2(const DenseMatrix& m);
/// Number of singular values above tol_rel * sigma_max.
std::size_t rank(const DenseMatrix& m, double tol_rel);

/// Orthonormal-column basis of ker(M) together with the matrix it annihilates
/// and the cutoff used.
struct NullBasis {
  DenseMatrix source;  // the matrix whose kernel is spanned
  DenseMatrix basis;   // orthonormal columns; may have zero columns (full rank)
  double tolerance;    // relative singular-value cutoff that was applied

  std::size_t dim() const { return basis.cols(); }
};

/// Kernel basis: columns of V for singular values below tol_rel * sigma_max.
/// A full-rank matrix yields an empty (n x 0) basis; the zero matrix yields
/// the identity.
NullBasis nullspace(const DenseMatrix& m, double tol_rel = 1e-10);

}  // namespace saddleprec
