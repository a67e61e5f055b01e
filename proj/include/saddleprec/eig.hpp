#pragma once

#include <complex>
#include <vector>

#include "saddleprec/dense_matrix.hpp"

namespace saddleprec {

/// Eigenvalues of a general real square matrix via Householder Hessenberg
/// reduction followed by Francis double-shift QR iteration. Throws
/// NoConvergence if a block fails to deflate within the iteration cap.
/// Desk scale (dim <= 2000).
std::vector<std::complex<double>> eig_general(const DenseMatrix& m);

/// Full eigen-decomposition of a symmetric matrix by cyclic Jacobi rotation.
/// values ascending; vectors.col(j) is the eigenvector for values[j].
struct SymmetricEig {
  std::vector<double> values;
  DenseMatrix vectors;
};
SymmetricEig eig_symmetric_jacobi(const DenseMatrix& m);

/// Smallest eigenvalue of a symmetric matrix (Jacobi).
double min_eigenvalue_symmetric(const DenseMatrix& m);

}  // namespace saddleprec
