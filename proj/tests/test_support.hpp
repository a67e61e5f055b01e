#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "saddleprec/dense_matrix.hpp"
#include "saddleprec/factorizations.hpp"
#include "saddleprec/rng.hpp"

namespace saddleprec::testing {

inline DenseMatrix random_orthogonal(Rng& rng, std::size_t n) {
  QRFactorization f = qr_householder(rng.normal_matrix(n, n));
  DenseMatrix q = std::move(f.q);
  for (std::size_t j = 0; j < n; ++j)
    if (f.r(j, j) < 0.0)
      for (std::size_t i = 0; i < n; ++i) q(i, j) = -q(i, j);
  return q;
}

/// Q diag(spec) Q^T for a random orthogonal Q.
inline DenseMatrix random_symmetric_with_spectrum(Rng& rng,
                                                  const Vector& spec) {
  const std::size_t n = spec.size();
  const DenseMatrix q = random_orthogonal(rng, n);
  DenseMatrix qd = q;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) qd(i, j) *= spec[j];
  return (qd * q.transpose()).symmetrized();
}

inline DenseMatrix random_spd(Rng& rng, std::size_t n, double cond = 100.0) {
  Vector spec(n, 1.0);
  for (std::size_t i = 1; i < n; ++i)
    spec[i] = std::pow(cond, -static_cast<double>(i) / std::max<std::size_t>(n - 1, 1));
  return random_symmetric_with_spectrum(rng, spec);
}

inline double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
  return (a - b).max_abs();
}

inline bool matrix_near(const DenseMatrix& a, const DenseMatrix& b,
                        double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return (a - b).frobenius_norm() <= tol;
}

inline std::vector<double> sorted_real_parts(
    std::vector<std::complex<double>> eigs) {
  std::vector<double> out(eigs.size());
  for (std::size_t i = 0; i < eigs.size(); ++i) out[i] = eigs[i].real();
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace saddleprec::testing
