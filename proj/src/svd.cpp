#include "saddleprec/svd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "saddleprec/errors.hpp"

namespace saddleprec {

namespace {
constexpr double kEps = std::numeric_limits<double>::epsilon();
}

SVD svd_jacobi(const DenseMatrix& m, int max_sweeps) {
  const std::size_t cols = m.cols();
  // Pad with zero rows if wide, so the full V (cols x cols) is accumulated.
  const std::size_t rows = std::max(m.rows(), cols);
  DenseMatrix a(rows, cols);
  a.set_block(0, 0, m);
  DenseMatrix v = DenseMatrix::identity(cols);

  if (cols > 1) {
    bool rotated = true;
    int sweep = 0;
    while (rotated) {
      if (++sweep > max_sweeps)
        throw NoConvergence("svd_jacobi: sweep cap exceeded");
      rotated = false;
      // Columns at roundoff level are frozen: rotating debris against real
      // columns never satisfies the angle test and would stall the sweep.
      double max_norm2 = 0.0;
      Vector norm2s(cols, 0.0);
      for (std::size_t j = 0; j < cols; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < rows; ++i) s += a(i, j) * a(i, j);
        norm2s[j] = s;
        max_norm2 = std::max(max_norm2, s);
      }
      const double freeze = kEps * kEps * max_norm2;
      for (std::size_t p = 0; p + 1 < cols; ++p) {
        for (std::size_t q = p + 1; q < cols; ++q) {
          if (norm2s[p] <= freeze || norm2s[q] <= freeze) continue;
          double alpha = 0.0, beta = 0.0, gamma = 0.0;
          for (std::size_t i = 0; i < rows; ++i) {
            const double ap = a(i, p), aq = a(i, q);
            alpha += ap * ap;
            beta += aq * aq;
            gamma += ap * aq;
          }
          if (std::fabs(gamma) <= 16.0 * kEps * std::sqrt(alpha * beta) ||
              gamma == 0.0)
            continue;
          rotated = true;
          const double zeta = (beta - alpha) / (2.0 * gamma);
          const double t = ((zeta >= 0.0) ? 1.0 : -1.0) /
                           (std::fabs(zeta) + std::sqrt(1.0 + zeta * zeta));
          const double c = 1.0 / std::sqrt(1.0 + t * t);
          const double s = c * t;
          for (std::size_t i = 0; i < rows; ++i) {
            const double ap = a(i, p), aq = a(i, q);
            a(i, p) = c * ap - s * aq;
            a(i, q) = s * ap + c * aq;
          }
          for (std::size_t i = 0; i < cols; ++i) {
            const double vp = v(i, p), vq = v(i, q);
            v(i, p) = c * vp - s * vq;
            v(i, q) = s * vp + c * vq;
          }
          norm2s[p] = alpha - gamma * t;
          norm2s[q] = beta + gamma * t;
        }
      }
    }
  }

  std::vector<double> sig(cols);
  for (std::size_t j = 0; j < cols; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < rows; ++i) s += a(i, j) * a(i, j);
    sig[j] = std::sqrt(s);
  }

  std::vector<std::size_t> order(cols);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return sig[x] > sig[y]; });

  SVD out;
  out.sigma.resize(cols);
  out.u = DenseMatrix(m.rows(), cols);
  out.v = DenseMatrix(cols, cols);
  for (std::size_t j = 0; j < cols; ++j) {
    const std::size_t src = order[j];
    out.sigma[j] = sig[src];
    for (std::size_t i = 0; i < cols; ++i) out.v(i, j) = v(i, src);
    if (sig[src] > 0.0) {
      const double inv = 1.0 / sig[src];
      for (std::size_t i = 0; i < m.rows(); ++i)
        out.u(i, j) = a(i, src) * inv;
    }
  }
  return out;
}

std::vector<double> singular_values(const DenseMatrix& m) {
  return svd_jacobi(m).sigma;
}

double sigma_max(const DenseMatrix& m) {
  if (m.empty()) return 0.0;
  return singular_values(m).front();
}

double sigma_min(const DenseMatrix& m) {
  if (m.empty()) return 0.0;
  const auto s = singular_values(m);
  return s[std::min(m.rows(), m.cols()) - 1];
}

double cond2(const DenseMatrix& m) {
  if (m.empty()) return 1.0;
  const auto s = singular_values(m);
  const double smin = s[std::min(m.rows(), m.cols()) - 1];
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return s.front() / smin;
}

std::size_t rank(const DenseMatrix& m, double tol_rel) {
  if (m.empty()) return 0;
  const auto s = singular_values(m);
  if (s.front() == 0.0) return 0;
  const double cutoff = tol_rel * s.front();
  std::size_t r = 0;
  for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i)
    if (s[i] > cutoff) ++r;
  return r;
}

NullBasis nullspace(const DenseMatrix& m, double tol_rel) {
  if (tol_rel <= 0.0) throw Error("nullspace: tolerance must be positive");
  const std::size_t n = m.cols();
  const SVD f = svd_jacobi(m);
  const double smax = n == 0 ? 0.0 : f.sigma.front();

  NullBasis nb;
  nb.source = m;
  nb.tolerance = tol_rel;
  if (smax == 0.0) {
    nb.basis = DenseMatrix::identity(n);
    return nb;
  }
  const double cutoff = tol_rel * smax;
  std::size_t first = n;
  for (std::size_t j = 0; j < n; ++j) {
    if (f.sigma[j] < cutoff) {
      first = j;
      break;
    }
  }
  nb.basis = DenseMatrix(n, n - first);
  for (std::size_t j = first; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) nb.basis(i, j - first) = f.v(i, j);
  return nb;
}

}  // namespace saddleprec
