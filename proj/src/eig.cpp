#include "saddleprec/eig.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "saddleprec/errors.hpp"

namespace saddleprec {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Householder similarity reduction to upper Hessenberg form.
void hessenberg_reduce(DenseMatrix& h) {
  const std::size_t n = h.rows();
  if (n < 3) return;
  Vector v(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    // Householder vector for column k below the subdiagonal.
    double sigma = 0.0;
    for (std::size_t i = k + 2; i < n; ++i) sigma += h(i, k) * h(i, k);
    if (sigma == 0.0) continue;
    const double x0 = h(k + 1, k);
    const double mu = std::sqrt(x0 * x0 + sigma);
    const double v0 = (x0 <= 0.0) ? x0 - mu : -sigma / (x0 + mu);
    const double beta = 2.0 * v0 * v0 / (sigma + v0 * v0);
    v[k + 1] = 1.0;
    for (std::size_t i = k + 2; i < n; ++i) v[i] = h(i, k) / v0;
    // Left: rows k+1..n-1.
    for (std::size_t j = k; j < n; ++j) {
      double s = 0.0;
      for (std::size_t i = k + 1; i < n; ++i) s += v[i] * h(i, j);
      s *= beta;
      for (std::size_t i = k + 1; i < n; ++i) h(i, j) -= s * v[i];
    }
    // Right: columns k+1..n-1.
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) s += h(i, j) * v[j];
      s *= beta;
      for (std::size_t j = k + 1; j < n; ++j) h(i, j) -= s * v[j];
    }
    for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
  }
}

// 3-element (or 2-element with z unused) Householder: returns (v1,v2,v3,beta)
// such that (I - beta v v^T) maps (x,y,z) onto a multiple of e1. v[0] = 1.
struct SmallHouse {
  std::array<double, 3> v;
  double beta;
};

SmallHouse make_house3(double x, double y, double z) {
  SmallHouse hh{{1.0, 0.0, 0.0}, 0.0};
  const double sigma = y * y + z * z;
  if (sigma == 0.0 && x >= 0.0) return hh;
  if (sigma == 0.0) {
    hh.beta = -2.0;
    return hh;
  }
  const double mu = std::sqrt(x * x + sigma);
  const double v0 = (x <= 0.0) ? x - mu : -sigma / (x + mu);
  hh.beta = 2.0 * v0 * v0 / (sigma + v0 * v0);
  hh.v = {1.0, y / v0, z / v0};
  return hh;
}

// Eigenvalues of the 2x2 block [[a,b],[c,d]].
void eig2x2(double a, double b, double c, double d,
            std::vector<std::complex<double>>& out) {
  const double tr2 = 0.5 * (a + d);
  const double det = a * d - b * c;
  const double disc = tr2 * tr2 - det;
  if (disc >= 0.0) {
    const double root = std::sqrt(disc);
    // Larger-magnitude root first, the other via det for accuracy.
    const double l1 = (tr2 >= 0.0) ? tr2 + root : tr2 - root;
    const double l2 = (l1 != 0.0) ? det / l1 : tr2 - std::copysign(root, tr2);
    out.emplace_back(l1, 0.0);
    out.emplace_back(l2, 0.0);
  } else {
    const double im = std::sqrt(-disc);
    out.emplace_back(tr2, im);
    out.emplace_back(tr2, -im);
  }
}

// One Francis double-shift QR sweep on the active block rows/cols lo..hi
// (inclusive, hi - lo >= 2), with the implicit shift pair encoded by its sum
// and product.
void francis_step(DenseMatrix& h, std::size_t lo, std::size_t hi,
                  double shift_sum, double shift_prod) {
  // First column of (H - aI)(H - bI) restricted to the block.
  double x = h(lo, lo) * h(lo, lo) + h(lo, lo + 1) * h(lo + 1, lo) -
             shift_sum * h(lo, lo) + shift_prod;
  double y = h(lo + 1, lo) * (h(lo, lo) + h(lo + 1, lo + 1) - shift_sum);
  double z = h(lo + 2, lo + 1) * h(lo + 1, lo);

  for (std::size_t k = lo; k + 2 <= hi; ++k) {
    const SmallHouse hh = make_house3(x, y, z);
    const std::size_t q = (k > lo) ? k - 1 : lo;
    if (hh.beta != 0.0) {
      // Left application to rows k..k+2, columns q..hi.
      for (std::size_t j = q; j <= hi; ++j) {
        double s = hh.v[0] * h(k, j) + hh.v[1] * h(k + 1, j) +
                   hh.v[2] * h(k + 2, j);
        s *= hh.beta;
        h(k, j) -= s * hh.v[0];
        h(k + 1, j) -= s * hh.v[1];
        h(k + 2, j) -= s * hh.v[2];
      }
      // Right application to columns k..k+2, rows lo..min(k+3, hi).
      const std::size_t r = std::min(k + 3, hi);
      for (std::size_t i = lo; i <= r; ++i) {
        double s = hh.v[0] * h(i, k) + hh.v[1] * h(i, k + 1) +
                   hh.v[2] * h(i, k + 2);
        s *= hh.beta;
        h(i, k) -= s * hh.v[0];
        h(i, k + 1) -= s * hh.v[1];
        h(i, k + 2) -= s * hh.v[2];
      }
    }
    x = h(k + 1, k);
    y = h(k + 2, k);
    z = (k + 3 <= hi) ? h(k + 3, k) : 0.0;
  }

  // Final 2-element reflector on rows hi-1..hi.
  const SmallHouse hh = make_house3(x, y, 0.0);
  if (hh.beta != 0.0) {
    const std::size_t k = hi - 1;
    for (std::size_t j = k - 1 >= lo ? k - 1 : lo; j <= hi; ++j) {
      double s = hh.v[0] * h(k, j) + hh.v[1] * h(k + 1, j);
      s *= hh.beta;
      h(k, j) -= s * hh.v[0];
      h(k + 1, j) -= s * hh.v[1];
    }
    for (std::size_t i = lo; i <= hi; ++i) {
      double s = hh.v[0] * h(i, k) + hh.v[1] * h(i, k + 1);
      s *= hh.beta;
      h(i, k) -= s * hh.v[0];
      h(i, k + 1) -= s * hh.v[1];
    }
  }
}

}  // namespace

std::vector<std::complex<double>> eig_general(const DenseMatrix& m) {
  if (!m.square()) throw Error("eig_general: matrix not square");
  const std::size_t n = m.rows();
  std::vector<std::complex<double>> eigs;
  if (n == 0) return eigs;
  eigs.reserve(n);

  DenseMatrix h = m;
  hessenberg_reduce(h);

  double anorm = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = (i == 0 ? 0 : i - 1); j < n; ++j)
      anorm += std::fabs(h(i, j));
  if (anorm == 0.0) anorm = 1.0;

  std::size_t hi = n - 1;
  int block_iters = 0;
  long total_iters = 0;
  const long total_cap = 60L * static_cast<long>(n) + 100;

  while (true) {
    // Deflation scan: largest l <= hi with a negligible subdiagonal.
    std::size_t lo = 0;
    for (std::size_t i = hi; i >= 1; --i) {
      double s = std::fabs(h(i - 1, i - 1)) + std::fabs(h(i, i));
      if (s == 0.0) s = anorm;
      if (std::fabs(h(i, i - 1)) <= kEps * s) {
        h(i, i - 1) = 0.0;
        lo = i;
        break;
      }
    }

    if (lo == hi) {
      eigs.emplace_back(h(hi, hi), 0.0);
      if (hi == 0) break;
      --hi;
      block_iters = 0;
    } else if (lo + 1 == hi) {
      eig2x2(h(lo, lo), h(lo, hi), h(hi, lo), h(hi, hi), eigs);
      if (lo == 0) break;
      hi = lo - 1;
      block_iters = 0;
    } else {
      if (block_iters >= 30 || ++total_iters > total_cap)
        throw NoConvergence("eig_general: QR iteration failed to deflate");
      double shift_sum, shift_prod;
      if (block_iters == 10 || block_iters == 20) {
        // Exceptional shifts to break symmetric stalls.
        const double sb =
            std::fabs(h(hi, hi - 1)) + std::fabs(h(hi - 1, hi - 2));
        shift_sum = 1.5 * sb;
        shift_prod = sb * sb;
      } else {
        shift_sum = h(hi - 1, hi - 1) + h(hi, hi);
        shift_prod =
            h(hi - 1, hi - 1) * h(hi, hi) - h(hi - 1, hi) * h(hi, hi - 1);
      }
      francis_step(h, lo, hi, shift_sum, shift_prod);
      ++block_iters;
    }
  }
  return eigs;
}

SymmetricEig eig_symmetric_jacobi(const DenseMatrix& m) {
  if (!m.square()) throw Error("eig_symmetric_jacobi: matrix not square");
  const std::size_t n = m.rows();
  DenseMatrix a = m.symmetrized();
  DenseMatrix v = DenseMatrix::identity(n);

  int sweep = 0;
  bool rotated = n > 1;
  while (rotated) {
    if (++sweep > 100)
      throw NoConvergence("eig_symmetric_jacobi: sweep cap exceeded");
    rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0 ||
            std::fabs(apq) <= kEps * (std::fabs(a(p, p)) + std::fabs(a(q, q))))
          continue;
        rotated = true;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = ((theta >= 0.0) ? 1.0 : -1.0) /
                         (std::fabs(theta) + std::sqrt(1.0 + theta * theta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < n; ++i) {
          const double aip = a(i, p), aiq = a(i, q);
          a(i, p) = c * aip - s * aiq;
          a(i, q) = s * aip + c * aiq;
        }
        for (std::size_t j = 0; j < n; ++j) {
          const double apj = a(p, j), aqj = a(q, j);
          a(p, j) = c * apj - s * aqj;
          a(q, j) = s * apj + c * aqj;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const double vip = v(i, p), viq = v(i, q);
          v(i, p) = c * vip - s * viq;
          v(i, q) = s * vip + c * viq;
        }
      }
    }
  }

  SymmetricEig out;
  out.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.values[i] = a(i, i);
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return out.values[x] < out.values[y];
  });
  std::vector<double> sorted(n);
  out.vectors = DenseMatrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    sorted[j] = out.values[order[j]];
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
  }
  out.values = std::move(sorted);
  return out;
}

double min_eigenvalue_symmetric(const DenseMatrix& m) {
  if (m.rows() == 0) return 0.0;
  return eig_symmetric_jacobi(m).values.front();
}

}  // namespace saddleprec
