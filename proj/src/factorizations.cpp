#include "saddleprec/factorizations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "saddleprec/errors.hpp"

namespace saddleprec {

namespace {
constexpr double kEps = std::numeric_limits<double>::epsilon();

// b - M x accumulated in extended precision, for one refinement step.
Vector residual_extended(const DenseMatrix& m, const Vector& x,
                         const Vector& b) {
  const std::size_t n = m.rows();
  Vector r(n);
  for (std::size_t i = 0; i < n; ++i) {
    long double s = static_cast<long double>(b[i]);
    const double* row = m.row_ptr(i);
    for (std::size_t j = 0; j < n; ++j)
      s -= static_cast<long double>(row[j]) * x[j];
    r[i] = static_cast<double>(s);
  }
  return r;
}
}  // namespace

// ---------------------------------------------------------------------------
// Cholesky

SPDFactorization factor_spd(const DenseMatrix& m) {
  if (!m.square()) throw NotSymmetric("factor_spd: matrix not square");
  const std::size_t n = m.rows();
  const double scale = m.frobenius_norm();
  if (n > 0 && m.symmetry_error() > 1e-12 * std::max(scale, 1e-300))
    throw NotSymmetric("factor_spd: matrix not symmetric within 1e-12");

  DenseMatrix a = m.symmetrized();
  double max_diag = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    max_diag = std::max(max_diag, std::fabs(a(i, i)));

  DenseMatrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = a(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (d <= 0.0 || d <= n * kEps * max_diag)
      throw NotPositiveDefinite("factor_spd: nonpositive pivot at column " +
                                std::to_string(j));
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / ljj;
    }
  }
  SPDFactorization f;
  f.l_ = std::move(l);
  f.a_ = std::move(a);
  return f;
}

Vector SPDFactorization::solve_nofinish(const Vector& b) const {
  const std::size_t n = dim();
  Vector y(b);
  for (std::size_t i = 0; i < n; ++i) {
    double s = y[i];
    for (std::size_t k = 0; k < i; ++k) s -= l_(i, k) * y[k];
    y[i] = s / l_(i, i);
  }
  for (std::size_t ii = n; ii-- > 0;) {
    double s = y[ii];
    for (std::size_t k = ii + 1; k < n; ++k) s -= l_(k, ii) * y[k];
    y[ii] = s / l_(ii, ii);
  }
  return y;
}

Vector SPDFactorization::solve(const Vector& b) const {
  Vector x = solve_nofinish(b);
  const Vector corr = solve_nofinish(residual_extended(a_, x, b));
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += corr[i];
  return x;
}

DenseMatrix SPDFactorization::solve(const DenseMatrix& b) const {
  DenseMatrix x(b.rows(), b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) x.set_col(j, solve(b.col(j)));
  return x;
}

// ---------------------------------------------------------------------------
// LU with partial pivoting

LUFactorization factor_lu(const DenseMatrix& m) {
  if (!m.square()) throw SingularMatrix("factor_lu: matrix not square");
  const std::size_t n = m.rows();
  LUFactorization f;
  f.lu_ = m;
  f.a_ = m;
  f.piv_.resize(n);
  DenseMatrix& a = f.lu_;
  const double tiny = n * kEps * std::max(m.max_abs(), 1e-300);

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::fabs(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::fabs(a(i, k)) > best) {
        best = std::fabs(a(i, k));
        p = i;
      }
    }
    if (best <= tiny)
      throw SingularMatrix("factor_lu: singular to working precision");
    f.piv_[k] = p;
    if (p != k)
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
    const double akk = a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double lik = a(i, k) / akk;
      a(i, k) = lik;
      if (lik != 0.0)
        for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= lik * a(k, j);
    }
  }
  return f;
}

Vector LUFactorization::solve_nofinish(const Vector& b) const {
  const std::size_t n = dim();
  Vector x(b);
  // All row interchanges first (the stored multipliers are in final row
  // order), then the triangular sweeps.
  for (std::size_t k = 0; k < n; ++k) std::swap(x[k], x[piv_[k]]);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = k + 1; i < n; ++i) x[i] -= lu_(i, k) * x[k];
  for (std::size_t ii = n; ii-- > 0;) {
    double s = x[ii];
    for (std::size_t k = ii + 1; k < n; ++k) s -= lu_(ii, k) * x[k];
    x[ii] = s / lu_(ii, ii);
  }
  return x;
}

Vector LUFactorization::solve(const Vector& b) const {
  Vector x = solve_nofinish(b);
  const Vector corr = solve_nofinish(residual_extended(a_, x, b));
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += corr[i];
  return x;
}

DenseMatrix LUFactorization::solve(const DenseMatrix& b) const {
  DenseMatrix x(b.rows(), b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) x.set_col(j, solve(b.col(j)));
  return x;
}

DenseMatrix inverse(const DenseMatrix& m) {
  return factor_lu(m).solve(DenseMatrix::identity(m.rows()));
}

// ---------------------------------------------------------------------------
// Householder QR

namespace {

// Builds the Householder vector for x; returns (beta, v) with v[0] = 1 so
// (I - beta v v^T) x = (+-||x||, 0, ..., 0).
double make_householder(Vector& v) {
  const std::size_t n = v.size();
  double sigma = 0.0;
  for (std::size_t i = 1; i < n; ++i) sigma += v[i] * v[i];
  const double x0 = v[0];
  double beta = 0.0;
  if (sigma == 0.0 && x0 >= 0.0) {
    beta = 0.0;
  } else if (sigma == 0.0) {
    beta = -2.0;  // reflection flips the sign of x0
  } else {
    const double mu = std::sqrt(x0 * x0 + sigma);
    double v0 = (x0 <= 0.0) ? x0 - mu : -sigma / (x0 + mu);
    beta = 2.0 * v0 * v0 / (sigma + v0 * v0);
    for (std::size_t i = 1; i < n; ++i) v[i] /= v0;
  }
  v[0] = 1.0;
  return beta;
}

// Applies (I - beta v v^T) to rows k..m-1 of columns j0..n-1 of a.
void apply_householder_left(DenseMatrix& a, const Vector& v, double beta,
                            std::size_t k, std::size_t j0) {
  if (beta == 0.0) return;
  const std::size_t m = a.rows(), n = a.cols();
  for (std::size_t j = j0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = k; i < m; ++i) s += v[i - k] * a(i, j);
    s *= beta;
    for (std::size_t i = k; i < m; ++i) a(i, j) -= s * v[i - k];
  }
}

}  // namespace

QRFactorization qr_householder(const DenseMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  DenseMatrix r = m;
  DenseMatrix q = DenseMatrix::identity(rows);
  const std::size_t steps = std::min(rows == 0 ? 0 : rows - 1, cols);
  std::vector<Vector> vs;
  std::vector<double> betas;
  vs.reserve(steps);
  for (std::size_t k = 0; k < steps; ++k) {
    Vector v(rows - k);
    for (std::size_t i = k; i < rows; ++i) v[i - k] = r(i, k);
    const double beta = make_householder(v);
    apply_householder_left(r, v, beta, k, k);
    vs.push_back(std::move(v));
    betas.push_back(beta);
  }
  // Accumulate Q by applying reflections to I in reverse.
  for (std::size_t kk = steps; kk-- > 0;)
    apply_householder_left(q, vs[kk], betas[kk], kk, 0);
  // Clean the strictly lower part of R.
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < std::min(i, cols); ++j) r(i, j) = 0.0;
  return {std::move(q), std::move(r)};
}

PivotedQR qr_col_pivoted(const DenseMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  PivotedQR out;
  out.r = m;
  out.perm.resize(cols);
  std::iota(out.perm.begin(), out.perm.end(), 0);
  DenseMatrix& r = out.r;

  Vector colnorm2(cols, 0.0);
  for (std::size_t j = 0; j < cols; ++j) {
    const Vector cj = r.col(j);
    colnorm2[j] = dot(cj, cj);
  }

  const std::size_t steps = std::min(rows, cols);
  for (std::size_t k = 0; k < steps; ++k) {
    // Recompute trailing column norms; desk scale makes the O(n^3) total fine
    // and avoids downdating drift.
    std::size_t best = k;
    double bestn = -1.0;
    for (std::size_t j = k; j < cols; ++j) {
      double s = 0.0;
      for (std::size_t i = k; i < rows; ++i) s += r(i, j) * r(i, j);
      colnorm2[j] = s;
      if (s > bestn) {
        bestn = s;
        best = j;
      }
    }
    if (best != k) {
      for (std::size_t i = 0; i < rows; ++i) std::swap(r(i, k), r(i, best));
      std::swap(colnorm2[k], colnorm2[best]);
      std::swap(out.perm[k], out.perm[best]);
    }
    if (k + 1 < rows) {
      Vector v(rows - k);
      for (std::size_t i = k; i < rows; ++i) v[i - k] = r(i, k);
      const double beta = make_householder(v);
      apply_householder_left(r, v, beta, k, k);
    }
  }
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < std::min(i, cols); ++j) r(i, j) = 0.0;
  return out;
}

std::size_t PivotedQR::rank(double tol_rel) const {
  const std::size_t k = std::min(r.rows(), r.cols());
  if (k == 0) return 0;
  const double r00 = std::fabs(r(0, 0));
  if (r00 == 0.0) return 0;
  std::size_t rank = 0;
  for (std::size_t i = 0; i < k; ++i) {
    if (std::fabs(r(i, i)) > tol_rel * r00)
      ++rank;
    else
      break;
  }
  return rank;
}

}  // namespace saddleprec
