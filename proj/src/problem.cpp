#include "saddleprec/problem.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "saddleprec/errors.hpp"
#include "saddleprec/factorizations.hpp"
#include "saddleprec/rng.hpp"

namespace saddleprec {

std::string to_string(Regime r) {
  switch (r) {
    case Regime::MaxRankDeficient: return "max-rd";
    case Regime::MinimallyIndependent: return "min-indep";
    case Regime::General: return "general";
  }
  return "general";
}

Regime regime_from_string(const std::string& s) {
  if (s == "max-rd") return Regime::MaxRankDeficient;
  if (s == "min-indep") return Regime::MinimallyIndependent;
  if (s == "general") return Regime::General;
  throw Error("unknown regime: " + s);
}

DenseMatrix SaddleProblem::b_stacked() const {
  DenseMatrix b(m1() + m2(), n());
  b.set_block(0, 0, b1);
  b.set_block(m1(), 0, b2);
  return b;
}

Vector RhsVector::stacked() const {
  Vector v;
  v.reserve(f.size() + g1.size() + g2.size());
  v.insert(v.end(), f.begin(), f.end());
  v.insert(v.end(), g1.begin(), g1.end());
  v.insert(v.end(), g2.begin(), g2.end());
  return v;
}

RhsVector RhsVector::split(const Vector& v, std::size_t n, std::size_t m1,
                           std::size_t m2) {
  RhsVector r;
  r.f.assign(v.begin(), v.begin() + n);
  r.g1.assign(v.begin() + n, v.begin() + n + m1);
  r.g2.assign(v.begin() + n + m1, v.begin() + n + m1 + m2);
  return r;
}

namespace {

// Random orthogonal factor: QR of a standard-normal draw with the sign
// convention R_ii > 0, which makes Q unique and the draw reproducible.
DenseMatrix random_orthogonal(Rng& rng, std::size_t n) {
  QRFactorization f = qr_householder(rng.normal_matrix(n, n));
  DenseMatrix q = std::move(f.q);
  for (std::size_t j = 0; j < n; ++j) {
    if (f.r(j, j) < 0.0)
      for (std::size_t i = 0; i < n; ++i) q(i, j) = -q(i, j);
  }
  return q;
}

struct Draw {
  DenseMatrix a;
  DenseMatrix b1;
  DenseMatrix b2;
  DenseMatrix z_a;  // exact kernel of the constructed A (n x m2)
};

Draw draw_problem(Rng& rng, std::size_t n, std::size_t m1, std::size_t m2,
                  Regime regime, const GeneratorOptions& opt) {
  Draw d;
  const std::size_t r = n - m2;  // rank of A

  const DenseMatrix q = random_orthogonal(rng, n);

  // Positive spectrum spread over cond_a: endpoints pinned, interior
  // log-uniform.
  Vector spec(r, 1.0);
  if (r >= 2) {
    spec[r - 1] = 1.0 / opt.cond_a;
    for (std::size_t i = 1; i + 1 < r; ++i)
      spec[i] = std::pow(opt.cond_a, -rng.uniform());
  }
  DenseMatrix qd(n, r);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < r; ++j) qd(i, j) = q(i, j) * spec[j];
  DenseMatrix q1t(r, n);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < n; ++j) q1t(i, j) = q(j, i);
  d.a = (qd * q1t).symmetrized();

  d.z_a = DenseMatrix(n, m2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m2; ++j) d.z_a(i, j) = q(i, r + j);

  // B2 = R Z_A^T + S (I - Z_A Z_A^T): B2 Z_A = R invertible by construction.
  DenseMatrix rmat(m2, m2);
  for (int tries = 0; tries < 20; ++tries) {
    rmat = rng.normal_matrix(m2, m2);
    if (m2 == 0 || cond2(rmat) < 1e6) break;
  }
  const DenseMatrix s = rng.normal_matrix(m2, n);
  const DenseMatrix zat = d.z_a.transpose();
  DenseMatrix proj_out = DenseMatrix::identity(n) - d.z_a * zat;
  d.b2 = rmat * zat + s * proj_out;

  if (regime == Regime::MinimallyIndependent) {
    d.b1 = rng.normal_matrix(m1, n) * d.a;
  } else if (regime == Regime::General) {
    d.b1 = rng.normal_matrix(m1, n);
  } else {
    d.b1 = DenseMatrix(0, n);
  }
  return d;
}

bool draw_acceptable(const Draw& d, std::size_t m1, std::size_t m2,
                     Regime regime, const GeneratorOptions& opt) {
  if (m2 > 0 && cond2(d.b2 * d.z_a) > 1e8) return false;
  if (nullspace(d.a, opt.rank_tol).dim() != m2) return false;
  if (regime == Regime::General && m1 > 0) {
    // Rows of B1 must genuinely leave the row space of A.
    const double proj = (d.b1 * d.z_a).frobenius_norm();
    if (proj <= 1e-6 * d.b1.frobenius_norm()) return false;
  }
  SaddleProblem tmp;
  tmp.a = d.a;
  tmp.b1 = d.b1;
  tmp.b2 = d.b2;
  const DenseMatrix k = assemble_k(tmp);
  if (k.rows() == 0) return false;
  const auto sv = singular_values(k);
  return sv.back() > 1e-8 * sv.front();
}

}  // namespace

SaddleProblem generate(std::size_t n, std::size_t m1, std::size_t m2,
                       Regime regime, std::uint64_t seed,
                       const GeneratorOptions& opt) {
  if (m1 + m2 > n) throw Error("generate: m1 + m2 must not exceed n");
  if (regime == Regime::MaxRankDeficient && m1 != 0)
    throw Error("generate: max-rd regime requires m1 = 0");
  if (opt.cond_a < 1.0) throw Error("generate: cond_A must be >= 1");

  for (int attempt = 0; attempt < opt.max_retries; ++attempt) {
    Rng rng(seed ^ (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(attempt)));
    Draw d = draw_problem(rng, n, m1, m2, regime, opt);
    if (!draw_acceptable(d, m1, m2, regime, opt)) continue;
    SaddleProblem p;
    p.a = std::move(d.a);
    p.b1 = std::move(d.b1);
    p.b2 = std::move(d.b2);
    p.regime = regime;
    p.seed = seed;
    return p;
  }
  throw DegenerateDraw("generate: no acceptable draw in " +
                       std::to_string(opt.max_retries) + " attempts");
}

RhsVector random_rhs(const SaddleProblem& p, std::uint64_t seed) {
  Rng rng(seed ^ 0xA5A5A5A55A5A5A5AULL);
  RhsVector r;
  r.f = rng.normal_vector(p.n());
  r.g1 = rng.normal_vector(p.m1());
  r.g2 = rng.normal_vector(p.m2());
  return r;
}

DenseMatrix assemble_k(const SaddleProblem& p) {
  const std::size_t n = p.n(), m1 = p.m1(), m2 = p.m2();
  DenseMatrix k(n + m1 + m2, n + m1 + m2);
  k.set_block(0, 0, p.a);
  k.set_block(n, 0, p.b1);
  k.set_block(0, n, p.b1.transpose());
  k.set_block(n + m1, 0, p.b2);
  k.set_block(0, n + m1, p.b2.transpose());
  return k;
}

DenseMatrix assemble_bordered(const DenseMatrix& a, const DenseMatrix& b2) {
  const std::size_t n = a.rows(), m2 = b2.rows();
  DenseMatrix k(n + m2, n + m2);
  k.set_block(0, 0, a);
  k.set_block(n, 0, b2);
  k.set_block(0, n, b2.transpose());
  return k;
}

SplitResult split_b(const DenseMatrix& a, const DenseMatrix& b, double tol) {
  const std::size_t m = b.rows();
  const NullBasis za = nullspace(a, tol);
  const std::size_t m2 = za.dim();

  if (m2 > m)
    throw NotSplittable("split_b: nullity(A) exceeds the row count of B");

  SplitResult out;
  if (m2 == 0) {
    out.b1 = b;
    out.b2 = DenseMatrix(0, b.cols());
    out.permutation.resize(m);
    std::iota(out.permutation.begin(), out.permutation.end(), 0);
    return out;
  }

  // Column j of Z_A^T B^T is the projection of row j of B onto ker(A);
  // pivoted QR picks a maximally independent subset.
  const PivotedQR pqr = qr_col_pivoted(za.basis.transpose() * b.transpose());
  if (pqr.rank(tol) < m2)
    throw NotSplittable(
        "split_b: fewer than nullity(A) rows of B project independently onto "
        "ker(A); K is singular");

  std::vector<std::size_t> selected(pqr.perm.begin(), pqr.perm.begin() + m2);
  std::sort(selected.begin(), selected.end());
  std::vector<bool> in_b2(m, false);
  for (std::size_t idx : selected) in_b2[idx] = true;

  out.b1 = DenseMatrix(m - m2, b.cols());
  out.b2 = DenseMatrix(m2, b.cols());
  out.permutation.reserve(m);
  std::size_t r1 = 0, r2 = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (!in_b2[i]) {
      for (std::size_t j = 0; j < b.cols(); ++j) out.b1(r1, j) = b(i, j);
      out.permutation.push_back(i);
      ++r1;
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (in_b2[i]) {
      for (std::size_t j = 0; j < b.cols(); ++j) out.b2(r2, j) = b(i, j);
      out.permutation.push_back(i);
      ++r2;
    }
  }
  return out;
}

}  // namespace saddleprec
