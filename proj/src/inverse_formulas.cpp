#include "saddleprec/inverse_formulas.hpp"

#include <cmath>

#include "saddleprec/errors.hpp"
#include "saddleprec/factorizations.hpp"

namespace saddleprec {

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::Direct: return "direct";
    case Provenance::PosDefA: return "posdef-a";
    case Provenance::NullspaceZ: return "nullspace-z";
    case Provenance::NullB2: return "null-b2";
    case Provenance::NullA: return "null-a";
    case Provenance::NullAMult: return "null-a-mult";
    case Provenance::AugShift: return "aug-shift";
  }
  return "direct";
}

DenseMatrix BlockInverse::assemble() const {
  std::size_t dim = 0;
  for (const auto& row : grid) dim += row[0].rows();
  DenseMatrix out(dim, dim);
  std::size_t i0 = 0;
  for (std::size_t bi = 0; bi < grid.size(); ++bi) {
    std::size_t j0 = 0;
    for (std::size_t bj = 0; bj < grid[bi].size(); ++bj) {
      out.set_block(i0, j0, grid[bi][bj]);
      j0 += grid[bi][bj].cols();
    }
    i0 += grid[bi][0].rows();
  }
  return out;
}

double BlockInverse::symmetry_residual() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i)
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const double r =
          (grid[i][j] - grid[j][i].transpose()).frobenius_norm();
      worst = std::max(worst, r);
    }
  return worst;
}

double inverse_residual(const BlockInverse& inv, const DenseMatrix& k) {
  const DenseMatrix prod = inv.assemble() * k;
  return (prod - DenseMatrix::identity(k.rows())).frobenius_norm();
}

BlockInverse inv2_posdef(const DenseMatrix& acal, const DenseMatrix& bcal) {
  SPDFactorization af;
  try {
    af = factor_spd(acal);
  } catch (const NotPositiveDefinite&) {
    throw LeadingBlockNotSPD("inv2_posdef: leading block not SPD");
  } catch (const NotSymmetric&) {
    throw LeadingBlockNotSPD("inv2_posdef: leading block not symmetric");
  }
  const DenseMatrix ainv_bt = af.solve(bcal.transpose());
  const DenseMatrix sb = (bcal * ainv_bt).symmetrized();
  SPDFactorization sf;
  try {
    sf = factor_spd(sb);
  } catch (const NotPositiveDefinite&) {
    throw SchurSingular("inv2_posdef: Schur complement singular (B rank-deficient?)");
  }
  const DenseMatrix sinv = sf.solve(DenseMatrix::identity(sb.rows()));
  const DenseMatrix ainv = af.solve(DenseMatrix::identity(acal.rows()));

  BlockInverse out;
  out.provenance = Provenance::PosDefA;
  out.grid = {{ainv - ainv_bt * sinv * ainv_bt.transpose(), ainv_bt * sinv},
              {sinv * ainv_bt.transpose(), sinv * -1.0}};
  return out;
}

BlockInverse inv2_nullspace(const DenseMatrix& acal, const DenseMatrix& bcal,
                            const NullBasis& z) {
  const DenseMatrix& zb = z.basis;
  const DenseMatrix reduced = (zb.transpose() * acal * zb).symmetrized();
  SPDFactorization rf;
  try {
    rf = factor_spd(reduced);
  } catch (const NotPositiveDefinite&) {
    throw ReducedHessianNotSPD("inv2_nullspace: Z^T A Z not SPD");
  }
  const DenseMatrix vb = zb * rf.solve(zb.transpose());

  const DenseMatrix bbt = (bcal * bcal.transpose()).symmetrized();
  const SPDFactorization bbtf = factor_spd(bbt);
  const DenseMatrix bbt_inv = bbtf.solve(DenseMatrix::identity(bbt.rows()));
  const DenseMatrix eye = DenseMatrix::identity(acal.rows());

  BlockInverse out;
  out.provenance = Provenance::NullspaceZ;
  const DenseMatrix b12 = (eye - vb * acal) * bcal.transpose() * bbt_inv;
  const DenseMatrix b21 = bbt_inv * bcal * (eye - acal * vb);
  const DenseMatrix b22 =
      bbt_inv * bcal * (acal - acal * vb * acal) * bcal.transpose() * bbt_inv *
      -1.0;
  out.grid = {{vb, b12}, {b21, b22}};
  return out;
}

BlockInverse inv3_null_b2(const SaddleProblem& p, const NullBasis& z_b2) {
  const std::size_t n = p.n(), m1 = p.m1(), m2 = p.m2();
  const DenseMatrix& a = p.a;
  const DenseMatrix& b1 = p.b1;
  const DenseMatrix& b2 = p.b2;

  const DenseMatrix& zb = z_b2.basis;
  const DenseMatrix reduced = (zb.transpose() * a * zb).symmetrized();
  SPDFactorization rf;
  try {
    rf = factor_spd(reduced);
  } catch (const NotPositiveDefinite&) {
    throw ReducedHessianNotSPD("inv3_null_b2: Z_B2^T A Z_B2 not SPD");
  }
  const DenseMatrix v = zb * rf.solve(zb.transpose());

  DenseMatrix sv_inv(0, 0);
  if (m1 > 0) {
    const DenseMatrix sv = (b1 * v * b1.transpose()).symmetrized();
    try {
      sv_inv = factor_spd(sv).solve(DenseMatrix::identity(m1));
    } catch (const NotPositiveDefinite&) {
      throw SchurSingular("inv3_null_b2: S_V = B1 V B1^T singular");
    }
  }

  DenseMatrix bbt_inv(0, 0);
  if (m2 > 0)
    bbt_inv = factor_spd((b2 * b2.transpose()).symmetrized())
                  .solve(DenseMatrix::identity(m2));

  const DenseMatrix eye = DenseMatrix::identity(n);
  const DenseMatrix av = a * v;
  const DenseMatrix va = v * a;
  const DenseMatrix b1t = b1.transpose();
  const DenseMatrix b2t = b2.transpose();

  BlockInverse out;
  const DenseMatrix x1 = v - v * b1t * sv_inv * b1 * v;
  const DenseMatrix x2 = sv_inv * b1 * v;
  const DenseMatrix x4 = sv_inv * -1.0;

  if (p.regime == Regime::MinimallyIndependent ||
      p.regime == Regime::MaxRankDeficient) {
    // Simplified grid: trailing blocks vanish, X3 loses its correction terms.
    const DenseMatrix x3 = bbt_inv * b2 * (eye - av);
    const DenseMatrix x13 = (eye - va) * b2t * bbt_inv;
    out.provenance = Provenance::NullB2;
    out.grid = {{x1, v * b1t * sv_inv, x13},
                {x2, x4, DenseMatrix(m1, m2)},
                {x3, DenseMatrix(m2, m1), DenseMatrix(m2, m2)}};
    return out;
  }

  // Full grid, parenthesized as printed.
  const DenseMatrix x3 =
      bbt_inv * b2 *
      (eye - av + av * b1t * sv_inv * b1 * v - b1t * sv_inv * b1 * v);
  const DenseMatrix x5 = bbt_inv * b2 * (eye - av) * b1t * sv_inv;
  const DenseMatrix x6 =
      bbt_inv * b2 *
      (a + b1t * sv_inv * b1 - av * a - av * b1t * sv_inv * b1 -
       b1t * sv_inv * b1 * va + av * b1t * sv_inv * b1 * va) *
      b2t * bbt_inv * -1.0;

  out.provenance = Provenance::NullB2;
  out.grid = {{x1, x2.transpose(), x3.transpose()},
              {x2, x4, x5.transpose()},
              {x3, x5, x6}};
  return out;
}

BlockInverse inv3_null_a(const SaddleProblem& p, const NullBasis& z_a,
                         LeadingForm form) {
  if (p.regime == Regime::General)
    throw Error("inv3_null_a: formula requires minimally independent B");
  const std::size_t n = p.n(), m1 = p.m1(), m2 = p.m2();

  const WeightL wl = build_weight_l(p.b2, z_a);
  const DenseMatrix& za = wl.basis;  // renormalized null matrix
  AugmentedBlock atil;
  try {
    atil = build_augmented(p.a, p.b2, wl.l);
  } catch (const NotPositiveDefinite&) {
    throw BorderedSingular("inv3_null_a: A + B2^T L^{-1} B2 not SPD");
  }

  const DenseMatrix atil_inv = atil.factor.solve(DenseMatrix::identity(n));
  DenseMatrix sb_inv(0, 0);
  if (m1 > 0) {
    const DenseMatrix sb =
        (p.b1 * atil.factor.solve(p.b1.transpose())).symmetrized();
    try {
      sb_inv = factor_spd(sb).solve(DenseMatrix::identity(m1));
    } catch (const NotPositiveDefinite&) {
      throw SchurSingular("inv3_null_a: S_B singular");
    }
  }
  const DenseMatrix b1t = p.b1.transpose();
  const DenseMatrix a_hat =
      m1 > 0 ? atil_inv - atil_inv * b1t * sb_inv * p.b1 * atil_inv : atil_inv;

  DenseMatrix linv_zat(0, 0), za_linv(0, 0);
  if (m2 > 0) {
    linv_zat = wl.l.factor.solve(za.transpose());
    za_linv = linv_zat.transpose();
  }

  DenseMatrix leading;
  if (form == LeadingForm::Additive) {
    leading = m2 > 0 ? a_hat - za * linv_zat : a_hat;
  } else {
    const DenseMatrix eye = DenseMatrix::identity(n);
    const DenseMatrix left =
        m1 > 0 ? eye - atil_inv * b1t * sb_inv * p.b1 : eye;
    const DenseMatrix right =
        m2 > 0 ? eye - p.b2.transpose() * linv_zat : eye;
    leading = left * atil_inv * right;
  }

  BlockInverse out;
  out.provenance =
      form == LeadingForm::Additive ? Provenance::NullA : Provenance::NullAMult;
  out.grid = {{leading, atil_inv * b1t * sb_inv, za_linv},
              {sb_inv * p.b1 * atil_inv, sb_inv * -1.0, DenseMatrix(m1, m2)},
              {linv_zat, DenseMatrix(m2, m1), DenseMatrix(m2, m2)}};
  return out;
}

BlockInverse direct_block_inverse(const SaddleProblem& p) {
  const std::size_t n = p.n(), m1 = p.m1(), m2 = p.m2();
  const DenseMatrix kinv = inverse(assemble_k(p));
  BlockInverse out;
  out.provenance = Provenance::Direct;
  const std::size_t off1 = n, off2 = n + m1;
  out.grid = {{kinv.block(0, 0, n, n), kinv.block(0, off1, n, m1),
               kinv.block(0, off2, n, m2)},
              {kinv.block(off1, 0, m1, n), kinv.block(off1, off1, m1, m1),
               kinv.block(off1, off2, m1, m2)},
              {kinv.block(off2, 0, m2, n), kinv.block(off2, off1, m2, m1),
               kinv.block(off2, off2, m2, m2)}};
  return out;
}

double aug_shift_residual(const SaddleProblem& p, const WeightMatrix& w) {
  const std::size_t n = p.n(), m1 = p.m1(), m2 = p.m2();
  const DenseMatrix k = assemble_k(p);
  const DenseMatrix kinv = inverse(k);

  SaddleProblem aug = p;
  aug.a = build_augmented(p.a, p.b2, w).value;
  const DenseMatrix kw_inv = inverse(assemble_k(aug));

  DenseMatrix shift(n + m1 + m2, n + m1 + m2);
  if (m2 > 0)
    shift.set_block(n + m1, n + m1,
                    w.factor.solve(DenseMatrix::identity(m2)));
  return (kw_inv - (kinv - shift)).frobenius_norm() / kinv.frobenius_norm();
}

ScratchTerms compute_scratch(const SaddleProblem& p, const WeightMatrix& w,
                             double rank_tol) {
  const std::size_t n = p.n(), m1 = p.m1();
  ScratchTerms t;
  const VOperator v = build_v(p.a, p.b2, VMode::NullB2, rank_tol);
  t.v = v.dense();
  t.s_v = p.b1 * t.v * p.b1.transpose();

  const AugmentedBlock atil = build_augmented(p.a, p.b2, w);
  t.a_tilde = atil.value;
  const DenseMatrix atil_inv = atil.factor.solve(DenseMatrix::identity(n));
  t.s_b = p.b1 * atil_inv * p.b1.transpose();
  if (m1 > 0) {
    const DenseMatrix sb_inv = inverse(t.s_b.symmetrized());
    t.a_hat =
        atil_inv - atil_inv * p.b1.transpose() * sb_inv * p.b1 * atil_inv;
  } else {
    t.a_hat = atil_inv;
  }
  t.s_bar = p.b2 * t.a_hat * p.b2.transpose();
  return t;
}

}  // namespace saddleprec
