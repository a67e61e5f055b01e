#include "saddleprec/preconditioners.hpp"

#include <cmath>
#include <utility>

#include "saddleprec/errors.hpp"

namespace saddleprec {

std::string to_string(PrecondTag t) {
  switch (t) {
    case PrecondTag::P2D: return "p2d";
    case PrecondTag::P3D: return "p3d";
    case PrecondTag::P3T: return "p3t";
    case PrecondTag::Identity: return "identity";
  }
  return "identity";
}

WeightMatrix WeightMatrix::identity(WeightKind kind, std::size_t m) {
  return from_dense(kind, DenseMatrix::identity(m));
}

WeightMatrix WeightMatrix::from_dense(WeightKind kind, DenseMatrix value) {
  WeightMatrix w;
  w.kind = kind;
  w.factor = factor_spd(value);
  w.value = std::move(value);
  return w;
}

AugmentedBlock build_augmented(const DenseMatrix& a, const DenseMatrix& aug,
                               const WeightMatrix& w) {
  AugmentedBlock out;
  if (aug.rows() == 0) {
    out.value = a.symmetrized();
  } else {
    // A + aug^T (W^{-1} aug), symmetrized to scrub solve roundoff.
    const DenseMatrix winv_aug = w.factor.solve(aug);
    out.value = (a + aug.transpose() * winv_aug).symmetrized();
  }
  out.factor = factor_spd(out.value);
  return out;
}

WeightL build_weight_l(const DenseMatrix& b2, const NullBasis& z_a) {
  const DenseMatrix bza = b2 * z_a.basis;
  if (bza.rows() > 0 && cond2(bza) > 1e12)
    throw BorderedSingular("build_weight_l: B2 Z_A is numerically singular");
  WeightL out;
  out.basis = z_a.basis * bza.transpose();  // Z_A' = Z_A (B2 Z_A)^T
  DenseMatrix l = (bza * bza.transpose()).symmetrized();
  out.l = WeightMatrix::from_dense(WeightKind::L, std::move(l));
  return out;
}

// ---------------------------------------------------------------------------
// V operator

VOperator build_v(const DenseMatrix& a, const DenseMatrix& b2, VMode mode,
                  double rank_tol) {
  VOperator v;
  v.mode_ = mode;
  v.dim_ = a.rows();
  if (mode == VMode::NullB2) {
    const NullBasis zb2 = nullspace(b2.rows() == 0
                                        ? DenseMatrix(0, a.rows())
                                        : b2,
                                    rank_tol);
    v.zb2_ = zb2.basis;
    const DenseMatrix h =
        (v.zb2_.transpose() * a * v.zb2_).symmetrized();
    try {
      v.reduced_ = factor_spd(h);
    } catch (const NotPositiveDefinite&) {
      throw ReducedHessianNotSPD("build_v: Z_B2^T A Z_B2 not SPD");
    }
  } else {
    const NullBasis za = nullspace(a, rank_tol);
    v.weight_l_ = build_weight_l(b2, za);
    try {
      v.atilde_ = build_augmented(a, b2, v.weight_l_.l).factor;
    } catch (const NotPositiveDefinite&) {
      throw ReducedHessianNotSPD("build_v: augmented block not SPD");
    }
    v.b2_ = b2;
  }
  return v;
}

Vector VOperator::apply(const Vector& x) const {
  if (mode_ == VMode::NullB2) {
    Vector t(zb2_.cols(), 0.0);
    for (std::size_t j = 0; j < zb2_.cols(); ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < zb2_.rows(); ++i) s += zb2_(i, j) * x[i];
      t[j] = s;
    }
    t = reduced_.solve(t);
    return zb2_ * t;
  }
  // Atilde^{-1} (x - B2^T L^{-1} Z_A'^T x)
  Vector rhs = x;
  if (b2_.rows() > 0) {
    Vector zx(weight_l_.basis.cols(), 0.0);
    for (std::size_t j = 0; j < weight_l_.basis.cols(); ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < weight_l_.basis.rows(); ++i)
        s += weight_l_.basis(i, j) * x[i];
      zx[j] = s;
    }
    const Vector linv = weight_l_.l.factor.solve(zx);
    const DenseMatrix b2t = b2_.transpose();
    axpy(-1.0, b2t * linv, rhs);
  }
  return atilde_.solve(rhs);
}

DenseMatrix VOperator::dense() const {
  if (mode_ == VMode::NullB2) {
    const DenseMatrix inner = reduced_.solve(zb2_.transpose());
    return zb2_ * inner;
  }
  const std::size_t n = dim_;
  DenseMatrix rhs = DenseMatrix::identity(n);
  if (b2_.rows() > 0) {
    const DenseMatrix linv_zt =
        weight_l_.l.factor.solve(weight_l_.basis.transpose());
    rhs -= b2_.transpose() * linv_zt;
  }
  return atilde_.solve(rhs);
}

// ---------------------------------------------------------------------------
// Preconditioners

DenseMatrix Preconditioner::apply_inverse(const DenseMatrix& m) const {
  DenseMatrix out(m.rows(), m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j)
    out.set_col(j, apply_inverse(m.col(j)));
  return out;
}

DenseMatrix Preconditioner::assemble_inverse() const {
  return apply_inverse(DenseMatrix::identity(dim_));
}

namespace {

class P2DPreconditioner final : public Preconditioner {
public:
  P2DPreconditioner(AugmentedBlock aug, WeightMatrix wb, std::size_t n,
                    bool ideal)
      : aug_(std::move(aug)), wb_(std::move(wb)), n_(n) {
    tag_ = PrecondTag::P2D;
    dim_ = n + wb_.value.rows();
    spd_ = true;
    ideal_ = ideal;
  }

  Vector apply_inverse(const Vector& v) const override {
    Vector x(v.begin(), v.begin() + n_);
    Vector y(v.begin() + n_, v.end());
    x = aug_.factor.solve(x);
    y = wb_.factor.solve(y);
    x.insert(x.end(), y.begin(), y.end());
    return x;
  }

  DenseMatrix assemble() const override {
    DenseMatrix p(dim_, dim_);
    p.set_block(0, 0, aug_.value);
    p.set_block(n_, n_, wb_.value);
    return p;
  }

private:
  AugmentedBlock aug_;
  WeightMatrix wb_;
  std::size_t n_;
};

class P3DPreconditioner final : public Preconditioner {
public:
  P3DPreconditioner(AugmentedBlock aug, DenseMatrix sb,
                    SPDFactorization sb_factor, WeightMatrix w, double scale,
                    std::size_t n, std::size_t m1, bool ideal)
      : aug_(std::move(aug)),
        sb_(std::move(sb)),
        sb_factor_(std::move(sb_factor)),
        w_(std::move(w)),
        scale_(scale),
        n_(n),
        m1_(m1) {
    tag_ = PrecondTag::P3D;
    dim_ = n + m1 + w_.value.rows();
    spd_ = true;
    ideal_ = ideal;
  }

  Vector apply_inverse(const Vector& v) const override {
    Vector x(v.begin(), v.begin() + n_);
    Vector y1(v.begin() + n_, v.begin() + n_ + m1_);
    Vector y2(v.begin() + n_ + m1_, v.end());
    x = aug_.factor.solve(x);
    if (m1_ > 0) {
      y1 = sb_factor_.solve(y1);
      scale(y1, 1.0 / scale_);
    }
    y2 = w_.factor.solve(y2);
    x.insert(x.end(), y1.begin(), y1.end());
    x.insert(x.end(), y2.begin(), y2.end());
    return x;
  }

  DenseMatrix assemble() const override {
    DenseMatrix p(dim_, dim_);
    p.set_block(0, 0, aug_.value);
    p.set_block(n_, n_, sb_ * scale_);
    p.set_block(n_ + m1_, n_ + m1_, w_.value);
    return p;
  }

private:
  AugmentedBlock aug_;
  DenseMatrix sb_;  // B1 Atilde^{-1} B1^T, unscaled
  SPDFactorization sb_factor_;
  WeightMatrix w_;
  double scale_;
  std::size_t n_, m1_;
};

class P3TPreconditioner final : public Preconditioner {
public:
  P3TPreconditioner(const VOperator& v, DenseMatrix corner13,
                    DenseMatrix corner31, DenseMatrix sv,
                    SPDFactorization sv_factor, std::size_t n, std::size_t m1,
                    std::size_t m2)
      : v_(v),
        corner13_(std::move(corner13)),
        corner31_(std::move(corner31)),
        sv_(std::move(sv)),
        sv_factor_(std::move(sv_factor)),
        n_(n),
        m1_(m1),
        m2_(m2) {
    tag_ = PrecondTag::P3T;
    dim_ = n + m1 + m2;
    spd_ = false;
    ideal_ = true;
  }

  Vector apply_inverse(const Vector& v) const override {
    const Vector x(v.begin(), v.begin() + n_);
    Vector y1(v.begin() + n_, v.begin() + n_ + m1_);
    const Vector y2(v.begin() + n_ + m1_, v.end());

    Vector out_x = v_.apply(x);
    if (m2_ > 0) axpy(1.0, corner13_ * y2, out_x);
    if (m1_ > 0) y1 = sv_factor_.solve(y1);
    Vector out_y2 = m2_ > 0 ? corner31_ * x : Vector{};

    out_x.insert(out_x.end(), y1.begin(), y1.end());
    out_x.insert(out_x.end(), out_y2.begin(), out_y2.end());
    return out_x;
  }

  DenseMatrix assemble() const override {
    throw Error("P3T is represented by its inverse; use assemble_inverse()");
  }

private:
  VOperator v_;
  DenseMatrix corner13_;  // n x m2
  DenseMatrix corner31_;  // m2 x n
  DenseMatrix sv_;        // B1 V B1^T
  SPDFactorization sv_factor_;
  std::size_t n_, m1_, m2_;
};

class IdentityPreconditioner final : public Preconditioner {
public:
  explicit IdentityPreconditioner(std::size_t dim) {
    tag_ = PrecondTag::Identity;
    dim_ = dim;
    spd_ = true;
    ideal_ = false;
  }
  Vector apply_inverse(const Vector& v) const override { return v; }
  DenseMatrix assemble() const override {
    return DenseMatrix::identity(dim_);
  }
};

}  // namespace

std::unique_ptr<Preconditioner> build_p2d(const SaddleProblem& p,
                                          const WeightMatrix& wb) {
  const DenseMatrix b = p.b_stacked();
  if (wb.value.rows() != b.rows())
    throw Error("build_p2d: weight dimension mismatch");
  AugmentedBlock aug;
  try {
    aug = build_augmented(p.a, b, wb);
  } catch (const NotPositiveDefinite&) {
    throw AugmentNotSPD(
        "build_p2d: A + B^T WB^{-1} B not SPD; ker(A) and ker(B) intersect");
  }
  const bool ideal = p.regime == Regime::MaxRankDeficient;
  return std::make_unique<P2DPreconditioner>(std::move(aug), wb, p.n(), ideal);
}

std::unique_ptr<Preconditioner> build_p3d(const SaddleProblem& p,
                                          const WeightMatrix& w,
                                          double schur_scale) {
  if (w.value.rows() != p.m2())
    throw Error("build_p3d: weight dimension mismatch");
  AugmentedBlock aug;
  try {
    aug = build_augmented(p.a, p.b2, w);
  } catch (const NotPositiveDefinite&) {
    throw AugmentNotSPD("build_p3d: A + B2^T W^{-1} B2 not SPD");
  }
  DenseMatrix sb(0, 0);
  SPDFactorization sb_factor;
  if (p.m1() > 0) {
    sb = (p.b1 * aug.factor.solve(p.b1.transpose())).symmetrized();
    try {
      sb_factor = factor_spd(sb);
    } catch (const NotPositiveDefinite&) {
      throw SchurSingular("build_p3d: B1 Atilde^{-1} B1^T numerically singular");
    }
  }
  const bool ideal = (p.regime != Regime::General) && schur_scale == 0.5;
  return std::make_unique<P3DPreconditioner>(std::move(aug), std::move(sb),
                                             std::move(sb_factor), w,
                                             schur_scale, p.n(), p.m1(), ideal);
}

std::unique_ptr<Preconditioner> build_p3t(const SaddleProblem& p,
                                          const WeightL& wl, const VOperator& v,
                                          CornerForm corner) {
  const std::size_t n = p.n(), m1 = p.m1(), m2 = p.m2();
  DenseMatrix sv(0, 0);
  SPDFactorization sv_factor;
  if (m1 > 0) {
    const DenseMatrix vb1t = v.dense() * p.b1.transpose();
    sv = (p.b1 * vb1t).symmetrized();
    try {
      sv_factor = factor_spd(sv);
    } catch (const NotPositiveDefinite&) {
      throw MiddleSchurSingular(
          "build_p3t: B1 V B1^T not SPD; K is singular or the split is wrong");
    }
  }

  DenseMatrix corner13(n, m2), corner31(m2, n);
  if (m2 > 0) {
    if (corner == CornerForm::NullA) {
      corner13 = wl.l.factor.solve(wl.basis.transpose()).transpose();
      corner31 = wl.l.factor.solve(wl.basis.transpose());
    } else {
      // (I - V A) B2^T (B2 B2^T)^{-1} and (B2 B2^T)^{-1} B2 (I - A V)
      const DenseMatrix vd = v.dense();
      const DenseMatrix bbt = (p.b2 * p.b2.transpose()).symmetrized();
      SPDFactorization bbt_factor;
      try {
        bbt_factor = factor_spd(bbt);
      } catch (const NotPositiveDefinite&) {
        throw BorderedSingular("build_p3t: B2 B2^T not SPD");
      }
      const DenseMatrix eye = DenseMatrix::identity(n);
      corner13 = (eye - vd * p.a) * p.b2.transpose();
      corner13 = bbt_factor.solve(corner13.transpose()).transpose();
      corner31 = bbt_factor.solve(p.b2 * (eye - p.a * vd));
    }
  }
  return std::make_unique<P3TPreconditioner>(v, std::move(corner13),
                                             std::move(corner31), std::move(sv),
                                             std::move(sv_factor), n, m1, m2);
}

std::unique_ptr<Preconditioner> build_identity(std::size_t dim) {
  return std::make_unique<IdentityPreconditioner>(dim);
}

DenseMatrix assemble_p3t_inverse_explicit(const SaddleProblem& p,
                                          const WeightL& wl, const VOperator& v,
                                          CornerForm corner) {
  const std::size_t n = p.n(), m1 = p.m1(), m2 = p.m2();
  DenseMatrix out(n + m1 + m2, n + m1 + m2);
  out.set_block(0, 0, v.dense());
  if (m1 > 0) out.set_block(n, n, inverse(p.b1 * v.dense() * p.b1.transpose()));
  if (m2 > 0) {
    DenseMatrix c13, c31;
    if (corner == CornerForm::NullA) {
      const DenseMatrix linv = inverse(wl.l.value);
      c13 = wl.basis * linv;
      c31 = linv * wl.basis.transpose();
    } else {
      const DenseMatrix vd = v.dense();
      const DenseMatrix bbt_inv = inverse(p.b2 * p.b2.transpose());
      const DenseMatrix eye = DenseMatrix::identity(n);
      c13 = (eye - vd * p.a) * p.b2.transpose() * bbt_inv;
      c31 = bbt_inv * p.b2 * (eye - p.a * vd);
    }
    out.set_block(0, n + m1, c13);
    out.set_block(n + m1, 0, c31);
  }
  return out;
}

double schur_identity_residual(const SaddleProblem& p, const DenseMatrix& wb) {
  const DenseMatrix b = p.b_stacked();
  const LUFactorization wlu = factor_lu(wb);
  const DenseMatrix atilde = p.a + b.transpose() * wlu.solve(b);
  const LUFactorization alu = factor_lu(atilde);
  const DenseMatrix schur = b * alu.solve(b.transpose());
  return (schur - wb).frobenius_norm() / wb.frobenius_norm();
}

}  // namespace saddleprec
