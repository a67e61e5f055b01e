#include "saddleprec/krylov.hpp"

#include <cmath>
#include <fstream>
#include <limits>

#include "saddleprec/errors.hpp"
#include "saddleprec/matrix_market.hpp"

namespace saddleprec {

namespace {
double true_residual(const DenseMatrix& k, const Vector& x, const Vector& b) {
  Vector r = b;
  axpy(-1.0, k * x, r);
  return norm2(r);
}
}  // namespace

SolveResult minres(const DenseMatrix& k, const Preconditioner& p,
                   const Vector& rhs, double tol, std::size_t maxit) {
  if (!p.is_spd())
    throw PreconditionerNotSPD("minres: preconditioner must be SPD");
  const std::size_t n = rhs.size();

  SolveResult res;
  res.log.solver = "MINRES";
  res.log.preconditioner = to_string(p.tag());
  res.x.assign(n, 0.0);

  const double bnorm = norm2(rhs);
  if (bnorm == 0.0) {
    res.log.converged = true;
    res.log.precond_residuals.push_back(0.0);
    res.log.true_residuals.push_back(0.0);
    return res;
  }

  // Paige-Saunders MINRES with preconditioned Lanczos.
  Vector r1 = rhs;
  Vector y = p.apply_inverse(r1);
  double beta1 = dot(rhs, y);
  if (beta1 < 0.0)
    throw PreconditionerNotSPD("minres: b^T P^{-1} b < 0");
  if (beta1 == 0.0) {
    res.log.converged = true;
    res.log.precond_residuals.push_back(0.0);
    res.log.true_residuals.push_back(true_residual(k, res.x, rhs));
    return res;
  }
  beta1 = std::sqrt(beta1);

  double oldb = 0.0, beta = beta1, dbar = 0.0, epsln = 0.0;
  double phibar = beta1, cs = -1.0, sn = 0.0;
  Vector w(n, 0.0), w2(n, 0.0);
  Vector r2 = r1;

  res.log.precond_residuals.push_back(phibar);
  res.log.true_residuals.push_back(bnorm);

  for (std::size_t itn = 1; itn <= maxit; ++itn) {
    const double s = 1.0 / beta;
    Vector v = y;
    scale(v, s);

    y = k * v;
    if (itn >= 2) axpy(-beta / oldb, r1, y);
    const double alfa = dot(v, y);
    axpy(-alfa / beta, r2, y);
    r1 = r2;
    r2 = y;
    y = p.apply_inverse(r2);
    oldb = beta;
    beta = dot(r2, y);
    if (beta < 0.0)
      throw PreconditionerNotSPD("minres: preconditioned inner product broke down");
    beta = std::sqrt(beta);

    // Plane rotation update of the tridiagonal QR.
    const double oldeps = epsln;
    const double delta = cs * dbar + sn * alfa;
    const double gbar = sn * dbar - cs * alfa;
    epsln = sn * beta;
    dbar = -cs * beta;
    double gamma = std::sqrt(gbar * gbar + beta * beta);
    gamma = std::max(gamma, std::numeric_limits<double>::epsilon());
    cs = gbar / gamma;
    sn = beta / gamma;
    const double phi = cs * phibar;
    phibar = sn * phibar;

    Vector w1 = w2;
    w2 = w;
    w = v;
    axpy(-oldeps, w1, w);
    axpy(-delta, w2, w);
    scale(w, 1.0 / gamma);
    axpy(phi, w, res.x);

    const double tres = true_residual(k, res.x, rhs);
    res.log.precond_residuals.push_back(phibar);
    res.log.true_residuals.push_back(tres);
    res.log.iterations = itn;
    if (tres <= tol * bnorm) {
      res.log.converged = true;
      break;
    }
  }
  return res;
}

SolveResult gmres(const DenseMatrix& k, const Preconditioner& p,
                  const Vector& rhs, double tol, std::size_t maxit) {
  const std::size_t n = rhs.size();
  SolveResult res;
  res.log.solver = "GMRES";
  res.log.preconditioner = to_string(p.tag());
  res.x.assign(n, 0.0);

  const double bnorm = norm2(rhs);
  if (bnorm == 0.0) {
    res.log.converged = true;
    res.log.precond_residuals.push_back(0.0);
    res.log.true_residuals.push_back(0.0);
    return res;
  }

  const std::size_t m = std::min(maxit, n);
  Vector r0 = p.apply_inverse(rhs);
  const double beta = norm2(r0);
  if (beta == 0.0)
    throw Stagnation("gmres: preconditioned rhs is zero for nonzero rhs");

  std::vector<Vector> basis;
  basis.reserve(m + 1);
  scale(r0, 1.0 / beta);
  basis.push_back(std::move(r0));

  // Hessenberg columns, Givens rotations, transformed rhs.
  std::vector<Vector> hcols;
  std::vector<double> gc, gs;
  Vector g(1, beta);

  res.log.precond_residuals.push_back(beta);
  res.log.true_residuals.push_back(bnorm);

  auto form_solution = [&](std::size_t j) {
    // Back-substitute R y = g over the first j columns.
    Vector yv(j, 0.0);
    for (std::size_t ii = j; ii-- > 0;) {
      double s = g[ii];
      for (std::size_t kk = ii + 1; kk < j; ++kk) s -= hcols[kk][ii] * yv[kk];
      yv[ii] = s / hcols[ii][ii];
    }
    Vector x(n, 0.0);
    for (std::size_t kk = 0; kk < j; ++kk) axpy(yv[kk], basis[kk], x);
    return x;
  };

  for (std::size_t j = 0; j < m; ++j) {
    Vector wv = p.apply_inverse(k * basis[j]);
    Vector h(j + 2, 0.0);
    for (std::size_t i = 0; i <= j; ++i) {
      h[i] = dot(basis[i], wv);
      axpy(-h[i], basis[i], wv);
    }
    // One reorthogonalization pass keeps the basis orthogonal at tight
    // tolerances.
    for (std::size_t i = 0; i <= j; ++i) {
      const double c = dot(basis[i], wv);
      h[i] += c;
      axpy(-c, basis[i], wv);
    }
    h[j + 1] = norm2(wv);

    // Apply accumulated rotations, then a new one to kill h[j+1].
    for (std::size_t i = 0; i < j; ++i) {
      const double t = gc[i] * h[i] + gs[i] * h[i + 1];
      h[i + 1] = -gs[i] * h[i] + gc[i] * h[i + 1];
      h[i] = t;
    }
    const double denom = std::hypot(h[j], h[j + 1]);
    if (denom == 0.0)
      throw Stagnation("gmres: zero Hessenberg column");
    gc.push_back(h[j] / denom);
    gs.push_back(h[j + 1] / denom);
    const double lucky = h[j + 1];
    h[j] = denom;
    h[j + 1] = 0.0;
    g.push_back(-gs[j] * g[j]);
    g[j] = gc[j] * g[j];
    hcols.push_back(h);

    const double prec_resid = std::fabs(g[j + 1]);
    res.x = form_solution(j + 1);
    const double tres = true_residual(k, res.x, rhs);
    res.log.precond_residuals.push_back(prec_resid);
    res.log.true_residuals.push_back(tres);
    res.log.iterations = j + 1;

    if (tres <= tol * bnorm) {
      res.log.converged = true;
      return res;
    }
    if (lucky == 0.0) {
      // Exact breakdown: Krylov space is invariant. The residual should be
      // zero; if not, the iteration cannot make further progress.
      throw Stagnation("gmres: Arnoldi breakdown without convergence");
    }
    basis.push_back(std::move(wv));
    scale(basis.back(), 1.0 / lucky);
  }
  return res;
}

void write_solve_csv(const std::string& path, const SolveLog& log) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << "iter,precond_resid,true_resid\n";
  for (std::size_t i = 0; i < log.precond_residuals.size(); ++i) {
    out << i << "," << format_double(log.precond_residuals[i]) << ","
        << format_double(log.true_residuals[i]) << "\n";
  }
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace saddleprec
