#include "saddleprec/projector.hpp"

#include <cmath>

#include "saddleprec/errors.hpp"
#include "saddleprec/svd.hpp"

namespace saddleprec {

ProjectorReport verify_projector(const Projector& p, double tol) {
  if (!p.matrix.square()) throw Error("verify_projector: matrix not square");
  ProjectorReport rep;
  const double pnorm = p.matrix.frobenius_norm();
  const double denom = pnorm > 0.0 ? pnorm : 1.0;

  rep.idempotence_residual =
      (p.matrix * p.matrix - p.matrix).frobenius_norm() / denom;
  rep.rank = rank(p.matrix, tol);

  bool witnesses_ok = true;
  if (!p.range_witness.empty()) {
    const double rnorm = p.range_witness.frobenius_norm();
    rep.range_residual =
        (p.matrix * p.range_witness - p.range_witness).frobenius_norm() /
        (rnorm > 0.0 ? rnorm : 1.0);
    witnesses_ok = witnesses_ok && rep.range_residual <= tol;
  }
  if (!p.kernel_witness.empty()) {
    const double knorm = p.kernel_witness.frobenius_norm();
    rep.kernel_residual = (p.matrix * p.kernel_witness).frobenius_norm() /
                          (knorm > 0.0 ? knorm : 1.0);
    witnesses_ok = witnesses_ok && rep.kernel_residual <= tol;
  }
  rep.pass = rep.idempotence_residual <= tol && witnesses_ok;
  return rep;
}

}  // namespace saddleprec
