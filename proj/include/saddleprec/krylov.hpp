#pragma once

#include <string>
#include <vector>

#include "saddleprec/dense_matrix.hpp"
#include "saddleprec/preconditioners.hpp"

namespace saddleprec {

struct SolveLog {
  std::size_t iterations = 0;
  std::vector<double> precond_residuals;  // recurrence norm per iteration
  std::vector<double> true_residuals;     // ||b - K x_k|| per iteration
  bool converged = false;
  std::string solver;
  std::string preconditioner;
};

struct SolveResult {
  Vector x;
  SolveLog log;
};

/// Preconditioned MINRES (P-inner-product Lanczos). Requires an SPD
/// preconditioner and symmetric K; convergence is declared on the true
/// residual ||b - Kx|| <= tol ||b||.
SolveResult minres(const DenseMatrix& k, const Preconditioner& p,
                   const Vector& rhs, double tol, std::size_t maxit);

/// Full (unrestarted) left-preconditioned GMRES with modified Gram-Schmidt
/// and one reorthogonalization pass; zero initial guess. Throws Stagnation
/// when the Arnoldi basis is exhausted with no progress.
SolveResult gmres(const DenseMatrix& k, const Preconditioner& p,
                  const Vector& rhs, double tol, std::size_t maxit);

/// CSV with columns (iter, precond_resid, true_resid).
void write_solve_csv(const std::string& path, const SolveLog& log);

}  // namespace saddleprec
