#pragma once

#include <cstddef>

#include "saddleprec/dense_matrix.hpp"

namespace saddleprec {

/// A claimed projector together with witnesses for its range and kernel.
struct Projector {
  DenseMatrix matrix;          // square
  DenseMatrix range_witness;   // columns spanning the claimed range
  DenseMatrix kernel_witness;  // columns the projector should annihilate
};

struct ProjectorReport {
  bool pass = false;
  double idempotence_residual = 0.0;  // ||P^2 - P||_F / ||P||_F
  std::size_t rank = 0;               // singular values above tol * sigma_max
  double range_residual = 0.0;        // ||P R - R||_F / ||R||_F
  double kernel_residual = 0.0;       // ||P K||_F / ||K||_F
};

/// Checks idempotence, rank, and both witnesses at relative tolerance tol.
ProjectorReport verify_projector(const Projector& p, double tol = 1e-10);

}  // namespace saddleprec
