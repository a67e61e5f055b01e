#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "saddleprec/dense_matrix.hpp"
#include "saddleprec/preconditioners.hpp"
#include "saddleprec/problem.hpp"

namespace saddleprec {

struct Cluster {
  std::complex<double> center;
  double radius = 0.0;
  std::size_t count = 0;
};

struct PredictedEig {
  double value = 0.0;
  std::size_t multiplicity = 0;
};

struct SpectrumReport {
  std::vector<std::complex<double>> eigenvalues;
  std::vector<Cluster> clusters;
  std::vector<PredictedEig> predicted;
  /// dim - rank(P^{-1}K - lambda I), parallel to predicted. The theorems
  /// state geometric multiplicities; cluster counts measure algebraic ones,
  /// so both are recorded.
  std::vector<std::size_t> geometric_multiplicities;
  bool has_prediction = false;  // false: preconditioner not ideal here
  bool pass = false;
  double residual_max_imag = 0.0;
  double spectral_radius = 0.0;

  /// "pass" | "fail" | "not-ideal"
  std::string verdict() const;
};

/// Eigenvalues of the explicitly assembled P^{-1} K, clustered and checked
/// against the prediction for (preconditioner tag, regime).
SpectrumReport preconditioned_spectrum(const DenseMatrix& k,
                                       const Preconditioner& p,
                                       const SaddleProblem& prob,
                                       double cluster_tol = 1e-6,
                                       double rank_tol = 1e-10);

/// Greedy clustering with threshold tol * max(1, spectral radius).
std::vector<Cluster> cluster_eigenvalues(
    const std::vector<std::complex<double>>& eigs, double tol);

/// Expected eigenvalue table for an ideal preconditioner; empty when the
/// preconditioner is not ideal for this problem.
std::vector<PredictedEig> predicted_spectrum(PrecondTag tag, bool ideal,
                                             std::size_t n, std::size_t m1,
                                             std::size_t m2);

std::string to_json(const SpectrumReport& report);

/// Checks the analytic eigenvector families of the P2D theorem:
/// [x; WB^{-1} B x] at lambda = 1 and [x; -WB^{-1} B x], x in ker(A), at
/// lambda = -1, plus a negative control outside ker(A).
struct EigenvectorFamilyReport {
  double lambda_plus_max_residual = 0.0;
  double lambda_minus_max_residual = 0.0;
  double negative_control_residual = 0.0;  // expected O(1)
  bool pass = false;
};
EigenvectorFamilyReport eigenvector_families_p2d(const SaddleProblem& p,
                                                 const WeightMatrix& wb,
                                                 double tol = 1e-9,
                                                 std::uint64_t seed = 0);

/// Distinct-cluster count of P3D^{-1} K as the (2,2)-block scaling varies.
struct ScalingSweepEntry {
  double scaling = 0.0;
  std::size_t distinct_clusters = 0;
};
std::vector<ScalingSweepEntry> scaling_sweep_p3d(
    const SaddleProblem& p, const std::vector<double>& scalings,
    const WeightMatrix& w, double cluster_tol = 1e-6);

}  // namespace saddleprec
