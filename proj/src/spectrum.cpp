#include "saddleprec/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "saddleprec/eig.hpp"
#include "saddleprec/errors.hpp"
#include "saddleprec/matrix_market.hpp"
#include "saddleprec/rng.hpp"
#include "saddleprec/svd.hpp"

namespace saddleprec {

std::string SpectrumReport::verdict() const {
  if (!has_prediction) return "not-ideal";
  return pass ? "pass" : "fail";
}

std::vector<Cluster> cluster_eigenvalues(
    const std::vector<std::complex<double>>& eigs, double tol) {
  double rho = 0.0;
  for (const auto& e : eigs) rho = std::max(rho, std::abs(e));
  const double thresh = tol * std::max(1.0, rho);

  std::vector<std::complex<double>> sorted = eigs;
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });

  std::vector<Cluster> clusters;
  std::vector<std::vector<std::complex<double>>> members;
  for (const auto& e : sorted) {
    bool placed = false;
    for (std::size_t c = 0; c < clusters.size(); ++c) {
      if (std::abs(e - clusters[c].center) <= thresh) {
        members[c].push_back(e);
        // Running mean keeps the center representative.
        std::complex<double> sum(0.0, 0.0);
        for (const auto& x : members[c]) sum += x;
        clusters[c].center = sum / static_cast<double>(members[c].size());
        placed = true;
        break;
      }
    }
    if (!placed) {
      clusters.push_back({e, 0.0, 0});
      members.push_back({e});
    }
  }
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    clusters[c].count = members[c].size();
    double r = 0.0;
    for (const auto& x : members[c])
      r = std::max(r, std::abs(x - clusters[c].center));
    clusters[c].radius = r;
  }
  return clusters;
}

std::vector<PredictedEig> predicted_spectrum(PrecondTag tag, bool ideal,
                                             std::size_t n, std::size_t m1,
                                             std::size_t m2) {
  std::vector<PredictedEig> out;
  if (!ideal) return out;
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  switch (tag) {
    case PrecondTag::P2D:
      out = {{1.0, n}, {-1.0, m1 + m2}};
      break;
    case PrecondTag::P3D:
      out = {{-1.0, m1 + m2}, {1.0, n - m1}, {2.0, m1}};
      break;
    case PrecondTag::P3T:
      out = {{1.0, n - m1 + m2}, {phi, m1}, {1.0 - phi, m1}};
      break;
    case PrecondTag::Identity:
      break;
  }
  std::erase_if(out, [](const PredictedEig& p) { return p.multiplicity == 0; });
  return out;
}

SpectrumReport preconditioned_spectrum(const DenseMatrix& k,
                                       const Preconditioner& p,
                                       const SaddleProblem& prob,
                                       double cluster_tol, double rank_tol) {
  if (k.rows() != p.dim())
    throw Error("preconditioned_spectrum: dimension mismatch");
  SpectrumReport rep;
  const DenseMatrix m = p.apply_inverse(k);
  rep.eigenvalues = eig_general(m);

  for (const auto& e : rep.eigenvalues) {
    rep.spectral_radius = std::max(rep.spectral_radius, std::abs(e));
    rep.residual_max_imag =
        std::max(rep.residual_max_imag, std::fabs(e.imag()));
  }
  rep.clusters = cluster_eigenvalues(rep.eigenvalues, cluster_tol);
  rep.predicted =
      predicted_spectrum(p.tag(), p.ideal(), prob.n(), prob.m1(), prob.m2());
  rep.has_prediction = !rep.predicted.empty();
  if (!rep.has_prediction) return rep;

  const double match_tol = cluster_tol * std::max(1.0, rep.spectral_radius);
  bool ok = true;
  for (const auto& pred : rep.predicted) {
    const Cluster* found = nullptr;
    for (const auto& c : rep.clusters) {
      if (std::abs(c.center - std::complex<double>(pred.value, 0.0)) <=
          match_tol) {
        found = &c;
        break;
      }
    }
    ok = ok && found != nullptr && found->count == pred.multiplicity;

    // Geometric multiplicity: nullity of P^{-1}K - lambda I.
    DenseMatrix shifted = m;
    for (std::size_t i = 0; i < shifted.rows(); ++i)
      shifted(i, i) -= pred.value;
    rep.geometric_multiplicities.push_back(shifted.rows() -
                                           rank(shifted, rank_tol));
  }
  rep.pass = ok;
  return rep;
}

std::string to_json(const SpectrumReport& report) {
  std::ostringstream os;
  os << "{\n  \"eigs\": [";
  for (std::size_t i = 0; i < report.eigenvalues.size(); ++i) {
    if (i) os << ", ";
    os << "[" << format_double(report.eigenvalues[i].real()) << ", "
       << format_double(report.eigenvalues[i].imag()) << "]";
  }
  os << "],\n  \"clusters\": [";
  for (std::size_t i = 0; i < report.clusters.size(); ++i) {
    const auto& c = report.clusters[i];
    if (i) os << ", ";
    os << "{\"center\": [" << format_double(c.center.real()) << ", "
       << format_double(c.center.imag())
       << "], \"radius\": " << format_double(c.radius)
       << ", \"count\": " << c.count << "}";
  }
  os << "],\n  \"predicted\": [";
  for (std::size_t i = 0; i < report.predicted.size(); ++i) {
    if (i) os << ", ";
    os << "{\"value\": " << format_double(report.predicted[i].value)
       << ", \"mult\": " << report.predicted[i].multiplicity;
    if (i < report.geometric_multiplicities.size())
      os << ", \"geometric\": " << report.geometric_multiplicities[i];
    os << "}";
  }
  os << "],\n  \"residual_max_imag\": "
     << format_double(report.residual_max_imag)
     << ",\n  \"spectral_radius\": " << format_double(report.spectral_radius)
     << ",\n  \"verdict\": \"" << report.verdict() << "\"\n}\n";
  return os.str();
}

EigenvectorFamilyReport eigenvector_families_p2d(const SaddleProblem& p,
                                                 const WeightMatrix& wb,
                                                 double tol,
                                                 std::uint64_t seed) {
  const std::size_t n = p.n(), m = p.m1() + p.m2();
  const DenseMatrix k = assemble_k(p);
  const auto prec = build_p2d(p, wb);
  const DenseMatrix pm = prec->assemble();
  const DenseMatrix b = p.b_stacked();
  const double kscale = k.frobenius_norm();

  auto family_residual = [&](const Vector& x, double lambda) {
    Vector v(n + m);
    Vector bx = wb.factor.solve(b * x);
    for (std::size_t i = 0; i < n; ++i) v[i] = x[i];
    for (std::size_t i = 0; i < m; ++i) v[n + i] = lambda * bx[i];
    Vector lhs = k * v;
    axpy(-lambda, pm * v, lhs);
    return norm2(lhs) / (kscale * norm2(v));
  };

  EigenvectorFamilyReport rep;
  Rng rng(seed ^ 0xE16E16E16ULL);
  // lambda = 1 family: coordinate and random x.
  for (int t = 0; t < 4; ++t) {
    Vector x(n, 0.0);
    if (t == 0)
      x[0] = 1.0;
    else
      x = rng.normal_vector(n);
    rep.lambda_plus_max_residual =
        std::max(rep.lambda_plus_max_residual, family_residual(x, 1.0));
  }
  // lambda = -1 family over ker(A).
  const NullBasis za = nullspace(p.a);
  for (std::size_t j = 0; j < za.dim(); ++j) {
    rep.lambda_minus_max_residual = std::max(
        rep.lambda_minus_max_residual, family_residual(za.basis.col(j), -1.0));
  }
  // Negative control: x with a strong range(A) component.
  if (n > za.dim()) {
    Vector x = rng.normal_vector(n);
    rep.negative_control_residual = family_residual(x, -1.0);
  }
  rep.pass = rep.lambda_plus_max_residual <= tol &&
             rep.lambda_minus_max_residual <= tol;
  return rep;
}

std::vector<ScalingSweepEntry> scaling_sweep_p3d(
    const SaddleProblem& p, const std::vector<double>& scalings,
    const WeightMatrix& w, double cluster_tol) {
  const DenseMatrix k = assemble_k(p);
  std::vector<ScalingSweepEntry> out;
  out.reserve(scalings.size());
  for (double s : scalings) {
    const auto prec = build_p3d(p, w, s);
    const auto eigs = eig_general(prec->apply_inverse(k));
    out.push_back({s, cluster_eigenvalues(eigs, cluster_tol).size()});
  }
  return out;
}

}  // namespace saddleprec
