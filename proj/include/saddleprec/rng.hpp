#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "saddleprec/dense_matrix.hpp"

namespace saddleprec {

/// Seeded generator with an explicit Box-Muller normal. std::mt19937_64 is
/// fully specified by the standard and Box-Muller avoids the
/// implementation-defined std::normal_distribution, so identical seeds give
/// identical streams on any conforming toolchain.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() {  // (0, 1)
    const std::uint64_t r = engine_();
    return (static_cast<double>(r >> 11) + 0.5) * 0x1.0p-53;
  }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double mag = std::sqrt(-2.0 * std::log(u1));
    const double ang = 2.0 * 3.141592653589793238462643383279502884 * u2;
    spare_ = mag * std::sin(ang);
    have_spare_ = true;
    return mag * std::cos(ang);
  }

  DenseMatrix normal_matrix(std::size_t rows, std::size_t cols) {
    DenseMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = normal();
    return m;
  }

  Vector normal_vector(std::size_t n) {
    Vector v(n);
    for (auto& x : v) x = normal();
    return v;
  }

private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace saddleprec
