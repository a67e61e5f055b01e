#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "saddleprec/kernels.hpp"
#include "saddleprec/rng.hpp"

using namespace saddleprec;
namespace kn = saddleprec::kernels;

namespace {

// Straightforward reference results computed independently of the kernel
// implementations under test.
double naive_dot(const std::vector<double>& x, const std::vector<double>& y) {
  long double s = 0.0L;
  for (std::size_t i = 0; i < x.size(); ++i)
    s += static_cast<long double>(x[i]) * y[i];
  return static_cast<double>(s);
}

}  // namespace

TEST_CASE("scalar and AVX2 kernels agree on dot/axpy/scal") {
  Rng rng(42);
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 15u, 16u, 17u, 33u, 100u,
                        255u, 1024u}) {
    std::vector<double> x(n), y(n);
    for (auto& v : x) v = rng.normal();
    for (auto& v : y) v = rng.normal();

    const double ds = kn::scalar::dot(n, x.data(), y.data());
    const double oracle = naive_dot(x, y);
    CHECK(std::fabs(ds - oracle) <= 1e-13 * (std::fabs(oracle) + n));

    if (kn::avx2_supported()) {
      const double da = kn::avx2::dot(n, x.data(), y.data());
      CHECK(std::fabs(da - ds) <= 1e-13 * (std::fabs(ds) + n));

      std::vector<double> ys = y, ya = y;
      kn::scalar::axpy(n, 0.37, x.data(), ys.data());
      kn::avx2::axpy(n, 0.37, x.data(), ya.data());
      for (std::size_t i = 0; i < n; ++i)
        CHECK(ys[i] == doctest::Approx(ya[i]).epsilon(1e-14));

      std::vector<double> xs = x, xa = x;
      kn::scalar::scal(n, -1.75, xs.data());
      kn::avx2::scal(n, -1.75, xa.data());
      for (std::size_t i = 0; i < n; ++i) CHECK(xs[i] == xa[i]);
    }
  }
}

TEST_CASE("gemm_acc variants match the triple-loop oracle") {
  Rng rng(7);
  for (auto [m, n, k] : {std::array<std::size_t, 3>{1, 1, 1},
                         {2, 3, 4},
                         {5, 5, 5},
                         {7, 9, 11},
                         {8, 16, 4},
                         {13, 1, 6},
                         {32, 33, 31}}) {
    std::vector<double> a(m * k), b(k * n);
    for (auto& v : a) v = rng.normal();
    for (auto& v : b) v = rng.normal();

    std::vector<double> oracle(m * n, 0.0);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t p = 0; p < k; ++p)
        for (std::size_t j = 0; j < n; ++j)
          oracle[i * n + j] += a[i * k + p] * b[p * n + j];

    std::vector<double> cs(m * n, 0.0);
    kn::scalar::gemm_acc(m, n, k, a.data(), k, b.data(), n, cs.data(), n);
    for (std::size_t i = 0; i < m * n; ++i)
      CHECK(cs[i] == doctest::Approx(oracle[i]).epsilon(1e-12));

    if (kn::avx2_supported()) {
      std::vector<double> ca(m * n, 0.0);
      kn::avx2::gemm_acc(m, n, k, a.data(), k, b.data(), n, ca.data(), n);
      for (std::size_t i = 0; i < m * n; ++i)
        CHECK(ca[i] == doctest::Approx(oracle[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("dispatch selects a working backend and can be forced") {
  const kn::Backend initial = kn::active_backend();

  std::vector<double> x{1.0, 2.0, 3.0, 4.0, 5.0};
  std::vector<double> y{5.0, 4.0, 3.0, 2.0, 1.0};
  const double expect = 35.0;

  kn::select_backend(kn::Backend::Scalar);
  CHECK(kn::active_backend() == kn::Backend::Scalar);
  CHECK(kn::dot(x.size(), x.data(), y.data()) == doctest::Approx(expect));

  if (kn::avx2_supported()) {
    kn::select_backend(kn::Backend::Avx2);
    CHECK(kn::active_backend() == kn::Backend::Avx2);
    CHECK(kn::dot(x.size(), x.data(), y.data()) == doctest::Approx(expect));
  } else {
    CHECK_THROWS(kn::select_backend(kn::Backend::Avx2));
  }
  kn::select_backend(initial);
}
