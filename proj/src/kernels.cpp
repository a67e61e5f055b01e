#include "saddleprec/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>
#include <mutex>

#include "saddleprec/errors.hpp"

namespace saddleprec::kernels {

namespace scalar {

double dot(std::size_t n, const double* x, const double* y) {
  // Four accumulators; matches the lane structure of the AVX2 variant so the
  // two backends agree to rounding rather than to summation order.
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    s0 += x[i] * y[i];
    s1 += x[i + 1] * y[i + 1];
    s2 += x[i + 2] * y[i + 2];
    s3 += x[i + 3] * y[i + 3];
  }
  double s = (s0 + s2) + (s1 + s3);
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

void axpy(std::size_t n, double a, const double* x, double* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scal(std::size_t n, double a, double* x) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

void gemm_acc(std::size_t m, std::size_t n, std::size_t k,
              const double* a, std::size_t lda,
              const double* b, std::size_t ldb,
              double* c, std::size_t ldc) {
  for (std::size_t i = 0; i < m; ++i) {
    const double* arow = a + i * lda;
    double* crow = c + i * ldc;
    for (std::size_t p = 0; p < k; ++p) {
      const double aip = arow[p];
      if (aip == 0.0) continue;
      const double* brow = b + p * ldb;
      for (std::size_t j = 0; j < n; ++j) crow[j] += aip * brow[j];
    }
  }
}

}  // namespace scalar

#if !SADDLEPREC_HAVE_AVX2
namespace avx2 {
bool compiled_in() { return false; }
double dot(std::size_t, const double*, const double*) {
  throw Error("AVX2 kernels not compiled in");
}
void axpy(std::size_t, double, const double*, double*) {
  throw Error("AVX2 kernels not compiled in");
}
void scal(std::size_t, double, double*) {
  throw Error("AVX2 kernels not compiled in");
}
void gemm_acc(std::size_t, std::size_t, std::size_t, const double*, std::size_t,
              const double*, std::size_t, double*, std::size_t) {
  throw Error("AVX2 kernels not compiled in");
}
}  // namespace avx2
#endif

namespace {

struct Table {
  double (*dot)(std::size_t, const double*, const double*);
  void (*axpy)(std::size_t, double, const double*, double*);
  void (*scal)(std::size_t, double, double*);
  void (*gemm_acc)(std::size_t, std::size_t, std::size_t, const double*,
                   std::size_t, const double*, std::size_t, double*,
                   std::size_t);
};

constexpr Table kScalarTable = {scalar::dot, scalar::axpy, scalar::scal,
                                scalar::gemm_acc};
constexpr Table kAvx2Table = {avx2::dot, avx2::axpy, avx2::scal,
                              avx2::gemm_acc};

bool cpu_has_avx2() {
#if SADDLEPREC_HAVE_AVX2
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

std::atomic<const Table*> g_table{nullptr};
std::atomic<Backend> g_backend{Backend::Scalar};
std::once_flag g_init_flag;

void init_dispatch() {
  Backend want = avx2_supported() ? Backend::Avx2 : Backend::Scalar;
  if (const char* env = std::getenv("SADDLEPREC_SIMD")) {
    if (std::strcmp(env, "scalar") == 0) want = Backend::Scalar;
    else if (std::strcmp(env, "avx2") == 0 && avx2_supported()) want = Backend::Avx2;
  }
  g_backend.store(want);
  g_table.store(want == Backend::Avx2 ? &kAvx2Table : &kScalarTable);
}

const Table& table() {
  std::call_once(g_init_flag, init_dispatch);
  return *g_table.load();
}

}  // namespace

bool avx2_supported() {
  static const bool ok = avx2::compiled_in() && cpu_has_avx2();
  return ok;
}

Backend active_backend() {
  table();
  return g_backend.load();
}

void select_backend(Backend b) {
  table();  // ensure initialized
  if (b == Backend::Avx2 && !avx2_supported())
    throw Error("AVX2 backend unavailable on this machine");
  g_backend.store(b);
  g_table.store(b == Backend::Avx2 ? &kAvx2Table : &kScalarTable);
}

double dot(std::size_t n, const double* x, const double* y) {
  return table().dot(n, x, y);
}

void axpy(std::size_t n, double a, const double* x, double* y) {
  table().axpy(n, a, x, y);
}

void scal(std::size_t n, double a, double* x) { table().scal(n, a, x); }

void gemm_acc(std::size_t m, std::size_t n, std::size_t k,
              const double* a, std::size_t lda,
              const double* b, std::size_t ldb,
              double* c, std::size_t ldc) {
  table().gemm_acc(m, n, k, a, lda, b, ldb, c, ldc);
}

}  // namespace saddleprec::kernels
