#pragma once

#include <cstddef>

// Data-parallel inner loops used by the dense layer. Every operation has a
// scalar reference implementation and, on x86-64, an AVX2+FMA variant. The
// top-level entry points dispatch through function pointers selected once at
// startup from CPU capabilities (override with SADDLEPREC_SIMD=scalar|avx2).

namespace saddleprec::kernels {

enum class Backend { Scalar, Avx2 };

/// Backend the dispatched entry points currently use.
Backend active_backend();

/// True when AVX2+FMA variants are compiled in and the CPU supports them.
bool avx2_supported();

/// Force a backend (tests use this to compare variants). Throws
/// saddleprec::Error if the requested backend is unavailable.
void select_backend(Backend b);

// Dispatched entry points -----------------------------------------------

double dot(std::size_t n, const double* x, const double* y);

/// y += a * x
void axpy(std::size_t n, double a, const double* x, double* y);

/// x *= a
void scal(std::size_t n, double a, double* x);

/// Row-major C(m x n, ldc) += A(m x k, lda) * B(k x n, ldb).
void gemm_acc(std::size_t m, std::size_t n, std::size_t k,
              const double* a, std::size_t lda,
              const double* b, std::size_t ldb,
              double* c, std::size_t ldc);

// Reference kernels (always available) ------------------------------------

namespace scalar {
double dot(std::size_t n, const double* x, const double* y);
void axpy(std::size_t n, double a, const double* x, double* y);
void scal(std::size_t n, double a, double* x);
void gemm_acc(std::size_t m, std::size_t n, std::size_t k,
              const double* a, std::size_t lda,
              const double* b, std::size_t ldb,
              double* c, std::size_t ldc);
}  // namespace scalar

// AVX2 kernels (valid to call only when avx2_supported()) ----------------

namespace avx2 {
bool compiled_in();
double dot(std::size_t n, const double* x, const double* y);
void axpy(std::size_t n, double a, const double* x, double* y);
void scal(std::size_t n, double a, double* x);
void gemm_acc(std::size_t m, std::size_t n, std::size_t k,
              const double* a, std::size_t lda,
              const double* b, std::size_t ldb,
              double* c, std::size_t ldc);
}  // namespace avx2

}  // namespace saddleprec::kernels
