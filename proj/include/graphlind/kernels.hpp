#pragma once

#include <cstddef>
#include <string_view>

// Small dense kernels used by the MPS contraction code. All matrices are
// row-major, double precision. A scalar reference implementation is always
// available; an AVX2/FMA variant is selected at runtime when the CPU
// supports it. Both variants are equivalence-tested against each other.

namespace graphlind::kernels {

// C (m x n) = A (m x k) * B (k x n), optionally accumulating into C.
using GemmFn = void (*)(std::size_t m, std::size_t k, std::size_t n,
                        const double* a, const double* b, double* c,
                        bool accumulate);

using DotFn = double (*)(std::size_t n, const double* x, const double* y);
using ScaleFn = void (*)(std::size_t n, double alpha, double* x);

namespace scalar {
void gemm(std::size_t m, std::size_t k, std::size_t n, const double* a,
          const double* b, double* c, bool accumulate);
double dot(std::size_t n, const double* x, const double* y);
void scale(std::size_t n, double alpha, double* x);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
void gemm(std::size_t m, std::size_t k, std::size_t n, const double* a,
          const double* b, double* c, bool accumulate);
double dot(std::size_t n, const double* x, const double* y);
void scale(std::size_t n, double alpha, double* x);
}  // namespace avx2
#endif

// Active (runtime-dispatched) entry points.
extern const GemmFn gemm;
extern const DotFn dot;
extern const ScaleFn scale;

// Name of the selected backend: "scalar", "avx2" or "neon".
std::string_view backend();

}  // namespace graphlind::kernels
