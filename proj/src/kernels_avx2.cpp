#include "graphlind/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cstring>

// AVX2/FMA variants. Compiled with target attributes so the rest of the
// project keeps a generic baseline; dispatch happens at startup in
// kernels.cpp. Matrix shapes here are small (MPS bonds), so a simple
// broadcast-A, stream-B kernel is enough.

namespace graphlind::kernels::avx2 {

__attribute__((target("avx2,fma"))) void gemm(std::size_t m, std::size_t k,
                                              std::size_t n, const double* a,
                                              const double* b, double* c,
                                              bool accumulate) {
  if (!accumulate) std::memset(c, 0, m * n * sizeof(double));
  const std::size_t n4 = n - n % 4;
  for (std::size_t i = 0; i < m; ++i) {
    const double* ai = a + i * k;
    double* ci = c + i * n;
    for (std::size_t p = 0; p < k; ++p) {
      const double aip = ai[p];
      if (aip == 0.0) continue;
      const double* bp = b + p * n;
      const __m256d va = _mm256_set1_pd(aip);
      std::size_t j = 0;
      for (; j < n4; j += 4) {
        __m256d vc = _mm256_loadu_pd(ci + j);
        vc = _mm256_fmadd_pd(va, _mm256_loadu_pd(bp + j), vc);
        _mm256_storeu_pd(ci + j, vc);
      }
      for (; j < n; ++j) ci[j] += aip * bp[j];
    }
  }
}

__attribute__((target("avx2,fma"))) double dot(std::size_t n, const double* x,
                                               const double* y) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  const std::size_t n4 = n - n % 4;
  for (; i < n4; i += 4)
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc);
  alignas(32) double tmp[4];
  _mm256_store_pd(tmp, acc);
  double s = tmp[0] + tmp[1] + tmp[2] + tmp[3];
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

__attribute__((target("avx2,fma"))) void scale(std::size_t n, double alpha,
                                               double* x) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  const std::size_t n4 = n - n % 4;
  for (; i < n4; i += 4)
    _mm256_storeu_pd(x + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
  for (; i < n; ++i) x[i] *= alpha;
}

}  // namespace graphlind::kernels::avx2

#endif  // x86_64
