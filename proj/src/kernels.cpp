#include "graphlind/kernels.hpp"

#include <cstring>

namespace graphlind::kernels {

namespace scalar {

void gemm(std::size_t m, std::size_t k, std::size_t n, const double* a,
          const double* b, double* c, bool accumulate) {
  if (!accumulate) std::memset(c, 0, m * n * sizeof(double));
  for (std::size_t i = 0; i < m; ++i) {
    const double* ai = a + i * k;
    double* ci = c + i * n;
    for (std::size_t p = 0; p < k; ++p) {
      const double aip = ai[p];
      if (aip == 0.0) continue;
      const double* bp = b + p * n;
      for (std::size_t j = 0; j < n; ++j) ci[j] += aip * bp[j];
    }
  }
}

double dot(std::size_t n, const double* x, const double* y) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

void scale(std::size_t n, double alpha, double* x) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= alpha;
}

}  // namespace scalar

#if defined(__aarch64__) || defined(__ARM_NEON)
// NEON has 2-wide doubles; the compiler auto-vectorizes the scalar loops
// well enough on aarch64, so the scalar path doubles as the NEON path.
#endif

namespace {

bool have_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

GemmFn pick_gemm() {
#if defined(__x86_64__) || defined(_M_X64)
  if (have_avx2()) return avx2::gemm;
#endif
  return scalar::gemm;
}

DotFn pick_dot() {
#if defined(__x86_64__) || defined(_M_X64)
  if (have_avx2()) return avx2::dot;
#endif
  return scalar::dot;
}

ScaleFn pick_scale() {
#if defined(__x86_64__) || defined(_M_X64)
  if (have_avx2()) return avx2::scale;
#endif
  return scalar::scale;
}

}  // namespace

const GemmFn gemm = pick_gemm();
const DotFn dot = pick_dot();
const ScaleFn scale = pick_scale();

std::string_view backend() {
  if (have_avx2()) return "avx2";
#if defined(__aarch64__) || defined(__ARM_NEON)
  return "neon";
#else
  return "scalar";
#endif
}

}  // namespace graphlind::kernels
