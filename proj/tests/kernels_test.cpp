#include <Eigen/Dense>
#include <random>
#include <vector>

#include "doctest.h"
#include "graphlind/kernels.hpp"

using namespace graphlind;

namespace {

using RMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                           Eigen::RowMajor>;

RMat random_mat(std::mt19937& rng, int rows, int cols) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  RMat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = u(rng);
  return m;
}

}  // namespace

TEST_CASE("scalar gemm matches Eigen over assorted shapes") {
  std::mt19937 rng(12345);
  const int shapes[][3] = {{1, 1, 1}, {2, 3, 4},  {4, 4, 4},  {5, 7, 3},
                           {8, 8, 8}, {13, 1, 9}, {16, 32, 8}, {31, 17, 29}};
  for (auto [m, k, n] : shapes) {
    RMat a = random_mat(rng, m, k), b = random_mat(rng, k, n);
    RMat c(m, n);
    kernels::scalar::gemm(m, k, n, a.data(), b.data(), c.data(), false);
    RMat ref = a * b;
    CHECK((c - ref).cwiseAbs().maxCoeff() < 1e-13);

    RMat acc = random_mat(rng, m, n);
    RMat acc_ref = acc + ref;
    kernels::scalar::gemm(m, k, n, a.data(), b.data(), acc.data(), true);
    CHECK((acc - acc_ref).cwiseAbs().maxCoeff() < 1e-13);
  }
}

#if defined(__x86_64__) || defined(_M_X64)
TEST_CASE("avx2 gemm agrees with the scalar reference") {
  if (!__builtin_cpu_supports("avx2") || !__builtin_cpu_supports("fma"))
    return;
  std::mt19937 rng(777);
  const int shapes[][3] = {{1, 1, 1},   {3, 5, 2},  {4, 4, 4},
                           {7, 9, 11},  {8, 16, 4}, {16, 16, 16},
                           {33, 21, 40}};
  for (auto [m, k, n] : shapes) {
    RMat a = random_mat(rng, m, k), b = random_mat(rng, k, n);
    RMat c1(m, n), c2(m, n);
    kernels::scalar::gemm(m, k, n, a.data(), b.data(), c1.data(), false);
    kernels::avx2::gemm(m, k, n, a.data(), b.data(), c2.data(), false);
    CHECK((c1 - c2).cwiseAbs().maxCoeff() < 1e-13);

    RMat acc1 = random_mat(rng, m, n);
    RMat acc2 = acc1;
    kernels::scalar::gemm(m, k, n, a.data(), b.data(), acc1.data(), true);
    kernels::avx2::gemm(m, k, n, a.data(), b.data(), acc2.data(), true);
    CHECK((acc1 - acc2).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("avx2 dot and scale agree with scalar") {
  if (!__builtin_cpu_supports("avx2") || !__builtin_cpu_supports("fma"))
    return;
  std::mt19937 rng(31);
  for (int n : {1, 3, 4, 7, 8, 100, 1023}) {
    RMat x = random_mat(rng, 1, n), y = random_mat(rng, 1, n);
    CHECK(kernels::avx2::dot(n, x.data(), y.data()) ==
          doctest::Approx(kernels::scalar::dot(n, x.data(), y.data()))
              .epsilon(1e-12));
    RMat a = x, b = x;
    kernels::scalar::scale(n, 1.7, a.data());
    kernels::avx2::scale(n, 1.7, b.data());
    CHECK((a - b).cwiseAbs().maxCoeff() < 1e-14);
  }
}
#endif

TEST_CASE("dispatched entry points work and name a backend") {
  std::mt19937 rng(99);
  RMat a = random_mat(rng, 6, 5), b = random_mat(rng, 5, 7);
  RMat c(6, 7);
  kernels::gemm(6, 5, 7, a.data(), b.data(), c.data(), false);
  CHECK((c - RMat(a * b)).cwiseAbs().maxCoeff() < 1e-13);
  CHECK(kernels::dot(5, a.data(), b.data()) ==
        doctest::Approx(kernels::scalar::dot(5, a.data(), b.data())));
  auto name = kernels::backend();
  CHECK((name == "scalar" || name == "avx2" || name == "neon"));
}
