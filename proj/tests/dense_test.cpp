#include <cmath>

#include "doctest.h"
#include "graphlind/dense.hpp"
#include "graphlind/graph.hpp"

using namespace graphlind;

TEST_CASE("single-site g0 Liouvillian action on Pauli coefficients") {
  const Rates r = rates_from_g(1.0, 0.0, 0.0);
  const Liouvillian l = build_liouvillian(1, r, std::nullopt);
  CHECK(l.is_real());
  auto apply_to = [&](PauliAxis a) {
    PauliWord w(1);
    w.set(1, a);
    return unvec_rowmajor(l.apply(vec_rowmajor(word_to_dense(w))));
  };
  // State picture of the section 3.1 action table: I feeds Z at rate g0,
  // X and Y decay at g0/2, Z decays at g0.
  PauliWord z(1);
  z.set(1, PauliAxis::Z);
  DenseMatrix zi = apply_to(PauliAxis::I);
  CHECK((zi - word_to_dense(z)).cwiseAbs().maxCoeff() < 1e-13);
  DenseMatrix zx = apply_to(PauliAxis::X);
  PauliWord x(1);
  x.set(1, PauliAxis::X);
  CHECK((zx + 0.5 * word_to_dense(x)).cwiseAbs().maxCoeff() < 1e-13);
  DenseMatrix zz = apply_to(PauliAxis::Z);
  CHECK((zz + word_to_dense(z)).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("trace conservation and stationary states") {
  for (int idx : {1, 5}) {
    const Liouvillian l = build_liouvillian(2, builtin_case(idx),
                                            std::nullopt);
    // Left application of the vectorized identity must vanish.
    Eigen::VectorXcd id = vec_rowmajor(DenseMatrix::Identity(4, 4));
    CHECK((id.adjoint() * l.real_matrix().cast<Complex>()).norm() < 1e-12);
  }
  // gamma = 0: the maximally mixed state is stationary.
  const Liouvillian l5 = build_liouvillian(2, builtin_case(5), std::nullopt);
  Eigen::VectorXcd mixed =
      vec_rowmajor(DenseMatrix::Identity(4, 4) / 4.0);
  CHECK(l5.apply(mixed).norm() < 1e-13);
  // Every Lindbladian has a zero eigenvalue.
  Eigen::VectorXcd ev = l5.real_matrix().eigenvalues();
  double min_abs = 1e30;
  for (long i = 0; i < ev.size(); ++i)
    min_abs = std::min(min_abs, std::abs(ev[i]));
  CHECK(min_abs < 1e-10);
}

TEST_CASE("evolve_dense pinned values") {
  const Rates c1 = builtin_case(1);
  const Liouvillian l = build_liouvillian(4, c1, std::nullopt);
  DenseMatrix rho0 = pure_density(build_state_vector(make_complete(4)));

  DenseMatrix same = evolve_dense(rho0, l, 0.0);
  CHECK((same - rho0).cwiseAbs().maxCoeff() < 1e-14);

  DenseMatrix rho1 = evolve_dense(rho0, l, 1.0);
  CHECK(dense_expectation(rho1, symmetric_word(0, 2, 0, 4)) ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-10));

  DenseMatrix late = evolve_dense(rho0, l, 50.0);
  DenseMatrix vac = DenseMatrix::Zero(16, 16);
  vac(0, 0) = 1.0;
  CHECK((late - vac).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("physicality is preserved along the evolution") {
  const Liouvillian l = build_liouvillian(3, builtin_case(3), std::nullopt);
  DenseMatrix rho = pure_density(build_state_vector(make_complete(3)));
  for (double dt : {0.1, 0.4, 1.5}) {
    rho = evolve_dense(rho, l, dt);
    CHECK(std::abs(rho.trace().real() - 1.0) < 1e-12);
    CHECK((rho - rho.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(rho);
    CHECK(es.eigenvalues().minCoeff() >= -1e-10);
  }
}

TEST_CASE("semigroup property") {
  const Liouvillian l = build_liouvillian(3, builtin_case(4), std::nullopt);
  DenseMatrix rho0 = pure_density(build_state_vector(make_ring(3)));
  DenseMatrix direct = evolve_dense(rho0, l, 0.7);
  DenseMatrix stepped = evolve_dense(evolve_dense(rho0, l, 0.4), l, 0.3);
  CHECK((direct - stepped).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("large-dimension path matches the closed form") {
  // N=5 (dim 1024) exercises the Taylor product form; N=4 the Pade path.
  for (int n : {4, 5}) {
    const Rates c1 = builtin_case(1);
    const Liouvillian l = build_liouvillian(n, c1, std::nullopt);
    DenseMatrix rho = pure_density(build_state_vector(make_complete(n)));
    rho = evolve_dense(rho, l, 0.5);
    CHECK(dense_expectation(rho, symmetric_word(0, 2, 0, n)) ==
          doctest::Approx(std::exp(-0.5)).epsilon(1e-10));
    CHECK(dense_expectation(rho, symmetric_word(0, 0, 1, n)) ==
          doctest::Approx(1.0 - std::exp(-0.5)).epsilon(1e-10));
  }
}

TEST_CASE("Hamiltonian term makes the Liouvillian complex but physical") {
  const Liouvillian l =
      build_liouvillian(3, builtin_case(1), IsingPair{1, 3, 1.0});
  CHECK(!l.is_real());
  DenseMatrix rho = pure_density(build_state_vector(make_complete(3)));
  rho = evolve_dense(rho, l, 0.8);
  CHECK(std::abs(rho.trace().real() - 1.0) < 1e-12);
  CHECK((rho - rho.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("dense_expectation equals the direct trace") {
  const Liouvillian l = build_liouvillian(3, builtin_case(3), std::nullopt);
  DenseMatrix rho = pure_density(build_state_vector(make_star(3)));
  rho = evolve_dense(rho, l, 0.3);
  PauliWord w(3);
  w.set(1, PauliAxis::Y);
  w.set(3, PauliAxis::Z);
  const Complex tr = (word_to_dense(w) * rho).trace();
  CHECK(dense_expectation(rho, w) == doctest::Approx(tr.real()).epsilon(1e-12));
  CHECK(std::abs(tr.imag()) < 1e-12);
}

TEST_CASE("partial trace against the k=2 oracle") {
  const Rates r = builtin_case(4);
  const Liouvillian l = build_liouvillian(5, r, std::nullopt);
  DenseMatrix rho = pure_density(build_state_vector(make_complete(5)));
  rho = evolve_dense(rho, l, 0.4);
  DenseMatrix red = dense_partial_trace(rho, {2, 4});
  CHECK((red - oracle::reduced_density(2, 0.4, r, 5)).cwiseAbs().maxCoeff() <
        1e-10);
  CHECK(red.trace().real() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("dense_osee pinned values") {
  DenseMatrix rho4 = pure_density(build_state_vector(make_complete(4)));
  CHECK(dense_osee(rho4, 2) ==
        doctest::Approx(2 * std::log(2.0)).epsilon(1e-10));
  DenseMatrix rho6 = pure_density(build_state_vector(make_ring(6)));
  CHECK(dense_osee(rho6, 3) ==
        doctest::Approx(4 * std::log(2.0)).epsilon(1e-10));
  DenseMatrix prod = DenseMatrix::Zero(16, 16);
  prod(0, 0) = 1.0;
  CHECK(dense_osee(prod, 2) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("Pauli coefficient basis round-trip") {
  DenseMatrix rho = pure_density(build_state_vector(make_complete(3)));
  Eigen::VectorXd c = dense_pauli_coeffs(rho);
  // Orthonormal basis: the coefficient norm is the Hilbert-Schmidt norm.
  CHECK(c.squaredNorm() ==
        doctest::Approx((rho * rho).trace().real()).epsilon(1e-12));
  // Rebuild and compare.
  DenseMatrix back = DenseMatrix::Zero(8, 8);
  for (long idx = 0; idx < c.size(); ++idx) {
    if (c[idx] == 0.0) continue;
    PauliWord w(3);
    long rest = idx;
    for (int q = 3; q >= 1; --q) {
      w.set(q, static_cast<PauliAxis>(rest & 3));
      rest >>= 2;
    }
    back += c[idx] * word_to_dense(w) / std::pow(2.0, 1.5);
  }
  CHECK((back - rho).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("guards") {
  CHECK_THROWS(build_liouvillian(7, builtin_case(1), std::nullopt));
  const Liouvillian l = build_liouvillian(2, builtin_case(1), std::nullopt);
  DenseMatrix bogus = DenseMatrix::Identity(4, 4);  // trace 4, not a state
  CHECK_THROWS(evolve_dense(bogus, l, 0.1));
}
