#include "graphlind/engine.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <unsupported/Eigen/KroneckerProduct>

namespace graphlind {

Channel make_channel(const Rates& r, double tau) {
  if (tau < 0) throw std::invalid_argument("make_channel: negative tau");
  Channel c;
  c.rates = r;
  c.tau = tau;
  const double ex = std::exp(-r.alpha * tau);
  const double ez = std::exp(-r.beta * tau);
  c.m.setZero();
  c.m(0, 0) = 1.0;
  c.m(1, 1) = ex;
  c.m(2, 2) = ex;
  c.m(3, 3) = ez;
  if (r.beta != 0.0) c.m(3, 0) = r.gamma / r.beta * (1.0 - ez);
  return c;
}

Eigen::Matrix4cd channel_choi(const Channel& c) {
  Eigen::Matrix4cd choi = Eigen::Matrix4cd::Zero();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      Eigen::Matrix2cd e = Eigen::Matrix2cd::Zero();
      e(i, j) = 1.0;
      Eigen::Vector4cd coeff;
      for (int a = 0; a < 4; ++a)
        coeff[a] = 0.5 * (axis_matrix(static_cast<PauliAxis>(a)) * e).trace();
      Eigen::Vector4cd mapped = c.m.cast<Complex>() * coeff;
      Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
      for (int a = 0; a < 4; ++a)
        out += mapped[a] * axis_matrix(static_cast<PauliAxis>(a));
      choi.block(2 * i, 2 * j, 2, 2) += out;
    }
  return choi;
}

Eigen::MatrixXd zz_superrotation(double theta) {
  Eigen::Vector4cd u;
  const Complex im(0.0, 1.0);
  const double zz[4] = {1.0, -1.0, -1.0, 1.0};
  for (int k = 0; k < 4; ++k) u[k] = std::exp(-im * theta * zz[k]);
  std::array<Eigen::Matrix4cd, 16> basis;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      basis[a * 4 + b] =
          Eigen::kroneckerProduct(axis_matrix(static_cast<PauliAxis>(a)),
                                  axis_matrix(static_cast<PauliAxis>(b)));
  Eigen::MatrixXd rot(16, 16);
  for (int p = 0; p < 16; ++p)
    for (int q = 0; q < 16; ++q) {
      Eigen::Matrix4cd conj =
          u.asDiagonal() * basis[q] * u.conjugate().asDiagonal();
      const Complex v = (basis[p] * conj).trace() / 4.0;
      if (std::abs(v.imag()) > 1e-12)
        throw std::logic_error("zz_superrotation: non-real entry");
      rot(p, q) = v.real();
    }
  return rot;
}

TruncationReport step(VectorizedState& s, const Channel& c,
                      const HamiltonianSpec& h, double tau,
                      const TruncationPolicy& policy) {
  if (std::abs(tau - c.tau) > 1e-15 * std::max(1.0, tau))
    throw std::invalid_argument("step: channel built for a different tau");
  TruncationReport rep;
  if (h) {
    if (h->a < 1 || h->b > s.n_sites() || h->a >= h->b)
      throw std::invalid_argument("step: bad Ising pair");
    const Mpo half = Mpo::two_site_gate(
        h->a, h->b, 4, zz_superrotation(h->coupling * tau / 2.0));
    rep.merge(s.apply_spanning(half, policy));
    for (int i = 1; i <= s.n_sites(); ++i) s.apply_single_site(i, c.m);
    rep.merge(s.apply_spanning(half, policy));
  } else {
    for (int i = 1; i <= s.n_sites(); ++i) s.apply_single_site(i, c.m);
  }
  return rep;
}

TimeSeries run(VectorizedState state, const Rates& r, const HamiltonianSpec& h,
               const Schedule& sched, const TruncationPolicy& policy) {
  if (sched.tau <= 0) throw std::invalid_argument("run: tau must be positive");
  if (sched.t_final < 0) throw std::invalid_argument("run: negative t_final");
  if (sched.sample_every < 1)
    throw std::invalid_argument("run: sample_every must be >= 1");
  for (int cut : sched.cuts)
    if (cut < 1 || cut >= state.n_sites())
      throw std::invalid_argument("run: bad OSEE cut");
  const long n_steps = std::llround(sched.t_final / sched.tau);
  const Channel chan = make_channel(r, sched.tau);

  TimeSeries out;
  TruncationReport rep;
  auto record = [&](long k) {
    TimeSample smp;
    smp.t = static_cast<double>(k) * sched.tau;
    smp.observables.reserve(sched.observables.size());
    for (const auto& w : sched.observables)
      smp.observables.push_back(vs_measure_word(state, w));
    smp.osee.reserve(sched.cuts.size());
    for (int cut : sched.cuts) smp.osee.push_back(state.osee(cut));
    smp.max_bond = state.max_bond_dim();
    smp.discarded_weight = rep.discarded_weight;
    out.samples.push_back(std::move(smp));
  };

  record(0);
  for (long k = 1; k <= n_steps; ++k) {
    rep.merge(step(state, chan, h, sched.tau, policy));
    if (k % sched.sample_every == 0 || k == n_steps) record(k);
  }
  out.bond_capped = rep.bond_capped;
  return out;
}

}  // namespace graphlind
