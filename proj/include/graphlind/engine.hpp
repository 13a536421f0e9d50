#pragma once

#include <Eigen/Dense>
#include <vector>

#include "graphlind/dense.hpp"
#include "graphlind/mps.hpp"
#include "graphlind/oracle.hpp"

namespace graphlind {

// One-step propagator of the single-site dissipative Liouvillian in the
// Pauli coefficient basis (I, X, Y, Z). Exact for any tau:
//   c_I -> c_I
//   c_X -> e^{-alpha tau} c_X        (same for c_Y)
//   c_Z -> e^{-beta tau} c_Z + (gamma/beta)(1 - e^{-beta tau}) c_I
struct Channel {
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  Rates rates;
  double tau = 0.0;
};

Channel make_channel(const Rates& r, double tau);

// Choi matrix of the channel (computational basis); its eigenvalues
// certify complete positivity.
Eigen::Matrix4cd channel_choi(const Channel& c);

// Superoperator of exp(-i theta Z Z) conjugation on two sites, in the
// orthonormal Pauli product basis (16 x 16, real, index a*4 + b).
Eigen::MatrixXd zz_superrotation(double theta);

struct Schedule {
  double tau = 0.004;
  double t_final = 1.0;
  int sample_every = 25;  // steps between records; t=0 always recorded
  std::vector<PauliWord> observables;
  std::vector<int> cuts;
};

struct TimeSample {
  double t = 0.0;
  std::vector<double> observables;
  std::vector<double> osee;
  int max_bond = 1;
  double discarded_weight = 0.0;  // cumulative over the run so far
};

struct TimeSeries {
  std::vector<TimeSample> samples;
  bool bond_capped = false;
};

// One step of length tau. Without a Hamiltonian this is exact (the
// per-site generators commute); with an Ising pair the ZZ superrotation
// is Strang-split around the channels.
TruncationReport step(VectorizedState& s, const Channel& c,
                      const HamiltonianSpec& h, double tau,
                      const TruncationPolicy& policy);

TimeSeries run(VectorizedState state, const Rates& r, const HamiltonianSpec& h,
               const Schedule& sched, const TruncationPolicy& policy);

}  // namespace graphlind
