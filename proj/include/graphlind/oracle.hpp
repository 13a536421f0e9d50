#pragma once

#include <Eigen/Dense>

#include "graphlind/pauli.hpp"

namespace graphlind {

// Dissipation rates (g0, g1, g2) and the derived combinations that govern
// every closed-form expression: alpha the transverse (X,Y) decay rate,
// beta the longitudinal relaxation rate, gamma the drive fixing the
// steady-state <Z> = gamma/beta.
struct Rates {
  double g0 = 0, g1 = 0, g2 = 0;
  double alpha = 0, beta = 0, gamma = 0;
};

Rates rates_from_g(double g0, double g1, double g2);

// The five built-in parameter cases (1-based).
Rates builtin_case(int index);

// Signature (n, m, l) = counts of X, Y, Z in a Pauli word of N sites.
struct WordSignature {
  int n = 0, m = 0, l = 0;
  int n_sites = 0;
};

WordSignature signature_of(const PauliWord& w);

namespace oracle {

// <X^n Y^m Z^l> on the complete-graph state at t = 0.
double initial_expectation(const WordSignature& sig);

// <X^n Y^m Z^l>(t) for the complete-graph initial state. When
// steady_state is set, returns the t -> infinity limit instead of
// evaluating at t.
double expectation(const WordSignature& sig, double t, const Rates& r,
                   bool steady_state = false);

// The closed-form rho_2 / rho_3 (k in {2,3}); defined for N > k only.
DenseMatrix reduced_density(int k, double t, const Rates& r, int n_sites);

// Arbitrary reduced-density element for k <= 6 kept qubits, by expanding
// |col><row| into Pauli words. Bit 0 of rowBits/colBits is the last kept
// qubit (site k).
double general_reduced_element(int k, unsigned row_bits, unsigned col_bits,
                               double t, const Rates& r, int n_sites);

// Full k-qubit reduced matrix assembled from general_reduced_element.
DenseMatrix general_reduced_matrix(int k, double t, const Rates& r,
                                   int n_sites);

// Minimum eigenvalue of the partial transpose over the first split_size
// qubits of a Hermitian unit-trace matrix.
double min_ppt_eigenvalue(const DenseMatrix& rho, int split_size);

}  // namespace oracle

}  // namespace graphlind
