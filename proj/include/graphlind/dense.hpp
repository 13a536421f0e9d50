#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "graphlind/oracle.hpp"
#include "graphlind/pauli.hpp"

namespace graphlind {

// Optional H = coupling * Z_a Z_b.
struct IsingPair {
  int a = 0, b = 0;
  double coupling = 1.0;
};
using HamiltonianSpec = std::optional<IsingPair>;

// Brute-force Liouvillian on the row-stacked vectorization of rho.
// Real-valued whenever the Hamiltonian is absent (all jump operators are
// real matrices); complex otherwise.
class Liouvillian {
 public:
  int n_sites() const { return n_; }
  long dim() const { return 1L << (2 * n_); }
  bool is_real() const { return real_form_; }
  const Rates& rates() const { return rates_; }
  const HamiltonianSpec& hamiltonian() const { return ham_; }
  const Eigen::MatrixXd& real_matrix() const;
  const Eigen::MatrixXcd& complex_matrix() const;

  // Action on a row-stacked vectorized density matrix.
  Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const;

  friend Liouvillian build_liouvillian(int n, const Rates& r,
                                       const HamiltonianSpec& h);

 private:
  int n_ = 0;
  Rates rates_;
  HamiltonianSpec ham_;
  bool real_form_ = true;
  Eigen::MatrixXd lr_;
  Eigen::MatrixXcd lc_;
};

Liouvillian build_liouvillian(int n, const Rates& r, const HamiltonianSpec& h);

// exp(tL) applied to rho0. Uses dense Pade scaling-and-squaring for
// dimensions up to 256 and a scaled Taylor evaluation of the exponential
// acting on the vectorized state above that (both exact to roundoff).
DenseMatrix evolve_dense(const DenseMatrix& rho0, const Liouvillian& l,
                         double t);

double dense_expectation(const DenseMatrix& rho, const PauliWord& w);

// keep_sites are 1-based and strictly increasing.
DenseMatrix dense_partial_trace(const DenseMatrix& rho,
                                const std::vector<int>& keep_sites);

// OSEE of the site-ordered vectorization across cut | cut+1.
double dense_osee(const DenseMatrix& rho, int cut);

// Row-stacked vectorization helpers.
Eigen::VectorXcd vec_rowmajor(const DenseMatrix& rho);
DenseMatrix unvec_rowmajor(const Eigen::VectorXcd& v);

// Coefficients of rho in the orthonormal Pauli product basis
// {sigma^a / sqrt(2)}^N, indexed base-4 with site 1 the most significant
// digit and digit order (I, X, Y, Z).
Eigen::VectorXd dense_pauli_coeffs(const DenseMatrix& rho);

// Density matrix of a pure state.
DenseMatrix pure_density(const Eigen::VectorXcd& psi);

}  // namespace graphlind
