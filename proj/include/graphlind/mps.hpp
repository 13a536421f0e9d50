#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "graphlind/graph.hpp"
#include "graphlind/pauli.hpp"

namespace graphlind {

// Rank-3 site tensor (left bond, physical, right bond), real entries,
// index (a, s, b) -> (a*d + s)*r + b.
struct Tensor3 {
  int l = 1, d = 1, r = 1;
  std::vector<double> v;

  Tensor3() = default;
  Tensor3(int l_, int d_, int r_) : l(l_), d(d_), r(r_) {
    v.assign(static_cast<size_t>(l) * d * r, 0.0);
  }
  double& at(int a, int s, int b) {
    return v[(static_cast<size_t>(a) * d + s) * r + b];
  }
  double at(int a, int s, int b) const {
    return v[(static_cast<size_t>(a) * d + s) * r + b];
  }
};

struct TruncationPolicy {
  double max_discarded_weight = 1e-16;
  int max_bond = 64;
};

// Accumulated over an operation; discarded weight is relative to the
// total squared Schmidt weight of each truncated bond.
struct TruncationReport {
  double discarded_weight = 0.0;
  bool bond_capped = false;  // max_bond forced more loss than the bound

  void merge(const TruncationReport& o) {
    discarded_weight += o.discarded_weight;
    bond_capped = bond_capped || o.bond_capped;
  }
};

// MPO acting on sites [first, last] of a chain; identity elsewhere.
// Tensor index (bl, s_out, s_in, br).
struct Mpo {
  int first = 1, last = 1, phys_dim = 2;
  struct Tensor4 {
    int bl = 1, d = 1, br = 1;
    std::vector<double> v;  // ((bl*d + s_out)*d + s_in)*br + b
    double& at(int a, int so, int si, int b) {
      return v[((static_cast<size_t>(a) * d + so) * d + si) * br + b];
    }
    double at(int a, int so, int si, int b) const {
      return v[((static_cast<size_t>(a) * d + so) * d + si) * br + b];
    }
  };
  std::vector<Tensor4> tensors;  // tensors[i] acts on site first+i

  // Two-site gate (d^2 x d^2, index s_a*d + s_b) spanning [a, b] with
  // identity pass-through in between.
  static Mpo two_site_gate(int a, int b, int d, const Eigen::MatrixXd& gate);
  static Mpo identity(int first, int last, int d);
};

// Real-valued MPS with arbitrary physical dimension. Used both for pure
// states (d = 2) and for vectorized density matrices (d = 4) in the
// orthonormal Pauli site basis {sigma^a / sqrt(2)}.
class Mps {
 public:
  Mps(int n_sites, int phys_dim);

  // Product state with the same site vector everywhere.
  static Mps product_state(int n_sites, const Eigen::VectorXd& site_vector);

  int n_sites() const { return static_cast<int>(tensors_.size()); }
  int phys_dim() const { return d_; }
  Tensor3& site(int i) { return tensors_[i - 1]; }  // 1-based
  const Tensor3& site(int i) const { return tensors_[i - 1]; }

  int bond_dim(int cut) const;  // bond between sites cut and cut+1
  int max_bond_dim() const;
  int center() const { return center_; }  // -1 when unknown

  void canonicalize(int center);
  double norm() const;
  double inner(const Mps& other) const;

  // Schmidt values across cut | cut+1, sorted descending.
  Eigen::VectorXd schmidt_values(int cut) const;
  double osee(int cut) const;

  // Sweep compression obeying the policy.
  TruncationReport compress(const TruncationPolicy& p);

  void apply_single_site(int site, const Eigen::MatrixXd& m);
  TruncationReport apply_two_site(int site, const Eigen::MatrixXd& gate,
                                  const TruncationPolicy& p);
  TruncationReport apply_spanning(const Mpo& op, const TruncationPolicy& p);

  // Full contraction against one vector per site.
  double contract_with_site_vectors(
      const std::vector<Eigen::VectorXd>& vectors) const;

  // Dense amplitude vector, guarded at d^N <= 2^24.
  Eigen::VectorXd to_dense() const;

  void save(const std::string& path) const;
  static Mps load(const std::string& path);

 private:
  int d_;
  int center_ = -1;
  std::vector<Tensor3> tensors_;
};

using VectorizedState = Mps;  // d = 4, Pauli-orthonormal basis

// Pure graph state |g> as a d = 2 MPS (CZ gates on |+...+>, long-range
// edges via spanning bond-2 operators).
Mps build_pure_mps(const GraphSpec& g, const TruncationPolicy& p = {},
                   TruncationReport* report = nullptr);

// |rho>> for rho = |psi><psi| from a real pure-state MPS; output tensors
// are real and per-site bonds are the squares of the input bonds.
VectorizedState vectorize_pure(const Mps& pure);

// Trace, Pauli-word expectation and reduced density matrices of a
// vectorized state.
double vs_trace(const VectorizedState& s);
double vs_measure_word(const VectorizedState& s, const PauliWord& w);
DenseMatrix vs_extract_reduced(const VectorizedState& s,
                               const std::vector<int>& sites);

}  // namespace graphlind
