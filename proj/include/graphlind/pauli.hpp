#pragma once

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <string>

namespace graphlind {

using Complex = std::complex<double>;
using DenseMatrix = Eigen::MatrixXcd;

enum class PauliAxis : int { I = 0, X = 1, Y = 2, Z = 3 };

char axis_letter(PauliAxis a);

// The 2x2 matrix of a single Pauli axis.
Eigen::Matrix2cd axis_matrix(PauliAxis a);

// A product of single-qubit Pauli operators on an N-site register.
// Sites are 1-based; absent sites carry the identity.
class PauliWord {
 public:
  explicit PauliWord(int n_sites);
  PauliWord(int n_sites, std::map<int, PauliAxis> assignments);

  int n_sites() const { return n_sites_; }
  const std::map<int, PauliAxis>& assignments() const { return assignments_; }
  PauliAxis axis_at(int site) const;  // identity if unassigned
  void set(int site, PauliAxis a);    // setting I erases the entry
  bool is_identity() const { return assignments_.empty(); }

  // Counts of X, Y, Z factors.
  int count(PauliAxis a) const;

  // "X1 Z2 Z3" or "I" for the identity.
  std::string str() const;
  static PauliWord parse(const std::string& text, int n_sites);

  bool operator==(const PauliWord&) const = default;

 private:
  int n_sites_;
  std::map<int, PauliAxis> assignments_;
};

// Canonical word with X on sites 1..n, Y on n+1..n+m, Z on n+m+1..n+m+l.
PauliWord symmetric_word(int n, int m, int l, int n_sites);

// Sitewise product a*b with the accumulated phase, a fourth root of unity.
// The phase is returned as i^k with k in {0,1,2,3}.
struct WordProduct {
  int phase_exponent;  // product phase = i^phase_exponent
  PauliWord word;
  Complex phase() const;
};
WordProduct multiply_words(const PauliWord& a, const PauliWord& b);

// Dense 2^N x 2^N realization; guarded at N <= 12.
DenseMatrix word_to_dense(const PauliWord& w);

}  // namespace graphlind
