#include "graphlind/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace graphlind {

Rates rates_from_g(double g0, double g1, double g2) {
  if (g0 < 0 || g1 < 0 || g2 < 0)
    throw std::invalid_argument("rates_from_g: negative rate");
  Rates r;
  r.g0 = g0;
  r.g1 = g1;
  r.g2 = g2;
  r.alpha = 0.5 * (g0 + g1) + 2.0 * g2;
  r.beta = g0 + g1;
  r.gamma = g0 - g1;
  return r;
}

Rates builtin_case(int index) {
  switch (index) {
    case 1: return rates_from_g(1, 0, 0);     // spontaneous emission only
    case 2: return rates_from_g(0, 0, 1);     // pure dephasing
    case 3: return rates_from_g(0.9, 0.1, 0.1);
    case 4: return rates_from_g(0.6, 0.4, 0.25);
    case 5: return rates_from_g(1, 1, 1);     // infinite T with dephasing
    default:
      throw std::invalid_argument("builtin_case: index must be 1..5");
  }
}

WordSignature signature_of(const PauliWord& w) {
  return {w.count(PauliAxis::X), w.count(PauliAxis::Y), w.count(PauliAxis::Z),
          w.n_sites()};
}

namespace oracle {

namespace {
void check_sig(const WordSignature& s) {
  if (s.n < 0 || s.m < 0 || s.l < 0 || s.n + s.m + s.l > s.n_sites)
    throw std::invalid_argument("WordSignature: invalid counts");
}

// <Z>(t) = (gamma/beta)(1 - e^{-beta t}); beta = 0 forces gamma = 0 and
// the whole factor vanishes.
double zeta(double t, const Rates& r, bool steady) {
  if (r.beta == 0.0) return 0.0;
  if (steady) return r.gamma / r.beta;
  return r.gamma / r.beta * (1.0 - std::exp(-r.beta * t));
}
}  // namespace

double initial_expectation(const WordSignature& sig) {
  check_sig(sig);
  const auto [n, m, l, N] = sig;
  if (n == 0 && m % 2 == 0 && l == 0) return 1.0;  // includes the identity
  if (m == 0 && n % 2 == 1 && n + l == N) return (n / 2) % 2 ? -1.0 : 1.0;
  return 0.0;
}

double expectation(const WordSignature& sig, double t, const Rates& r,
                   bool steady_state) {
  check_sig(sig);
  if (t < 0) throw std::invalid_argument("expectation: negative time");
  const auto [n, m, l, N] = sig;
  if (n == 0 && m % 2 == 0) {
    // <Y^m Z^l> = zeta^l e^{-alpha m t}
    double v = std::pow(zeta(t, r, steady_state), l);
    if (m > 0)
      v *= steady_state ? 0.0 : std::exp(-r.alpha * m * t);
    return v;
  }
  if (m == 0 && n % 2 == 1 && n + l == N) {
    if (steady_state) return 0.0;
    const double rate = n * (r.alpha - r.beta) + N * r.beta;
    const double sign = (n / 2) % 2 ? -1.0 : 1.0;
    return sign * std::exp(-rate * t);
  }
  return 0.0;
}

DenseMatrix reduced_density(int k, double t, const Rates& r, int n_sites) {
  if (k != 2 && k != 3)
    throw std::invalid_argument("reduced_density: k must be 2 or 3");
  if (n_sites <= k)
    throw std::invalid_argument("reduced_density: requires N > k");
  if (t < 0) throw std::invalid_argument("reduced_density: negative time");
  const double z = zeta(t, r, false);
  const double zp = 1.0 + z, zm = 1.0 - z;
  const double y2 = std::exp(-2.0 * r.alpha * t);
  if (k == 2) {
    DenseMatrix rho = DenseMatrix::Zero(4, 4);
    rho(0, 0) = zp * zp;
    rho(1, 1) = rho(2, 2) = zp * zm;
    rho(3, 3) = zm * zm;
    rho(0, 3) = rho(3, 0) = -y2;
    rho(1, 2) = rho(2, 1) = y2;
    return rho / 4.0;
  }
  DenseMatrix rho = DenseMatrix::Zero(8, 8);
  // Diagonal: z_+^(#0 bits) z_-^(#1 bits).
  for (unsigned b = 0; b < 8; ++b) {
    const int ones = __builtin_popcount(b);
    rho(b, b) = std::pow(zp, 3 - ones) * std::pow(zm, ones);
  }
  // Off-diagonal: elements connecting states differing on exactly two
  // qubits carry +-y^2 z_+- from the <YY(Z+-1)/...> correlations.
  for (unsigned a = 0; a < 8; ++a)
    for (unsigned b = 0; b < 8; ++b) {
      const unsigned d = a ^ b;
      if (__builtin_popcount(d) != 2) continue;
      // The untouched qubit contributes z_+ (state 0) or z_- (state 1);
      // the flipped pair contributes -y^2 if both flips go the same way
      // (00 <-> 11) and +y^2 otherwise (01 <-> 10).
      const bool aligned = (a & d) == d || (a & d) == 0;
      const unsigned spectator = (~d) & 7u;
      const bool spectator_one = a & spectator;
      rho(a, b) = (aligned ? -y2 : y2) * (spectator_one ? zm : zp);
    }
  return rho / 8.0;
}

double general_reduced_element(int k, unsigned row_bits, unsigned col_bits,
                               double t, const Rates& r, int n_sites) {
  if (k < 1 || k > 6)
    throw std::invalid_argument("general_reduced_element: k must be 1..6");
  if (n_sites <= k)
    throw std::invalid_argument("general_reduced_element: requires N > k");
  // Element (row, col) = Tr[rho |col><row|]; per kept site the factor is
  // |c><r| = (I + Z)/2, (I - Z)/2, sigma^+ or sigma^-. Expand the product
  // into 2^k Pauli words and sum the closed-form expectation values.
  Complex total = 0.0;
  for (unsigned choice = 0; choice < (1u << k); ++choice) {
    Complex coeff = 1.0;
    int n = 0, m = 0, l = 0;
    for (int q = 0; q < k; ++q) {
      const unsigned bit = 1u << (k - 1 - q);
      const bool rb = row_bits & bit, cb = col_bits & bit;
      const bool second = choice & bit;  // pick the second term of the pair
      if (rb == cb) {
        // (I +- Z)/2
        coeff *= 0.5;
        if (second) {
          ++l;
          if (rb) coeff *= -1.0;
        }
      } else {
        // sigma^+ = (X + iY)/2 for |0><1|, sigma^- = (X - iY)/2 for |1><0|
        coeff *= 0.5;
        if (second) {
          ++m;
          coeff *= Complex(0.0, cb ? -1.0 : 1.0);
        } else {
          ++n;
        }
      }
    }
    if (coeff != Complex(0.0))
      total += coeff * expectation({n, m, l, n_sites}, t, r);
  }
  if (std::abs(total.imag()) > 1e-12)
    throw std::logic_error("general_reduced_element: non-real element");
  return total.real();
}

DenseMatrix general_reduced_matrix(int k, double t, const Rates& r,
                                   int n_sites) {
  const unsigned dim = 1u << k;
  DenseMatrix rho(dim, dim);
  for (unsigned a = 0; a < dim; ++a)
    for (unsigned b = 0; b < dim; ++b)
      rho(a, b) = general_reduced_element(k, a, b, t, r, n_sites);
  return rho;
}

double min_ppt_eigenvalue(const DenseMatrix& rho, int split_size) {
  const long dim = rho.rows();
  if (rho.cols() != dim || (rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("min_ppt_eigenvalue: non-Hermitian input");
  int k = 0;
  while ((1L << k) < dim) ++k;
  if ((1L << k) != dim || split_size < 1 || split_size >= k)
    throw std::invalid_argument("min_ppt_eigenvalue: bad split");
  const long da = 1L << split_size, db = dim / da;
  DenseMatrix pt(dim, dim);
  for (long ra = 0; ra < da; ++ra)
    for (long rb = 0; rb < db; ++rb)
      for (long ca = 0; ca < da; ++ca)
        for (long cb = 0; cb < db; ++cb)
          pt(ra * db + rb, ca * db + cb) = rho(ca * db + rb, ra * db + cb);
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(pt);
  return es.eigenvalues().minCoeff();
}

}  // namespace oracle
}  // namespace graphlind
