#include "graphlind/dense.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace graphlind {

namespace {

Eigen::Matrix2d sigma_plus() {
  Eigen::Matrix2d m;
  m << 0, 1, 0, 0;
  return m;
}
Eigen::Matrix2d sigma_minus() {
  Eigen::Matrix2d m;
  m << 0, 0, 1, 0;
  return m;
}
Eigen::Matrix2d sigma_z_real() {
  Eigen::Matrix2d m;
  m << 1, 0, 0, -1;
  return m;
}

// I x ... A ... x I with A at 1-based site.
Eigen::MatrixXd embed(int n, int site, const Eigen::Matrix2d& a) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Identity(1, 1);
  for (int i = 1; i <= n; ++i) {
    const Eigen::Matrix2d f =
        i == site ? a : Eigen::Matrix2d::Identity().eval();
    Eigen::MatrixXd next(out.rows() * 2, out.cols() * 2);
    for (long r = 0; r < out.rows(); ++r)
      for (long c = 0; c < out.cols(); ++c)
        next.block(r * 2, c * 2, 2, 2) = out(r, c) * f;
    out = std::move(next);
  }
  return out;
}

// L += scale * (rowOp (x) colOp^T) on the row-stacked index (r*D + c).
template <typename Mat, typename Scalar>
void add_superop(Mat& l, const Eigen::MatrixXd& row_op,
                 const Eigen::MatrixXd& col_op, Scalar scale) {
  const long d = row_op.rows();
  for (long r = 0; r < d; ++r)
    for (long k = 0; k < d; ++k) {
      if (row_op(r, k) == 0.0) continue;
      const Scalar w = scale * row_op(r, k);
      for (long c = 0; c < d; ++c)
        for (long m = 0; m < d; ++m) {
          const double b = col_op(m, c);  // (colOp^T)(c, m)
          if (b != 0.0) l(r * d + c, k * d + m) += w * b;
        }
    }
}

// Scaled Taylor evaluation of exp(A) v, converged to roundoff.
template <typename Mat, typename Vec>
Vec expm_apply(const Mat& a, Vec v) {
  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  const int segments = std::max(1, static_cast<int>(std::ceil(norm1 / 4.0)));
  const Mat as = a / static_cast<double>(segments);
  for (int s = 0; s < segments; ++s) {
    Vec term = v;
    Vec acc = v;
    for (int k = 1; k < 400; ++k) {
      term = (as * term) / static_cast<double>(k);
      acc += term;
      if (term.norm() <= 1e-18 * acc.norm()) break;
    }
    v = std::move(acc);
  }
  return v;
}

void check_physical(const DenseMatrix& rho) {
  if (rho.rows() != rho.cols())
    throw std::invalid_argument("evolve_dense: non-square state");
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("evolve_dense: non-Hermitian state");
  if (std::abs(rho.trace().real() - 1.0) > 1e-12)
    throw std::invalid_argument("evolve_dense: trace != 1");
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(rho);
  if (es.eigenvalues().minCoeff() < -1e-10)
    throw std::invalid_argument("evolve_dense: state not PSD");
}

int bits_of(long dim) {
  int n = 0;
  while ((1L << n) < dim) ++n;
  if ((1L << n) != dim) throw std::invalid_argument("dimension not 2^N");
  return n;
}

}  // namespace

const Eigen::MatrixXd& Liouvillian::real_matrix() const {
  if (!real_form_) throw std::logic_error("Liouvillian is complex");
  return lr_;
}

const Eigen::MatrixXcd& Liouvillian::complex_matrix() const {
  if (real_form_) throw std::logic_error("Liouvillian is real");
  return lc_;
}

Eigen::VectorXcd Liouvillian::apply(const Eigen::VectorXcd& v) const {
  if (real_form_)
    return lr_ * v.real() + Complex(0, 1) * (lr_ * v.imag());
  return lc_ * v;
}

Liouvillian build_liouvillian(int n, const Rates& r,
                              const HamiltonianSpec& h) {
  if (n < 1 || n > 6)
    throw std::runtime_error("build_liouvillian: N must be 1..6");
  if (h) {
    if (h->a == h->b || h->a < 1 || h->b < 1 || h->a > n || h->b > n)
      throw std::invalid_argument("build_liouvillian: bad Ising pair");
  }
  Liouvillian l;
  l.n_ = n;
  l.rates_ = r;
  l.ham_ = h;
  l.real_form_ = !h.has_value();

  const long d = 1L << n;
  const long sd = d * d;
  Eigen::MatrixXd lr = Eigen::MatrixXd::Zero(sd, sd);

  const Eigen::Matrix2d sp = sigma_plus(), sm = sigma_minus(),
                        sz = sigma_z_real(),
                        id = Eigen::Matrix2d::Identity();
  const Eigen::Matrix2d p0 = sp * sm;  // |0><0|
  const Eigen::Matrix2d p1 = sm * sp;  // |1><1|
  const Eigen::MatrixXd idn = Eigen::MatrixXd::Identity(d, d);

  for (int i = 1; i <= n; ++i) {
    const Eigen::MatrixXd spi = embed(n, i, sp), smi = embed(n, i, sm),
                          szi = embed(n, i, sz), p0i = embed(n, i, p0),
                          p1i = embed(n, i, p1);
    if (r.g0 != 0.0) {
      add_superop(lr, spi, smi, r.g0);  // sigma+ rho sigma-
      add_superop(lr, p1i, idn, -0.5 * r.g0);
      add_superop(lr, idn, p1i, -0.5 * r.g0);
    }
    if (r.g1 != 0.0) {
      add_superop(lr, smi, spi, r.g1);
      add_superop(lr, p0i, idn, -0.5 * r.g1);
      add_superop(lr, idn, p0i, -0.5 * r.g1);
    }
    if (r.g2 != 0.0) {
      add_superop(lr, szi, szi, r.g2);
      add_superop(lr, idn, idn, -r.g2);
    }
  }

  if (!h) {
    l.lr_ = std::move(lr);
    return l;
  }
  Eigen::MatrixXcd lc = lr.cast<Complex>();
  const Eigen::MatrixXd zz =
      h->coupling * (embed(n, h->a, sz) * embed(n, h->b, sz));
  add_superop(lc, zz, idn, Complex(0, -1.0));
  add_superop(lc, idn, zz, Complex(0, 1.0));
  l.lc_ = std::move(lc);
  return l;
}

Eigen::VectorXcd vec_rowmajor(const DenseMatrix& rho) {
  const long d = rho.rows();
  Eigen::VectorXcd v(d * d);
  for (long r = 0; r < d; ++r)
    for (long c = 0; c < d; ++c) v[r * d + c] = rho(r, c);
  return v;
}

DenseMatrix unvec_rowmajor(const Eigen::VectorXcd& v) {
  const long d = static_cast<long>(std::llround(std::sqrt(double(v.size()))));
  if (d * d != v.size()) throw std::invalid_argument("unvec: bad size");
  DenseMatrix rho(d, d);
  for (long r = 0; r < d; ++r)
    for (long c = 0; c < d; ++c) rho(r, c) = v[r * d + c];
  return rho;
}

DenseMatrix evolve_dense(const DenseMatrix& rho0, const Liouvillian& l,
                         double t) {
  if (t < 0) throw std::invalid_argument("evolve_dense: negative time");
  check_physical(rho0);
  if (rho0.rows() * rho0.cols() != l.dim())
    throw std::invalid_argument("evolve_dense: size mismatch");
  if (t == 0.0) return rho0;

  Eigen::VectorXcd v = vec_rowmajor(rho0);
  if (l.is_real()) {
    const Eigen::MatrixXd& lm = l.real_matrix();
    if (l.dim() <= 256) {
      const Eigen::MatrixXd prop = (t * lm).exp();
      Eigen::VectorXd re = prop * v.real(), im = prop * v.imag();
      v = re + Complex(0, 1) * im;
    } else {
      Eigen::MatrixXd a = t * lm;
      Eigen::VectorXd re = expm_apply(a, Eigen::VectorXd(v.real()));
      Eigen::VectorXd im = expm_apply(a, Eigen::VectorXd(v.imag()));
      v = re + Complex(0, 1) * im;
    }
  } else {
    const Eigen::MatrixXcd& lm = l.complex_matrix();
    if (l.dim() <= 256) {
      v = (t * lm).exp() * v;
    } else {
      Eigen::MatrixXcd a = t * lm;
      v = expm_apply(a, v);
    }
  }
  return unvec_rowmajor(v);
}

double dense_expectation(const DenseMatrix& rho, const PauliWord& w) {
  const int n = bits_of(rho.rows());
  if (w.n_sites() != n)
    throw std::invalid_argument("dense_expectation: size mismatch");
  long flip = 0;
  for (auto& [site, axis] : w.assignments())
    if (axis != PauliAxis::Z) flip |= 1L << (n - site);
  Complex total = 0.0;
  const long d = rho.rows();
  for (long r = 0; r < d; ++r) {
    const long k = r ^ flip;
    Complex phase = 1.0;
    for (auto& [site, axis] : w.assignments()) {
      const bool bit = r & (1L << (n - site));
      if (axis == PauliAxis::Z && bit) phase = -phase;
      if (axis == PauliAxis::Y) phase *= bit ? Complex(0, -1) : Complex(0, 1);
    }
    total += rho(r, k) * phase;  // rho_{r,k} <k|W|r> with k = r ^ flip
  }
  return total.real();
}

DenseMatrix dense_partial_trace(const DenseMatrix& rho,
                                const std::vector<int>& keep_sites) {
  const int n = bits_of(rho.rows());
  for (size_t i = 0; i < keep_sites.size(); ++i) {
    if (keep_sites[i] < 1 || keep_sites[i] > n)
      throw std::invalid_argument("dense_partial_trace: site out of range");
    if (i > 0 && keep_sites[i] <= keep_sites[i - 1])
      throw std::invalid_argument("dense_partial_trace: sites must increase");
  }
  const int k = static_cast<int>(keep_sites.size());
  std::vector<int> env_sites;
  for (int s = 1; s <= n; ++s)
    if (std::find(keep_sites.begin(), keep_sites.end(), s) == keep_sites.end())
      env_sites.push_back(s);
  auto assemble = [&](long kept_bits, long env_bits) {
    long idx = 0;
    for (int i = 0; i < k; ++i)
      if (kept_bits & (1L << (k - 1 - i))) idx |= 1L << (n - keep_sites[i]);
    for (size_t i = 0; i < env_sites.size(); ++i)
      if (env_bits & (1L << (env_sites.size() - 1 - i)))
        idx |= 1L << (n - env_sites[i]);
    return idx;
  };
  const long dk = 1L << k, de = 1L << env_sites.size();
  DenseMatrix out = DenseMatrix::Zero(dk, dk);
  for (long a = 0; a < dk; ++a)
    for (long b = 0; b < dk; ++b)
      for (long e = 0; e < de; ++e)
        out(a, b) += rho(assemble(a, e), assemble(b, e));
  return out;
}

double dense_osee(const DenseMatrix& rho, int cut) {
  const int n = bits_of(rho.rows());
  if (cut < 1 || cut >= n) throw std::invalid_argument("dense_osee: bad cut");
  const long d = rho.rows();
  // Site-ordered vectorization: one base-4 digit (2*r_i + c_i) per site.
  const long rows = 1L << (2 * cut), cols = 1L << (2 * (n - cut));
  Eigen::MatrixXcd m(rows, cols);
  for (long r = 0; r < d; ++r)
    for (long c = 0; c < d; ++c) {
      long left = 0, right = 0;
      for (int s = 1; s <= n; ++s) {
        const int digit = 2 * ((r >> (n - s)) & 1) + ((c >> (n - s)) & 1);
        if (s <= cut)
          left = left * 4 + digit;
        else
          right = right * 4 + digit;
      }
      m(left, right) = rho(r, c);
    }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  Eigen::VectorXd p = svd.singularValues().array().square();
  const double total = p.sum();
  if (total <= 0) throw std::invalid_argument("dense_osee: zero state");
  double s = 0.0;
  for (long i = 0; i < p.size(); ++i) {
    const double q = p[i] / total;
    if (q > 0) s -= q * std::log(q);
  }
  return s;
}

Eigen::VectorXd dense_pauli_coeffs(const DenseMatrix& rho) {
  const int n = bits_of(rho.rows());
  const long count = 1L << (2 * n);
  const double norm = std::pow(2.0, -0.5 * n);
  Eigen::VectorXd out(count);
  for (long idx = 0; idx < count; ++idx) {
    PauliWord w(n);
    long rest = idx;
    for (int s = n; s >= 1; --s) {
      w.set(s, static_cast<PauliAxis>(rest & 3));
      rest >>= 2;
    }
    out[idx] = dense_expectation(rho, w) * norm;
  }
  return out;
}

DenseMatrix pure_density(const Eigen::VectorXcd& psi) {
  return psi * psi.adjoint();
}

}  // namespace graphlind
