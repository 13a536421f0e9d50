#include "graphlind/mps.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "graphlind/kernels.hpp"

namespace graphlind {

namespace {

using RMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                           Eigen::RowMajor>;
using CMap = Eigen::Map<const RMat>;

RMat mul(const RMat& a, const RMat& b) {
  RMat c(a.rows(), b.cols());
  kernels::gemm(a.rows(), a.cols(), b.cols(), a.data(), b.data(), c.data(),
                false);
  return c;
}

RMat mul(const CMap& a, const RMat& b) { return mul(RMat(a), b); }

CMap view_ld_r(const Tensor3& t) {
  return CMap(t.v.data(), static_cast<long>(t.l) * t.d, t.r);
}
CMap view_l_dr(const Tensor3& t) {
  return CMap(t.v.data(), t.l, static_cast<long>(t.d) * t.r);
}

Tensor3 from_matrix(const RMat& m, int l, int d, int r) {
  Tensor3 t(l, d, r);
  if (m.size() != static_cast<long>(t.v.size()))
    throw std::logic_error("from_matrix: size mismatch");
  std::memcpy(t.v.data(), m.data(), t.v.size() * sizeof(double));
  return t;
}

// Rank choice for a sorted singular-value list under the policy; fills in
// the relative discarded weight.
int truncate_rank(const Eigen::VectorXd& sv, const TruncationPolicy& p,
                  TruncationReport& rep) {
  const long n = sv.size();
  if (n == 0) throw std::logic_error("truncate_rank: empty spectrum");
  const double total = sv.array().square().sum();
  if (total == 0.0) {
    rep.discarded_weight += 0.0;
    return 1;
  }
  // Noise floor keeps roundoff from inflating the rank.
  const double floor = 1e-14 * sv[0];
  int chi = 1;
  for (long i = 0; i < n; ++i)
    if (sv[i] >= floor) chi = static_cast<int>(i) + 1;
  // Discarded-weight rule: smallest rank whose tail stays within bound.
  double tail = 0.0;
  int chi_dw = chi;
  for (int i = chi - 1; i >= 1; --i) {
    const double next = tail + sv[i] * sv[i];
    if (next > p.max_discarded_weight * total) break;
    tail = next;
    chi_dw = i;
  }
  chi = chi_dw;
  double discarded = 0.0;
  for (long i = chi; i < n; ++i) discarded += sv[i] * sv[i];
  if (chi > p.max_bond) {
    chi = p.max_bond;
    discarded = 0.0;
    for (long i = chi; i < n; ++i) discarded += sv[i] * sv[i];
    if (discarded > p.max_discarded_weight * total) rep.bond_capped = true;
  }
  rep.discarded_weight += discarded / total;
  return chi;
}

struct Split {
  RMat left;   // rows x chi
  RMat right;  // chi x cols
};

// SVD split m = left * right, truncated by policy; the singular values go
// with `right` (left is an isometry).
Split split_left_isometry(const RMat& m, const TruncationPolicy& p,
                          TruncationReport& rep) {
  Eigen::BDCSVD<Eigen::MatrixXd> svd(Eigen::MatrixXd(m),
                                     Eigen::ComputeThinU | Eigen::ComputeThinV);
  const int chi = truncate_rank(svd.singularValues(), p, rep);
  Split s;
  s.left = svd.matrixU().leftCols(chi);
  s.right = svd.singularValues().head(chi).asDiagonal() *
            svd.matrixV().leftCols(chi).transpose();
  return s;
}

// m = left * right with the isometry on the right instead.
Split split_right_isometry(const RMat& m, const TruncationPolicy& p,
                           TruncationReport& rep) {
  Eigen::BDCSVD<Eigen::MatrixXd> svd(Eigen::MatrixXd(m),
                                     Eigen::ComputeThinU | Eigen::ComputeThinV);
  const int chi = truncate_rank(svd.singularValues(), p, rep);
  Split s;
  s.left = svd.matrixU().leftCols(chi) *
           svd.singularValues().head(chi).asDiagonal().toDenseMatrix();
  s.right = svd.matrixV().leftCols(chi).transpose();
  return s;
}

}  // namespace

Mpo Mpo::two_site_gate(int a, int b, int d, const Eigen::MatrixXd& gate) {
  if (a >= b) throw std::invalid_argument("two_site_gate: need a < b");
  if (gate.rows() != d * d || gate.cols() != d * d)
    throw std::invalid_argument("two_site_gate: bad gate size");
  // Split G_{(s t),(s' t')} across the two sites.
  Eigen::MatrixXd k(d * d, d * d);
  for (int s = 0; s < d; ++s)
    for (int sp = 0; sp < d; ++sp)
      for (int t = 0; t < d; ++t)
        for (int tp = 0; tp < d; ++tp)
          k(s * d + sp, t * d + tp) = gate(s * d + t, sp * d + tp);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      k, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  int rank = 1;
  for (long i = 0; i < sv.size(); ++i)
    if (sv[i] > 1e-12 * sv[0]) rank = static_cast<int>(i) + 1;

  Mpo op;
  op.first = a;
  op.last = b;
  op.phys_dim = d;
  Tensor4 wa;
  wa.bl = 1;
  wa.d = d;
  wa.br = rank;
  wa.v.assign(static_cast<size_t>(d) * d * rank, 0.0);
  Tensor4 wb;
  wb.bl = rank;
  wb.d = d;
  wb.br = 1;
  wb.v.assign(static_cast<size_t>(d) * d * rank, 0.0);
  for (int kk = 0; kk < rank; ++kk) {
    const double w = std::sqrt(sv[kk]);
    for (int s = 0; s < d; ++s)
      for (int sp = 0; sp < d; ++sp) {
        wa.at(0, s, sp, kk) = w * svd.matrixU()(s * d + sp, kk);
        wb.at(kk, s, sp, 0) = w * svd.matrixV()(s * d + sp, kk);
      }
  }
  op.tensors.push_back(std::move(wa));
  for (int site = a + 1; site < b; ++site) {
    Tensor4 wi;
    wi.bl = rank;
    wi.d = d;
    wi.br = rank;
    wi.v.assign(static_cast<size_t>(rank) * d * d * rank, 0.0);
    for (int kk = 0; kk < rank; ++kk)
      for (int s = 0; s < d; ++s) wi.at(kk, s, s, kk) = 1.0;
    op.tensors.push_back(std::move(wi));
  }
  op.tensors.push_back(std::move(wb));
  return op;
}

Mpo Mpo::identity(int first, int last, int d) {
  Mpo op;
  op.first = first;
  op.last = last;
  op.phys_dim = d;
  for (int i = first; i <= last; ++i) {
    Tensor4 w;
    w.bl = w.br = 1;
    w.d = d;
    w.v.assign(static_cast<size_t>(d) * d, 0.0);
    for (int s = 0; s < d; ++s) w.at(0, s, s, 0) = 1.0;
    op.tensors.push_back(std::move(w));
  }
  return op;
}

Mps::Mps(int n_sites, int phys_dim) : d_(phys_dim) {
  if (n_sites < 1 || phys_dim < 2)
    throw std::invalid_argument("Mps: bad dimensions");
  tensors_.assign(n_sites, Tensor3(1, phys_dim, 1));
}

Mps Mps::product_state(int n_sites, const Eigen::VectorXd& site_vector) {
  Mps s(n_sites, static_cast<int>(site_vector.size()));
  for (int i = 1; i <= n_sites; ++i)
    for (int x = 0; x < s.d_; ++x) s.site(i).at(0, x, 0) = site_vector[x];
  s.center_ = 1;
  return s;
}

int Mps::bond_dim(int cut) const {
  if (cut < 0 || cut > n_sites())
    throw std::invalid_argument("bond_dim: bad cut");
  if (cut == 0) return tensors_.front().l;
  return tensors_[cut - 1].r;
}

int Mps::max_bond_dim() const {
  int m = 1;
  for (auto& t : tensors_) m = std::max(m, t.r);
  return m;
}

void Mps::canonicalize(int center) {
  const int n = n_sites();
  if (center < 1 || center > n)
    throw std::invalid_argument("canonicalize: bad center");
  for (int i = 1; i < center; ++i) {
    const Tensor3& t = tensors_[i - 1];
    Eigen::MatrixXd m = Eigen::MatrixXd(RMat(view_ld_r(t)));
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
    const int k = static_cast<int>(std::min(m.rows(), m.cols()));
    RMat q = qr.householderQ() * Eigen::MatrixXd::Identity(m.rows(), k);
    RMat rr = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
    Tensor3& next = tensors_[i];
    RMat carried = mul(rr, RMat(view_l_dr(next)));
    tensors_[i - 1] = from_matrix(q, t.l, d_, k);
    tensors_[i] = from_matrix(carried, k, d_, next.r);
  }
  for (int i = n; i > center; --i) {
    const Tensor3& t = tensors_[i - 1];
    Eigen::MatrixXd m = Eigen::MatrixXd(RMat(view_l_dr(t))).transpose();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
    const int k = static_cast<int>(std::min(m.rows(), m.cols()));
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(m.rows(), k);
    Eigen::MatrixXd rr = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
    Tensor3& prev = tensors_[i - 2];
    RMat qt = q.transpose();           // k x (d*r)
    RMat lfac = rr.transpose();        // l x k
    RMat carried = mul(RMat(view_ld_r(prev)), lfac);
    tensors_[i - 1] = from_matrix(qt, k, d_, t.r);
    tensors_[i - 2] = from_matrix(carried, prev.l, d_, k);
  }
  center_ = center;
}

double Mps::inner(const Mps& other) const {
  if (other.n_sites() != n_sites() || other.d_ != d_)
    throw std::invalid_argument("inner: shape mismatch");
  RMat m = RMat::Ones(1, 1);
  for (int i = 1; i <= n_sites(); ++i) {
    const Tensor3& a = site(i);
    const Tensor3& b = other.site(i);
    RMat t = mul(m, RMat(view_l_dr(b)));           // (la, d*rb)
    CMap t2(t.data(), static_cast<long>(a.l) * d_, b.r);
    RMat at = RMat(view_ld_r(a)).transpose();       // (ra, la*d)
    m = mul(at, RMat(t2));
  }
  return m(0, 0);
}

double Mps::norm() const { return std::sqrt(std::max(0.0, inner(*this))); }

Eigen::VectorXd Mps::schmidt_values(int cut) const {
  if (cut < 1 || cut >= n_sites())
    throw std::invalid_argument("schmidt_values: bad cut");
  Mps copy = *this;
  copy.canonicalize(cut);
  Eigen::MatrixXd m = Eigen::MatrixXd(RMat(view_ld_r(copy.site(cut))));
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues();
}

double Mps::osee(int cut) const {
  Eigen::VectorXd sv = schmidt_values(cut);
  Eigen::ArrayXd p = sv.array().square();
  const double total = p.sum();
  if (total <= 0.0) throw std::runtime_error("osee: zero state");
  double s = 0.0;
  for (long i = 0; i < p.size(); ++i) {
    const double q = p[i] / total;
    if (q > 0.0) s -= q * std::log(q);
  }
  return s;
}

TruncationReport Mps::compress(const TruncationPolicy& p) {
  TruncationReport rep;
  canonicalize(1);
  for (int i = 1; i < n_sites(); ++i) {
    const Tensor3& t = tensors_[i - 1];
    Split s = split_left_isometry(RMat(view_ld_r(t)), p, rep);
    const int chi = static_cast<int>(s.left.cols());
    Tensor3& next = tensors_[i];
    RMat carried = mul(s.right, RMat(view_l_dr(next)));
    tensors_[i - 1] = from_matrix(s.left, t.l, d_, chi);
    tensors_[i] = from_matrix(carried, chi, d_, next.r);
  }
  center_ = n_sites();
  return rep;
}

void Mps::apply_single_site(int si, const Eigen::MatrixXd& m) {
  if (si < 1 || si > n_sites())
    throw std::invalid_argument("apply_single_site: bad site");
  if (m.rows() != d_ || m.cols() != d_)
    throw std::invalid_argument("apply_single_site: bad operator size");
  Tensor3& t = tensors_[si - 1];
  RMat mm = m;
  Tensor3 out(t.l, d_, t.r);
  for (int a = 0; a < t.l; ++a) {
    CMap slice(t.v.data() + static_cast<size_t>(a) * d_ * t.r, d_, t.r);
    RMat res = mul(mm, RMat(slice));
    std::memcpy(out.v.data() + static_cast<size_t>(a) * d_ * t.r, res.data(),
                sizeof(double) * d_ * t.r);
  }
  t = std::move(out);
  if (center_ != si) center_ = -1;
}

TruncationReport Mps::apply_two_site(int si, const Eigen::MatrixXd& gate,
                                     const TruncationPolicy& p) {
  if (si < 1 || si + 1 > n_sites())
    throw std::invalid_argument("apply_two_site: bad site");
  if (gate.rows() != d_ * d_ || gate.cols() != d_ * d_)
    throw std::invalid_argument("apply_two_site: bad gate size");
  TruncationReport rep;
  const Tensor3& a = tensors_[si - 1];
  const Tensor3& b = tensors_[si];
  const int l = a.l, r = b.r;
  RMat theta = mul(RMat(view_ld_r(a)), RMat(view_l_dr(b)));  // (l*d, d*r)
  // Permute to (s t) x (l r), apply the gate, permute back.
  RMat x(d_ * d_, static_cast<long>(l) * r);
  for (int li = 0; li < l; ++li)
    for (int s = 0; s < d_; ++s)
      for (int t = 0; t < d_; ++t)
        for (int ri = 0; ri < r; ++ri)
          x(s * d_ + t, static_cast<long>(li) * r + ri) =
              theta(static_cast<long>(li) * d_ + s,
                    static_cast<long>(t) * r + ri);
  RMat y = mul(RMat(gate), x);
  for (int li = 0; li < l; ++li)
    for (int s = 0; s < d_; ++s)
      for (int t = 0; t < d_; ++t)
        for (int ri = 0; ri < r; ++ri)
          theta(static_cast<long>(li) * d_ + s, static_cast<long>(t) * r + ri) =
              y(s * d_ + t, static_cast<long>(li) * r + ri);
  Split s = split_left_isometry(theta, p, rep);
  const int chi = static_cast<int>(s.left.cols());
  tensors_[si - 1] = from_matrix(s.left, l, d_, chi);
  tensors_[si] = from_matrix(s.right, chi, d_, r);
  center_ = (center_ == si || center_ == si + 1) ? si + 1 : -1;
  return rep;
}

TruncationReport Mps::apply_spanning(const Mpo& op, const TruncationPolicy& p) {
  if (op.phys_dim != d_)
    throw std::invalid_argument("apply_spanning: physical dim mismatch");
  if (op.first < 1 || op.last > n_sites() || op.first > op.last ||
      static_cast<int>(op.tensors.size()) != op.last - op.first + 1)
    throw std::invalid_argument("apply_spanning: bad site range");
  TruncationReport rep;
  canonicalize(op.first);
  for (int si = op.first; si <= op.last; ++si) {
    const Mpo::Tensor4& w = op.tensors[si - op.first];
    const Tensor3& a = tensors_[si - 1];
    Tensor3 out(w.bl * a.l, d_, w.br * a.r);
    for (int bb = 0; bb < w.bl; ++bb)
      for (int so = 0; so < d_; ++so)
        for (int sin = 0; sin < d_; ++sin)
          for (int bp = 0; bp < w.br; ++bp) {
            const double c = w.at(bb, so, sin, bp);
            if (c == 0.0) continue;
            for (int li = 0; li < a.l; ++li)
              for (int ri = 0; ri < a.r; ++ri)
                out.at(bb * a.l + li, so, bp * a.r + ri) +=
                    c * a.at(li, sin, ri);
          }
    tensors_[si - 1] = std::move(out);
  }
  // Compress the affected range: right-orthonormalize down to `first`,
  // then truncate sweeping back up.
  for (int si = op.last; si > op.first; --si) {
    const Tensor3& t = tensors_[si - 1];
    Split s = split_right_isometry(RMat(view_l_dr(t)), p, rep);
    const int chi = static_cast<int>(s.right.rows());
    Tensor3& prev = tensors_[si - 2];
    RMat carried = mul(RMat(view_ld_r(prev)), s.left);
    tensors_[si - 1] = from_matrix(s.right, chi, d_, t.r);
    tensors_[si - 2] = from_matrix(carried, prev.l, d_, chi);
  }
  for (int si = op.first; si < op.last; ++si) {
    const Tensor3& t = tensors_[si - 1];
    Split s = split_left_isometry(RMat(view_ld_r(t)), p, rep);
    const int chi = static_cast<int>(s.left.cols());
    Tensor3& next = tensors_[si];
    RMat carried = mul(s.right, RMat(view_l_dr(next)));
    tensors_[si - 1] = from_matrix(s.left, t.l, d_, chi);
    tensors_[si] = from_matrix(carried, chi, d_, next.r);
  }
  center_ = op.last;
  return rep;
}

double Mps::contract_with_site_vectors(
    const std::vector<Eigen::VectorXd>& vectors) const {
  if (static_cast<int>(vectors.size()) != n_sites())
    throw std::invalid_argument("contract_with_site_vectors: size mismatch");
  RMat v = RMat::Ones(1, 1);
  for (int i = 1; i <= n_sites(); ++i) {
    const Tensor3& t = site(i);
    if (vectors[i - 1].size() != d_)
      throw std::invalid_argument("contract_with_site_vectors: bad vector");
    RMat m = RMat::Zero(t.l, t.r);
    for (int s = 0; s < d_; ++s) {
      const double w = vectors[i - 1][s];
      if (w == 0.0) continue;
      for (int a = 0; a < t.l; ++a)
        for (int b = 0; b < t.r; ++b) m(a, b) += w * t.at(a, s, b);
    }
    v = mul(v, m);
  }
  return v(0, 0);
}

Eigen::VectorXd Mps::to_dense() const {
  double logdim = n_sites() * std::log2(double(d_));
  if (logdim > 24.0) throw std::runtime_error("to_dense: state too large");
  RMat v = RMat::Ones(1, 1);
  for (int i = 1; i <= n_sites(); ++i) {
    const Tensor3& t = site(i);
    RMat next = mul(v, RMat(view_l_dr(t)));  // (D, d*r)
    v = RMat(CMap(next.data(), next.rows() * d_, t.r));
  }
  return Eigen::VectorXd(v.col(0));
}

void Mps::save(const std::string& path) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("Mps::save: cannot open " + path);
  const char magic[8] = {'G', 'L', 'M', 'P', 'S', '1', 0, 0};
  f.write(magic, 8);
  auto w32 = [&](int32_t x) { f.write(reinterpret_cast<char*>(&x), 4); };
  const std::string tag =
      d_ == 4 ? "pauli-orthonormal-v1" : "computational-v1";
  w32(static_cast<int32_t>(tag.size()));
  f.write(tag.data(), static_cast<long>(tag.size()));
  w32(n_sites());
  w32(d_);
  for (auto& t : tensors_) {
    w32(t.l);
    w32(t.r);
    f.write(reinterpret_cast<const char*>(t.v.data()),
            static_cast<long>(t.v.size() * sizeof(double)));
  }
  if (!f) throw std::runtime_error("Mps::save: write failed");
}

Mps Mps::load(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("Mps::load: cannot open " + path);
  char magic[8];
  f.read(magic, 8);
  if (!f || std::memcmp(magic, "GLMPS1\0\0", 8) != 0)
    throw std::runtime_error("Mps::load: bad header");
  auto r32 = [&]() {
    int32_t x = 0;
    f.read(reinterpret_cast<char*>(&x), 4);
    return x;
  };
  const int32_t taglen = r32();
  if (taglen < 0 || taglen > 64)
    throw std::runtime_error("Mps::load: bad basis tag");
  std::string tag(taglen, 0);
  f.read(tag.data(), taglen);
  const int n = r32();
  const int d = r32();
  if (!f || n < 1 || d < 2) throw std::runtime_error("Mps::load: bad shape");
  if (d == 4 && tag != "pauli-orthonormal-v1")
    throw std::runtime_error("Mps::load: unsupported basis tag " + tag);
  Mps s(n, d);
  for (int i = 1; i <= n; ++i) {
    const int l = r32(), r = r32();
    if (!f || l < 1 || r < 1) throw std::runtime_error("Mps::load: bad bond");
    Tensor3 t(l, d, r);
    f.read(reinterpret_cast<char*>(t.v.data()),
           static_cast<long>(t.v.size() * sizeof(double)));
    s.tensors_[i - 1] = std::move(t);
  }
  if (!f) throw std::runtime_error("Mps::load: truncated file");
  return s;
}

Mps build_pure_mps(const GraphSpec& g, const TruncationPolicy& p,
                   TruncationReport* report) {
  const int n = g.n_vertices();
  Eigen::VectorXd plus(2);
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  Mps s = Mps::product_state(n, plus);
  Eigen::MatrixXd cz = Eigen::Vector4d(1, 1, 1, -1).asDiagonal();
  TruncationReport rep;
  for (auto& [i, j] : g.edges())
    rep.merge(s.apply_spanning(Mpo::two_site_gate(i, j, 2, cz), p));
  rep.merge(s.compress(p));
  if (report)
    *report = rep;
  else if (rep.bond_capped)
    throw std::runtime_error("build_pure_mps: bond cap exceeded truncation bound");
  return s;
}

VectorizedState vectorize_pure(const Mps& pure) {
  if (pure.phys_dim() != 2)
    throw std::invalid_argument("vectorize_pure: need a qubit MPS");
  const int n = pure.n_sites();

  // Orthogonal change of basis on each squared bond separating the
  // swap-symmetric and swap-antisymmetric pair sectors. In that basis the
  // I/X/Z components are block-diagonal and the Y component (which is
  // purely imaginary on the raw product basis) becomes real and block
  // off-diagonal after a fixed +-i gauge on the antisymmetric sector.
  auto pair_basis = [](int chi) {
    const int dim = chi * chi;
    RMat p = RMat::Zero(dim, dim);
    int row = 0;
    int n_sym = 0;
    for (int a = 0; a < chi; ++a) {
      p(row++, a * chi + a) = 1.0;
      ++n_sym;
    }
    const double inv = 1.0 / std::sqrt(2.0);
    for (int a = 0; a < chi; ++a)
      for (int b = a + 1; b < chi; ++b) {
        p(row, a * chi + b) = inv;
        p(row, b * chi + a) = inv;
        ++row;
        ++n_sym;
      }
    for (int a = 0; a < chi; ++a)
      for (int b = a + 1; b < chi; ++b) {
        p(row, a * chi + b) = inv;
        p(row, b * chi + a) = -inv;
        ++row;
      }
    return std::make_pair(p, n_sym);
  };

  Mps out(n, 4);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int i = 1; i <= n; ++i) {
    const Tensor3& a = pure.site(i);
    const int l = a.l, r = a.r;
    const int l2 = l * l, r2 = r * r;
    // Raw components on the product bond basis (b, b').
    std::array<RMat, 4> raw;  // I, X, Yb, Z with M^Y = i * Yb
    for (auto& m : raw) m = RMat::Zero(l2, r2);
    for (int la = 0; la < l; ++la)
      for (int lb = 0; lb < l; ++lb)
        for (int ra = 0; ra < r; ++ra)
          for (int rb = 0; rb < r; ++rb) {
            const long lr = static_cast<long>(la) * l + lb;
            const long rr = static_cast<long>(ra) * r + rb;
            const double a00 = a.at(la, 0, ra) * a.at(lb, 0, rb);
            const double a11 = a.at(la, 1, ra) * a.at(lb, 1, rb);
            const double a01 = a.at(la, 0, ra) * a.at(lb, 1, rb);
            const double a10 = a.at(la, 1, ra) * a.at(lb, 0, rb);
            raw[0](lr, rr) = inv_sqrt2 * (a00 + a11);
            raw[1](lr, rr) = inv_sqrt2 * (a01 + a10);
            raw[2](lr, rr) = inv_sqrt2 * (a01 - a10);
            raw[3](lr, rr) = inv_sqrt2 * (a00 - a11);
          }
    auto [pl, sym_l] = pair_basis(l);
    auto [pr, sym_r] = pair_basis(r);
    std::array<RMat, 4> rot;
    for (int c = 0; c < 4; ++c) rot[c] = mul(mul(pl, raw[c]), RMat(pr.transpose()));

    Tensor3 t(l2, 4, r2);
    double scale = 0.0;
    for (int c = 0; c < 4; ++c)
      scale = std::max(scale, rot[c].cwiseAbs().maxCoeff());
    const double tol = 1e-10 * std::max(scale, 1.0);
    for (int bl = 0; bl < l2; ++bl)
      for (int br = 0; br < r2; ++br) {
        const bool sl = bl < sym_l, sr = br < sym_r;
        // I, X, Z live in the equal-parity blocks.
        for (auto [comp, axis] : {std::pair{0, 0}, {1, 1}, {3, 3}}) {
          const double v = rot[comp](bl, br);
          if (sl == sr)
            t.at(bl, axis, br) = v;
          else if (std::abs(v) > tol)
            throw std::logic_error("vectorize_pure: parity leak");
        }
        // Y lives in the cross blocks; the gauge flips the lower one.
        const double y = rot[2](bl, br);
        if (sl != sr)
          t.at(bl, 2, br) = sl ? y : -y;
        else if (std::abs(y) > tol)
          throw std::logic_error("vectorize_pure: parity leak (Y)");
      }
    out.site(i) = std::move(t);
  }
  out.compress(TruncationPolicy{});
  return out;
}

double vs_trace(const VectorizedState& s) {
  Eigen::VectorXd id(4);
  id << std::sqrt(2.0), 0, 0, 0;
  return s.contract_with_site_vectors(
      std::vector<Eigen::VectorXd>(s.n_sites(), id));
}

double vs_measure_word(const VectorizedState& s, const PauliWord& w) {
  if (w.n_sites() != s.n_sites())
    throw std::invalid_argument("vs_measure_word: size mismatch");
  std::vector<Eigen::VectorXd> vecs(s.n_sites(), Eigen::VectorXd::Zero(4));
  for (int i = 1; i <= s.n_sites(); ++i)
    vecs[i - 1][static_cast<int>(w.axis_at(i))] = std::sqrt(2.0);
  return s.contract_with_site_vectors(vecs);
}

DenseMatrix vs_extract_reduced(const VectorizedState& s,
                               const std::vector<int>& sites) {
  if (sites.empty() || sites.size() > 4)
    throw std::runtime_error("vs_extract_reduced: need 1..4 sites");
  for (size_t i = 0; i < sites.size(); ++i) {
    if (sites[i] < 1 || sites[i] > s.n_sites())
      throw std::invalid_argument("vs_extract_reduced: site out of range");
    if (i > 0 && sites[i] <= sites[i - 1])
      throw std::invalid_argument("vs_extract_reduced: sites must increase");
  }
  const double sqrt2 = std::sqrt(2.0);
  RMat acc = RMat::Ones(1, 1);  // (4^kept, bond)
  size_t next_kept = 0;
  for (int i = 1; i <= s.n_sites(); ++i) {
    const Tensor3& t = s.site(i);
    if (next_kept < sites.size() && sites[next_kept] == i) {
      ++next_kept;
      RMat grown = mul(acc, RMat(view_l_dr(t)));  // (D, 4*r)
      acc = RMat(CMap(grown.data(), grown.rows() * 4, t.r));
    } else {
      RMat m(t.l, t.r);
      for (int a = 0; a < t.l; ++a)
        for (int b = 0; b < t.r; ++b) m(a, b) = sqrt2 * t.at(a, 0, b);
      acc = mul(acc, m);
    }
  }
  // acc is now the 4^k coefficients on the orthonormal Pauli basis of the
  // kept sites (trace over the rest already folded in).
  const int k = static_cast<int>(sites.size());
  const long dim = 1L << k;
  DenseMatrix rho = DenseMatrix::Zero(dim, dim);
  const double norm = std::pow(2.0, -0.5 * k);
  for (long idx = 0; idx < acc.rows(); ++idx) {
    const double c = acc(idx, 0);
    if (c == 0.0) continue;
    PauliWord w(k);
    long rest = idx;
    for (int q = k; q >= 1; --q) {
      w.set(q, static_cast<PauliAxis>(rest & 3));
      rest >>= 2;
    }
    rho += c * norm * word_to_dense(w);
  }
  return rho;
}

}  // namespace graphlind
