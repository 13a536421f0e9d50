#include "graphlind/pauli.hpp"

#include <sstream>
#include <stdexcept>

namespace graphlind {

namespace {
constexpr Complex kI{0.0, 1.0};

// pauli_mul[a][b] -> (phase exponent of i, result axis) for sigma_a*sigma_b.
struct MulEntry {
  int phase;
  PauliAxis axis;
};

MulEntry single_mul(PauliAxis a, PauliAxis b) {
  if (a == PauliAxis::I) return {0, b};
  if (b == PauliAxis::I) return {0, a};
  if (a == b) return {0, PauliAxis::I};
  // XY = iZ, YZ = iX, ZX = iY; the reversed orders pick up i^3.
  const int ia = static_cast<int>(a), ib = static_cast<int>(b);
  const int ic = 6 - ia - ib;  // the remaining non-identity axis
  const bool cyclic = (ib - ia + 3) % 3 == 1;
  return {cyclic ? 1 : 3, static_cast<PauliAxis>(ic)};
}
}  // namespace

char axis_letter(PauliAxis a) {
  switch (a) {
    case PauliAxis::I: return 'I';
    case PauliAxis::X: return 'X';
    case PauliAxis::Y: return 'Y';
    case PauliAxis::Z: return 'Z';
  }
  throw std::logic_error("bad axis");
}

Eigen::Matrix2cd axis_matrix(PauliAxis a) {
  Eigen::Matrix2cd m;
  switch (a) {
    case PauliAxis::I: m << 1, 0, 0, 1; break;
    case PauliAxis::X: m << 0, 1, 1, 0; break;
    case PauliAxis::Y: m << 0, -kI, kI, 0; break;
    case PauliAxis::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

PauliWord::PauliWord(int n_sites) : n_sites_(n_sites) {
  if (n_sites < 1) throw std::invalid_argument("PauliWord: need n_sites >= 1");
}

PauliWord::PauliWord(int n_sites, std::map<int, PauliAxis> assignments)
    : PauliWord(n_sites) {
  for (auto& [site, axis] : assignments) {
    if (site < 1 || site > n_sites)
      throw std::invalid_argument("PauliWord: site out of range");
    if (axis != PauliAxis::I) assignments_.emplace(site, axis);
  }
}

PauliAxis PauliWord::axis_at(int site) const {
  auto it = assignments_.find(site);
  return it == assignments_.end() ? PauliAxis::I : it->second;
}

void PauliWord::set(int site, PauliAxis a) {
  if (site < 1 || site > n_sites_)
    throw std::invalid_argument("PauliWord: site out of range");
  if (a == PauliAxis::I)
    assignments_.erase(site);
  else
    assignments_[site] = a;
}

int PauliWord::count(PauliAxis a) const {
  int c = 0;
  for (auto& [site, axis] : assignments_)
    if (axis == a) ++c;
  return c;
}

std::string PauliWord::str() const {
  if (assignments_.empty()) return "I";
  std::ostringstream os;
  bool first = true;
  for (auto& [site, axis] : assignments_) {
    if (!first) os << ' ';
    os << axis_letter(axis) << site;
    first = false;
  }
  return os.str();
}

PauliWord PauliWord::parse(const std::string& text, int n_sites) {
  PauliWord w(n_sites);
  std::istringstream is(text);
  std::string tok;
  while (is >> tok) {
    if (tok == "I") continue;
    PauliAxis a;
    switch (tok[0]) {
      case 'X': a = PauliAxis::X; break;
      case 'Y': a = PauliAxis::Y; break;
      case 'Z': a = PauliAxis::Z; break;
      default:
        throw std::invalid_argument("PauliWord: bad token '" + tok + "'");
    }
    int site;
    try {
      site = std::stoi(tok.substr(1));
    } catch (const std::exception&) {
      throw std::invalid_argument("PauliWord: bad token '" + tok + "'");
    }
    if (w.axis_at(site) != PauliAxis::I)
      throw std::invalid_argument("PauliWord: duplicate site in '" + text + "'");
    w.set(site, a);
  }
  return w;
}

PauliWord symmetric_word(int n, int m, int l, int n_sites) {
  if (n < 0 || m < 0 || l < 0)
    throw std::invalid_argument("symmetric_word: negative count");
  if (n + m + l > n_sites)
    throw std::invalid_argument("symmetric_word: counts exceed system size");
  PauliWord w(n_sites);
  int site = 1;
  for (int i = 0; i < n; ++i) w.set(site++, PauliAxis::X);
  for (int i = 0; i < m; ++i) w.set(site++, PauliAxis::Y);
  for (int i = 0; i < l; ++i) w.set(site++, PauliAxis::Z);
  return w;
}

Complex WordProduct::phase() const {
  static const Complex table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return table[phase_exponent & 3];
}

WordProduct multiply_words(const PauliWord& a, const PauliWord& b) {
  if (a.n_sites() != b.n_sites())
    throw std::invalid_argument("multiply_words: size mismatch");
  PauliWord out(a.n_sites());
  int phase = 0;
  for (auto& [site, axis] : a.assignments()) {
    auto [p, c] = single_mul(axis, b.axis_at(site));
    phase += p;
    out.set(site, c);
  }
  for (auto& [site, axis] : b.assignments())
    if (a.axis_at(site) == PauliAxis::I) out.set(site, axis);
  return {phase & 3, out};
}

DenseMatrix word_to_dense(const PauliWord& w) {
  const int n = w.n_sites();
  if (n > 12) throw std::runtime_error("word_to_dense: N > 12");
  const long dim = 1L << n;
  DenseMatrix out = DenseMatrix::Identity(1, 1);
  // Site 1 is the most significant bit of the basis index.
  for (int site = 1; site <= n; ++site) {
    Eigen::Matrix2cd f = axis_matrix(w.axis_at(site));
    DenseMatrix next(out.rows() * 2, out.cols() * 2);
    for (long r = 0; r < out.rows(); ++r)
      for (long c = 0; c < out.cols(); ++c)
        next.block(r * 2, c * 2, 2, 2) = out(r, c) * f;
    out = std::move(next);
  }
  if (out.rows() != dim) throw std::logic_error("word_to_dense: bad dim");
  return out;
}

}  // namespace graphlind
