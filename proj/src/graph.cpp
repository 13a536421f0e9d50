#include "graphlind/graph.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace graphlind {

GraphSpec::GraphSpec(int n_vertices, std::set<std::pair<int, int>> edges)
    : n_(n_vertices) {
  if (n_ < 2) throw std::invalid_argument("GraphSpec: need N >= 2");
  for (auto [i, j] : edges) {
    if (i == j) throw std::invalid_argument("GraphSpec: self-loop");
    if (i > j) std::swap(i, j);
    if (i < 1 || j > n_)
      throw std::invalid_argument("GraphSpec: edge vertex out of range");
    if (!edges_.emplace(i, j).second)
      throw std::invalid_argument("GraphSpec: duplicate edge");
  }
}

std::set<int> GraphSpec::neighbors(int i) const {
  if (i < 1 || i > n_)
    throw std::invalid_argument("GraphSpec: vertex out of range");
  std::set<int> out;
  for (auto& [a, b] : edges_) {
    if (a == i) out.insert(b);
    if (b == i) out.insert(a);
  }
  return out;
}

std::string GraphSpec::serialize() const {
  std::ostringstream os;
  os << n_ << '\n';
  for (auto& [i, j] : edges_) os << i << ' ' << j << '\n';
  return os.str();
}

GraphSpec GraphSpec::parse(const std::string& text) {
  std::istringstream is(text);
  int n;
  if (!(is >> n)) throw std::invalid_argument("GraphSpec: missing N");
  std::set<std::pair<int, int>> edges;
  int i, j;
  while (is >> i >> j) edges.emplace(i, j);
  if (!is.eof() && is.fail() && !is.bad()) {
    // trailing garbage that is not an edge pair
    is.clear();
    std::string rest;
    if (is >> rest) throw std::invalid_argument("GraphSpec: bad edge line");
  }
  return GraphSpec(n, std::move(edges));
}

GraphSpec GraphSpec::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("GraphSpec: cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse(ss.str());
}

GraphSpec make_complete(int n) {
  std::set<std::pair<int, int>> e;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) e.emplace(i, j);
  return GraphSpec(n, std::move(e));
}

GraphSpec make_ring(int n) {
  if (n < 3) throw std::invalid_argument("make_ring: need N >= 3");
  std::set<std::pair<int, int>> e;
  for (int i = 1; i < n; ++i) e.emplace(i, i + 1);
  e.emplace(1, n);
  return GraphSpec(n, std::move(e));
}

GraphSpec make_star(int n) {
  std::set<std::pair<int, int>> e;
  for (int j = 2; j <= n; ++j) e.emplace(1, j);
  return GraphSpec(n, std::move(e));
}

GraphSpec graph_from_name(const std::string& name, int n) {
  if (name == "complete") return make_complete(n);
  if (name == "ring") return make_ring(n);
  if (name == "star") return make_star(n);
  return GraphSpec::load(name);
}

StateVector build_state_vector(const GraphSpec& g) {
  const int n = g.n_vertices();
  if (n > 20) throw std::runtime_error("build_state_vector: N > 20");
  const long dim = 1L << n;
  StateVector psi = StateVector::Constant(dim, std::pow(2.0, -0.5 * n));
  for (auto& [i, j] : g.edges()) {
    const long mi = 1L << (n - i);  // site 1 is the most significant bit
    const long mj = 1L << (n - j);
    for (long b = 0; b < dim; ++b)
      if ((b & mi) && (b & mj)) psi[b] = -psi[b];
  }
  return psi;
}

PauliWord stabilizer(const GraphSpec& g, int vertex) {
  PauliWord w(g.n_vertices());
  w.set(vertex, PauliAxis::X);
  for (int j : g.neighbors(vertex)) w.set(j, PauliAxis::Z);
  return w;
}

}  // namespace graphlind
