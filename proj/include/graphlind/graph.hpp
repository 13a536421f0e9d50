#pragma once

#include <Eigen/Dense>
#include <set>
#include <string>
#include <utility>

#include "graphlind/pauli.hpp"

namespace graphlind {

using StateVector = Eigen::VectorXcd;

// Undirected simple graph on vertices 1..N.
class GraphSpec {
 public:
  GraphSpec(int n_vertices, std::set<std::pair<int, int>> edges);

  int n_vertices() const { return n_; }
  const std::set<std::pair<int, int>>& edges() const { return edges_; }
  std::set<int> neighbors(int i) const;

  // Text format: first line "N", then one "i j" edge per line.
  std::string serialize() const;
  static GraphSpec parse(const std::string& text);
  static GraphSpec load(const std::string& path);

 private:
  int n_;
  std::set<std::pair<int, int>> edges_;  // stored with i < j
};

GraphSpec make_complete(int n);
GraphSpec make_ring(int n);
GraphSpec make_star(int n);

// Named graph ("complete"|"ring"|"star") or a file path.
GraphSpec graph_from_name(const std::string& name, int n);

// Dense |g> = prod CZ(i,j) |+...+>; guarded at N <= 20.
StateVector build_state_vector(const GraphSpec& g);

// S_i = X_i prod_{j ~ i} Z_j.
PauliWord stabilizer(const GraphSpec& g, int vertex);

}  // namespace graphlind
