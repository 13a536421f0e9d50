#include <cmath>

#include "doctest.h"
#include "graphlind/graph.hpp"

using namespace graphlind;

TEST_CASE("named graph constructors") {
  CHECK(make_complete(4).edges().size() == 6);
  GraphSpec ring = make_ring(4);
  std::set<std::pair<int, int>> expect{{1, 2}, {2, 3}, {3, 4}, {1, 4}};
  CHECK(ring.edges() == expect);
  GraphSpec star = make_star(3);
  std::set<std::pair<int, int>> star_expect{{1, 2}, {1, 3}};
  CHECK(star.edges() == star_expect);
  CHECK_THROWS(make_ring(2));
  CHECK_THROWS(make_complete(1));
}

TEST_CASE("GraphSpec validation and text form") {
  CHECK_THROWS(GraphSpec(3, {{1, 1}}));  // self loop
  CHECK_THROWS(GraphSpec(3, {{1, 4}}));  // vertex out of range
  GraphSpec g(5, {{2, 1}, {3, 5}});
  CHECK(g.neighbors(1) == std::set<int>{2});
  CHECK(g.neighbors(4).empty());
  GraphSpec back = GraphSpec::parse(g.serialize());
  CHECK(back.n_vertices() == 5);
  CHECK(back.edges() == g.edges());
  CHECK_THROWS(GraphSpec::parse("not a graph"));
}

TEST_CASE("build_state_vector small cases") {
  // One CZ on |++>: amplitudes (1,1,1,-1)/2.
  StateVector v2 = build_state_vector(make_complete(2));
  CHECK(v2[0].real() == doctest::Approx(0.5));
  CHECK(v2[1].real() == doctest::Approx(0.5));
  CHECK(v2[2].real() == doctest::Approx(0.5));
  CHECK(v2[3].real() == doctest::Approx(-0.5));

  StateVector plain = build_state_vector(GraphSpec(2, {}));
  for (int i = 0; i < 4; ++i) CHECK(plain[i].real() == doctest::Approx(0.5));

  // Complete graph N=3: sign = parity of the number of 1-pairs.
  StateVector v3 = build_state_vector(make_complete(3));
  for (int b = 0; b < 8; ++b) {
    const int ones = __builtin_popcount(b);
    const int pairs = ones * (ones - 1) / 2;
    const double expect = (pairs % 2 ? -1.0 : 1.0) / std::sqrt(8.0);
    CHECK(v3[b].real() == doctest::Approx(expect));
  }
  CHECK(v3.norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("stabilizer words") {
  CHECK(stabilizer(make_complete(4), 2).str() == "Z1 X2 Z3 Z4");
  CHECK(stabilizer(make_ring(5), 2).str() == "Z1 X2 Z3");
  CHECK(stabilizer(make_star(4), 1).str() == "X1 Z2 Z3 Z4");
  CHECK_THROWS(stabilizer(make_complete(4), 5));
}

TEST_CASE("stabilizers fix the graph state") {
  for (int n : {3, 5, 8}) {
    for (const auto& g : {make_complete(n), make_ring(n), make_star(n)}) {
      StateVector psi = build_state_vector(g);
      for (int i = 1; i <= n; ++i) {
        StateVector fixed = word_to_dense(stabilizer(g, i)) * psi;
        CHECK((fixed - psi).cwiseAbs().maxCoeff() < 1e-10);
      }
    }
  }
}

TEST_CASE("complete-graph state is permutation invariant") {
  const int n = 4;
  StateVector psi = build_state_vector(make_complete(n));
  // Swap qubits 1 and 3 of the amplitudes.
  StateVector swapped(psi.size());
  for (int b = 0; b < 16; ++b) {
    const int b1 = (b >> 3) & 1, b3 = (b >> 1) & 1;
    int s = b & 0b0101;
    s |= b3 << 3;
    s |= b1 << 1;
    swapped[s] = psi[b];
  }
  CHECK((swapped - psi).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("CZ order does not matter") {
  GraphSpec g1(4, {{1, 2}, {2, 3}, {1, 4}});
  GraphSpec g2(4, {{1, 4}, {1, 2}, {2, 3}});
  CHECK((build_state_vector(g1) - build_state_vector(g2))
            .cwiseAbs()
            .maxCoeff() < 1e-14);
}

TEST_CASE("graph_from_name") {
  CHECK(graph_from_name("complete", 5).edges().size() == 10);
  CHECK(graph_from_name("ring", 5).edges().size() == 5);
  CHECK(graph_from_name("star", 5).edges().size() == 4);
  CHECK_THROWS(graph_from_name("/nonexistent/path/graph.txt", 5));
}
