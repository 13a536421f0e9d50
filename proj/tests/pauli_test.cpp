#include <random>

#include "doctest.h"
#include "graphlind/pauli.hpp"

using namespace graphlind;

TEST_CASE("symmetric_word canonical placement") {
  CHECK(symmetric_word(1, 0, 3, 4).str() == "X1 Z2 Z3 Z4");
  CHECK(symmetric_word(0, 0, 0, 4).is_identity());
  CHECK(symmetric_word(0, 2, 1, 8).str() == "Y1 Y2 Z3");
  CHECK_THROWS(symmetric_word(3, 2, 0, 4));
  CHECK_THROWS(symmetric_word(-1, 0, 0, 4));
}

TEST_CASE("word_to_dense elementary matrices") {
  PauliWord x(1);
  x.set(1, PauliAxis::X);
  DenseMatrix mx = word_to_dense(x);
  CHECK(mx(0, 1) == Complex(1.0));
  CHECK(mx(1, 0) == Complex(1.0));
  CHECK(mx(0, 0) == Complex(0.0));

  PauliWord y(1);
  y.set(1, PauliAxis::Y);
  DenseMatrix my = word_to_dense(y);
  CHECK(my(0, 1) == Complex(0.0, -1.0));
  CHECK(my(1, 0) == Complex(0.0, 1.0));

  // Z on site 1 of 2: site 1 is the most significant bit.
  PauliWord z1(2);
  z1.set(1, PauliAxis::Z);
  DenseMatrix mz = word_to_dense(z1);
  for (int i = 0; i < 4; ++i) {
    const double expect = i < 2 ? 1.0 : -1.0;
    CHECK(mz(i, i).real() == doctest::Approx(expect));
  }
}

TEST_CASE("multiply_words base cases") {
  PauliWord x(1), z(1), id(1);
  x.set(1, PauliAxis::X);
  z.set(1, PauliAxis::Z);

  WordProduct xz = multiply_words(x, z);
  CHECK(xz.word.axis_at(1) == PauliAxis::Y);
  CHECK(xz.phase() == Complex(0.0, -1.0));  // XZ = -iY

  WordProduct iw = multiply_words(id, x);
  CHECK(iw.word == x);
  CHECK(iw.phase() == Complex(1.0));

  WordProduct xx = multiply_words(x, x);
  CHECK(xx.word.is_identity());
  CHECK(xx.phase() == Complex(1.0));

  PauliWord other(2);
  CHECK_THROWS(multiply_words(x, other));
}

TEST_CASE("multiply_words agrees with dense products") {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> axis(0, 3);
  const int n = 4;
  for (int trial = 0; trial < 50; ++trial) {
    PauliWord a(n), b(n);
    for (int i = 1; i <= n; ++i) {
      a.set(i, static_cast<PauliAxis>(axis(rng)));
      b.set(i, static_cast<PauliAxis>(axis(rng)));
    }
    WordProduct p = multiply_words(a, b);
    DenseMatrix lhs = p.phase() * word_to_dense(p.word);
    DenseMatrix rhs = word_to_dense(a) * word_to_dense(b);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("dense words are Hermitian and unitary") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> axis(0, 3);
  for (int trial = 0; trial < 20; ++trial) {
    PauliWord w(3);
    for (int i = 1; i <= 3; ++i)
      w.set(i, static_cast<PauliAxis>(axis(rng)));
    DenseMatrix m = word_to_dense(w);
    CHECK((m - m.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((m * m - DenseMatrix::Identity(8, 8)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("text form round-trips") {
  CHECK(PauliWord::parse("X1 Z2 Z3", 4).str() == "X1 Z2 Z3");
  CHECK(PauliWord::parse("I", 5).is_identity());
  PauliWord w(6);
  w.set(2, PauliAxis::Y);
  w.set(5, PauliAxis::Z);
  CHECK(PauliWord::parse(w.str(), 6) == w);
  CHECK_THROWS(PauliWord::parse("X9", 4));
  CHECK_THROWS(PauliWord::parse("Q1", 4));
  CHECK_THROWS(PauliWord::parse("X0", 4));
}

TEST_CASE("signature is permutation-canonical") {
  // Re-assigning the word to other sites preserves (n, m, l) counts.
  PauliWord w = symmetric_word(2, 1, 1, 6);
  PauliWord moved(6);
  moved.set(6, PauliAxis::X);
  moved.set(2, PauliAxis::X);
  moved.set(4, PauliAxis::Y);
  moved.set(1, PauliAxis::Z);
  CHECK(w.count(PauliAxis::X) == moved.count(PauliAxis::X));
  CHECK(w.count(PauliAxis::Y) == moved.count(PauliAxis::Y));
  CHECK(w.count(PauliAxis::Z) == moved.count(PauliAxis::Z));
}
