#include "catch_amalgamated.hpp"

#include "axa/gen.hpp"
#include "axa/matrix.hpp"
#include "axa/smith.hpp"

#include "helpers.hpp"

using axa::Int;
using axa::IntMatrix;
using test::mk;

namespace {

IntMatrix random_small(axa::Rng& rng, int n, long lo, long hi) {
  IntMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.at(i, j) = Int(rng.range(lo, hi));
  return m;
}

}  // namespace

TEST_CASE("determinant on known matrices") {
  CHECK(axa::determinant(mk(2, {2, 1, 1, 1})) == 1);
  CHECK(axa::determinant(IntMatrix::identity(3)) == 1);
  CHECK(axa::determinant(mk(2, {4, 3, 3, 1})) == -5);
}

TEST_CASE("determinant matches cofactor expansion for random 3x3") {
  axa::Rng rng(11);
  for (int t = 0; t < 200; ++t) {
    IntMatrix m = random_small(rng, 3, -10, 10);
    Int cof = m.at(0, 0) * (m.at(1, 1) * m.at(2, 2) - m.at(1, 2) * m.at(2, 1)) -
              m.at(0, 1) * (m.at(1, 0) * m.at(2, 2) - m.at(1, 2) * m.at(2, 0)) +
              m.at(0, 2) * (m.at(1, 0) * m.at(2, 1) - m.at(1, 1) * m.at(2, 0));
    CHECK(axa::determinant(m) == cof);
  }
}

TEST_CASE("char_poly on known matrices") {
  // ascending coefficient order
  CHECK(axa::char_poly(mk(2, {2, 1, 1, 1})) == axa::IntPoly{1, -3, 1});
  CHECK(axa::char_poly(IntMatrix::identity(2)) == axa::IntPoly{1, -2, 1});
  CHECK(axa::char_poly(mk(3, {0, 1, 0, 0, 0, 1, 1, 1, 1})) == axa::IntPoly{-1, -1, -1, 1});
}

TEST_CASE("char_poly constant term is the signed determinant") {
  axa::Rng rng(12);
  for (int t = 0; t < 100; ++t) {
    int n = 2 + static_cast<int>(rng.below(3));
    IntMatrix m = random_small(rng, n, -6, 6);
    axa::IntPoly p = axa::char_poly(m);
    REQUIRE(p.size() == static_cast<size_t>(n + 1));
    CHECK(p.back() == 1);
    Int sign = n % 2 == 0 ? 1 : -1;
    CHECK(p[0] == sign * axa::determinant(m));
  }
}

TEST_CASE("char_poly invariant under unimodular conjugation") {
  axa::Rng rng(13);
  for (int t = 0; t < 100; ++t) {
    int n = 2 + static_cast<int>(rng.below(3));
    IntMatrix m = random_small(rng, n, -6, 6);
    IntMatrix u = axa::random_conjugator(rng, n, 3);
    CHECK(axa::char_poly(u * m * axa::inverse_unimodular(u)) == axa::char_poly(m));
  }
}

TEST_CASE("smith normal form on known matrices") {
  CHECK(axa::smith_normal_form(mk(2, {1, 1, 1, 0})).diagonal == std::vector<Int>{1, 1});
  CHECK(axa::smith_normal_form(mk(2, {2, 0, 0, 2})).diagonal == std::vector<Int>{2, 2});
  CHECK(axa::smith_normal_form(mk(2, {4, 3, 3, 1})).diagonal == std::vector<Int>{1, 5});
}

TEST_CASE("smith normal form invariants on random matrices") {
  axa::Rng rng(14);
  for (int t = 0; t < 150; ++t) {
    int n = 2 + static_cast<int>(rng.below(3));
    IntMatrix m = random_small(rng, n, -10, 10);
    axa::SmithForm s = axa::smith_normal_form(m);

    Int dl = axa::determinant(s.left), dr = axa::determinant(s.right);
    CHECK((dl == 1 || dl == -1));
    CHECK((dr == 1 || dr == -1));

    IntMatrix d = s.left * m * s.right;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) CHECK(d.at(i, j) == (i == j ? s.diagonal[i] : Int(0)));

    Int prod = 1;
    for (int i = 0; i < n; ++i) {
      CHECK(s.diagonal[i] >= 0);
      if (i + 1 < n && s.diagonal[i] != 0) CHECK(s.diagonal[i + 1] % s.diagonal[i] == 0);
      prod *= s.diagonal[i];
    }
    CHECK(prod == abs(dl * axa::determinant(m) * dr));
  }
}

TEST_CASE("smith diagonal is a GL(n,Z) x GL(n,Z) invariant") {
  axa::Rng rng(15);
  for (int t = 0; t < 80; ++t) {
    int n = 2 + static_cast<int>(rng.below(3));
    IntMatrix m = random_small(rng, n, -8, 8);
    IntMatrix u = axa::random_conjugator(rng, n, 4);
    IntMatrix v = axa::random_conjugator(rng, n, 4);
    CHECK(axa::smith_normal_form(u * m * v).diagonal == axa::smith_normal_form(m).diagonal);
  }
}

TEST_CASE("inverse_unimodular round trip") {
  axa::Rng rng(16);
  for (int t = 0; t < 50; ++t) {
    int n = 2 + static_cast<int>(rng.below(3));
    IntMatrix u = axa::random_conjugator(rng, n, 5);
    CHECK(u * axa::inverse_unimodular(u) == IntMatrix::identity(n));
  }
}
