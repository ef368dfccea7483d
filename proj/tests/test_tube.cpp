#include "catch_amalgamated.hpp"

#include "axa/gen.hpp"
#include "axa/tube.hpp"

#include "helpers.hpp"

using axa::IntMatrix;
using axa::Status;
using test::mk;

namespace {

axa::KTube tube_of(std::initializer_list<char> epsilons, int n = 3) {
  axa::KTube t;
  for (char e : epsilons) t.autos.push_back(axa::seed_anosov(n, e));
  return t;
}

axa::SInvariant valid_s(std::initializer_list<char> epsilons, long a, long b, long c, int idx,
                        int n = 3) {
  axa::SInvariant s;
  s.tube = tube_of(epsilons, n);
  s.a = a;
  s.b = b;
  s.c = c;
  s.saddle_index = idx;
  return s;
}

}  // namespace

TEST_CASE("t_u counts repeller members") {
  CHECK(axa::t_u(tube_of({'r', 'a'})) == 1);
  CHECK(axa::t_u(tube_of({'r', 'r', 'r'})) == 3);
  CHECK(axa::t_u(tube_of({'a', 'a', 'a'})) == 0);
}

TEST_CASE("admissibility") {
  CHECK(axa::is_admissible(tube_of({'a', 'r'})));
  CHECK_FALSE(axa::is_admissible(tube_of({'r', 'r', 'r'})));
  CHECK(axa::is_admissible(tube_of({'r', 'r', 'a'})));
  axa::KTube single = tube_of({'r'});
  CHECK_THROWS_AS(axa::is_admissible(single), std::invalid_argument);
}

TEST_CASE("agreement with (a,b,c)") {
  CHECK(axa::agrees(tube_of({'r', 'a'}), 1, 0, 1).ok);
  CHECK(axa::agrees(tube_of({'r', 'r', 'a'}), 0, 1, 2).ok);

  axa::AgreementCheck bad = axa::agrees(tube_of({'r', 'a', 'a'}), 0, 1, 2);
  CHECK_FALSE(bad.ok);  // t_u = 1 requires b = 0

  axa::AgreementCheck euler = axa::agrees(tube_of({'r', 'a'}), 1, 0, 2);
  CHECK_FALSE(euler.ok);
  CHECK(euler.failure.find("Euler") != std::string::npos);
}

TEST_CASE("validate_s") {
  CHECK(axa::validate_s(valid_s({'r', 'a'}, 1, 0, 1, 1)).ok);
  CHECK(axa::validate_s(valid_s({'r', 'r', 'a'}, 0, 1, 2, 2)).ok);  // saddle index n-1

  CHECK_FALSE(axa::validate_s(valid_s({'r', 'r', 'r'}, 1, 0, 2, 1)).ok);   // inadmissible
  CHECK_FALSE(axa::validate_s(valid_s({'r', 'a'}, 1, 0, 2, 1)).ok);        // Euler broken
  CHECK_FALSE(axa::validate_s(valid_s({'r', 'r', 'a'}, 0, 1, 2, 1)).ok);   // wrong saddle index
}

TEST_CASE("tube equivalence: reflexivity") {
  axa::SInvariant s = axa::gen_s(3, 3, 7);
  axa::TubeVerdict v = axa::decide_tube_equivalence(s, s);
  REQUIRE(v.status == Status::Yes);
  CHECK(v.common_sign == 1);
  for (size_t i = 0; i < v.witnesses.size(); ++i)
    CHECK(axa::verify_conjugacy_witness(s.tube.autos[i].matrix,
                                        s.tube.autos[v.permutation[i]].matrix, v.witnesses[i]));
}

TEST_CASE("tube equivalence: permuted and conjugated copies") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    axa::SInvariant s1 = axa::gen_s(2 + seed % 2, 2 + static_cast<int>(seed % 2), seed);
    axa::SInvariant s2 = axa::relabel_and_conjugate_s(s1, seed + 100);
    axa::TubeVerdict v = axa::decide_tube_equivalence(s1, s2, 5);
    REQUIRE(v.status == Status::Yes);
    REQUIRE(v.witnesses.size() == s1.tube.autos.size());
    for (size_t i = 0; i < v.witnesses.size(); ++i) {
      CHECK(axa::verify_conjugacy_witness(s1.tube.autos[i].matrix,
                                          s2.tube.autos[v.permutation[i]].matrix, v.witnesses[i]));
      CHECK(axa::sign_of(axa::determinant(v.witnesses[i])) == v.common_sign);
    }
  }
}

TEST_CASE("tube equivalence certificates") {
  axa::SInvariant s1 = valid_s({'r', 'a'}, 1, 0, 1, 1);
  axa::SInvariant s2 = valid_s({'r', 'a'}, 2, 0, 2, 1);
  axa::TubeVerdict v = axa::decide_tube_equivalence(s1, s2);
  CHECK(v.status == Status::No);
  CHECK(v.certificate == "a+b");

  axa::SInvariant bad = valid_s({'r', 'r', 'r'}, 1, 0, 2, 1);
  CHECK_THROWS_AS(axa::decide_tube_equivalence(s1, bad), std::invalid_argument);
}

TEST_CASE("tube equivalence: k and c certificates") {
  axa::SInvariant s1 = valid_s({'r', 'a'}, 1, 0, 1, 1);
  axa::SInvariant s3 = valid_s({'r', 'a', 'a'}, 1, 0, 2, 1);
  REQUIRE(axa::validate_s(s3).ok);
  axa::TubeVerdict v = axa::decide_tube_equivalence(s1, s3);
  CHECK(v.status == Status::No);
  CHECK(v.certificate == "k");

  // same k and a+b, different split is impossible under Euler with equal k,
  // so build a c mismatch via different totals caught earlier
  axa::SInvariant s4 = valid_s({'r', 'a'}, 1, 0, 1, 1);
  axa::SInvariant s5 = valid_s({'r', 'a'}, 2, 0, 2, 1);
  v = axa::decide_tube_equivalence(s4, s5);
  CHECK(v.status == Status::No);
}

TEST_CASE("epsilon multiset mismatch") {
  axa::SInvariant s1 = valid_s({'r', 'a', 'a'}, 1, 0, 2, 1);
  axa::SInvariant s2 = valid_s({'r', 'r', 'a'}, 0, 1, 2, 2);
  axa::TubeVerdict v = axa::decide_tube_equivalence(s1, s2);
  CHECK(v.status == Status::No);
  CHECK(v.certificate == "t_u");
}

TEST_CASE("manifold of S invariants") {
  axa::ManifoldDescription m2 = axa::manifold_of_s(valid_s({'r', 'a'}, 1, 0, 1, 1));
  CHECK(m2.torus_count == 2);
  CHECK(m2.handle_count == 0);
  CHECK(m2.str() == "T^3 # T^3");

  axa::ManifoldDescription m3 = axa::manifold_of_s(valid_s({'r', 'r', 'a'}, 0, 1, 2, 2));
  CHECK(m3.str() == "T^3 # T^3 # T^3");

  axa::ManifoldDescription m22 = axa::manifold_of_s(valid_s({'r', 'a'}, 1, 0, 1, 1, 2));
  CHECK(m22.n == 2);
  CHECK(m22.str() == "T^2 # T^2");
}

TEST_CASE("generator outputs always validate") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    int n = seed % 2 == 0 ? 2 : 3;
    int k = 2 + static_cast<int>(seed % 3);
    axa::SInvariant s = axa::gen_s(n, k, seed);
    axa::SValidation v = axa::validate_s(s);
    CHECK(v.ok);
    CHECK(s.tube.k() + s.a + s.b == s.c + 2);
  }
}
