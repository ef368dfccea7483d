#include "axa/gen.hpp"
#include "axa/io.hpp"
#include "axa/realize.hpp"

#include "helpers.hpp"

#include <cstdio>
#include <functional>
#include <numeric>
#include <set>
#include <string>
#include <vector>

using axa::Int;
using axa::IntMatrix;
using axa::Rat;
using axa::Status;

namespace {

const std::string cli = AXA_CLI_PATH;

long to_long(const Int& v) { return v.convert_to<long>(); }

// criterion 1: |Fix(A)| = |det(A - I)|, cross-checked against a full
// denominator-grid oracle in dimension two

std::set<axa::TorusPoint> brute_force_fixed_2d(const IntMatrix& a, long d) {
  std::set<axa::TorusPoint> out;
  for (long i = 0; i < d; ++i)
    for (long j = 0; j < d; ++j) {
      axa::TorusPoint p = {Rat(i, d), Rat(j, d)};
      if (axa::apply(a, p) == p) out.insert(p);
    }
  return out;
}

bool criterion_fixed_points() {
  axa::Rng rng(1001);
  int certified = 0;
  int oracle_checked = 0;
  while (certified < 120) {
    std::vector<Int> e;
    for (int i = 0; i < 4; ++i) e.push_back(Int(rng.range(-8, 8)));
    IntMatrix m(2, std::move(e));
    Int d = axa::determinant(m);
    if (d != 1 && d != -1) continue;
    axa::AnosovCheck c = axa::check_anosov(m, 'a');
    if (!c.ok()) c = axa::check_anosov(m, 'r');
    if (!c.ok()) continue;
    ++certified;
    const axa::AnosovAutomorphism& a = *c.value;
    Int dfix = axa::determinant(a.matrix - IntMatrix::identity(2));
    axa::PointSet fps = axa::fixed_points(a);
    if (Int(fps.size()) != abs(dfix)) return false;
    long dl = to_long(abs(dfix));
    if (dl <= 30) {
      ++oracle_checked;
      std::set<axa::TorusPoint> oracle = brute_force_fixed_2d(a.matrix, dl);
      if (oracle.size() != fps.size()) return false;
      for (const auto& p : fps.points)
        if (!oracle.count(p)) return false;
    }
  }
  for (int n : {3, 4}) {
    for (int t = 0; t < 50; ++t) {
      axa::AnosovAutomorphism a = axa::conjugated_member(rng, n, t % 2 ? 'a' : 'r', 2);
      Int dfix = axa::determinant(a.matrix - IntMatrix::identity(n));
      if (Int(axa::fixed_points(a).size()) != abs(dfix)) return false;
      ++certified;
    }
  }
  return certified >= 200 && oracle_checked >= 30;
}

// criterion 2: conjugacy decisions never produce a false No or an
// unverified Yes

bool criterion_conjugacy() {
  axa::Rng rng(1002);
  for (int t = 0; t < 200; ++t) {
    int n = 2 + t % 3;
    axa::AnosovAutomorphism a = axa::conjugated_member(rng, n, 'r', 1);
    IntMatrix z = axa::random_conjugator(rng, n, 2);
    axa::AnosovAutomorphism b =
        axa::certify_anosov(z * a.matrix * axa::inverse_unimodular(z), 'r');
    axa::ConjugacyVerdict v = axa::decide_conjugacy(a, b, axa::SignConstraint::any(), 5);
    if (v.status != Status::Yes) return false;
    if (!v.witness || !axa::verify_conjugacy_witness(a.matrix, b.matrix, *v.witness)) return false;
  }
  for (int t = 0; t < 200; ++t) {
    int n = 2 + t % 3;
    IntMatrix s = axa::seed_matrix(n);
    IntMatrix u = axa::random_conjugator(rng, n, 2);
    axa::AnosovAutomorphism a =
        axa::certify_anosov(u * s * axa::inverse_unimodular(u), 'r');
    axa::AnosovAutomorphism b =
        axa::certify_anosov(u * s * s * axa::inverse_unimodular(u), 'r');
    if (a.charpoly == b.charpoly) return false;
    axa::ConjugacyVerdict v = axa::decide_conjugacy(a, b);
    if (v.status != Status::No) return false;
    if (v.certificate != axa::Certificate::CharPoly) return false;
  }
  return true;
}

// criterion 3: Theorem 1 exit codes through the command line tool, plus the
// Euler relation on every generator output

bool criterion_theorem1() {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    int n = seed % 2 ? 2 : 3;
    axa::SInvariant s1 = axa::gen_s(n, 2 + static_cast<int>(seed % 2), seed);
    axa::SInvariant s2 = axa::relabel_and_conjugate_s(s1, seed + 1000);
    std::string f1 = test::write_temp("acc_s1.json", axa::dump(axa::serialize(s1)));
    std::string f2 = test::write_temp("acc_s2.json", axa::dump(axa::serialize(s2)));
    if (test::run(cli + " equiv '" + f1 + "' '" + f2 + "'").exit_code != 0) return false;

    axa::SInvariant mut = s1;
    if (mut.a > 0 || (mut.b == 0 && axa::t_u(mut.tube) == 1))
      mut.a += 1;
    else
      mut.b += 1;
    mut.c += 1;
    if (!axa::validate_s(mut).ok) return false;
    std::string f3 = test::write_temp("acc_s3.json", axa::dump(axa::serialize(mut)));
    if (test::run(cli + " equiv '" + f1 + "' '" + f3 + "'").exit_code != 1) return false;
  }
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    axa::SInvariant s = axa::gen_s(seed % 3 == 0 ? 3 : 2, 2 + static_cast<int>(seed % 3), seed);
    if (s.tube.k() + s.a + s.b != s.c + 2) return false;
  }
  return true;
}

// criterion 4: the admissible Pontryagin sets, exactly

bool criterion_pontryagin() {
  std::set<Rat> n8, n16;
  for (long t = -100; t <= 100; ++t) {
    Rat v8 = axa::pontryagin_value(8, t);
    Rat v16 = axa::pontryagin_value(16, t);
    n8.insert(v8);
    n16.insert(v16);
    auto t8 = axa::pontryagin_admissible(v8, 8);
    auto t16 = axa::pontryagin_admissible(v16, 16);
    if (!t8 || !t16) return false;
    if (axa::pontryagin_value(8, to_long(*t8)) != v8) return false;
    if (axa::pontryagin_value(16, to_long(*t16)) != v16) return false;
  }
  axa::Rng rng(1004);
  int rejected = 0;
  while (rejected < 1000) {
    Rat v(rng.range(-5000, 5000), rng.range(1, 99));
    bool in8 = n8.count(v) != 0;
    bool in16 = n16.count(v) != 0;
    if (axa::pontryagin_admissible(v, 8).has_value() != in8) return false;
    if (axa::pontryagin_admissible(v, 16).has_value() != in16) return false;
    if (!in8 && !in16) ++rejected;
  }
  return true;
}

// criterion 5: genus formula against the piece-gluing Betti oracle

long betti_oracle(const axa::ClassGraph& g) {
  axa::RealizedSystem sys = axa::realize(g);
  int nodes = static_cast<int>(sys.blocks.size());
  std::vector<int> parent(nodes);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  long edges = 0;
  for (const auto& conn : sys.connectors) {
    if (conn.endpoints.size() == 2) {
      parent[find(conn.endpoints[0].block)] = find(conn.endpoints[1].block);
      ++edges;
    } else {
      int hub = nodes++;
      parent.push_back(hub);
      for (const auto& ep : conn.endpoints) {
        parent[find(hub)] = find(ep.block);
        ++edges;
      }
    }
  }
  long components = 0;
  for (int i = 0; i < nodes; ++i)
    if (find(i) == i) ++components;
  return edges - nodes + components;
}

bool criterion_genus() {
  for (std::uint64_t seed = 0; seed < 250; ++seed) {
    axa::ClassGraph p = axa::gen_p(8, 2 + static_cast<int>(seed % 4), seed);
    if (axa::manifold_of_graph(p).handle_count != betti_oracle(p)) return false;
    axa::ClassGraph m = axa::gen_m(3, 2 + static_cast<int>(seed % 3), seed);
    if (axa::manifold_of_graph(m).handle_count != betti_oracle(m)) return false;
  }
  return true;
}

// criterion 6: commensurability invariance and its two mutations

bool criterion_commensurability() {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    axa::ClassGraph g = axa::gen_p(8, 2, seed);
    axa::ClassGraph h = axa::relabel_and_conjugate_graph(g, seed + 2000);
    axa::CommensurabilityVerdict v = axa::decide_commensurable(g, h, 5);
    if (v.status != Status::Yes) return false;
    for (const auto& w : v.group_witnesses)
      if (w.sign != 1) return false;
  }
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    axa::ClassGraph g = axa::gen_p(8, 2, seed);

    axa::ClassGraph bumped = g;
    for (auto& e : bumped.edges)
      if (e.marked) {
        long t = to_long(*axa::pontryagin_admissible(*e.pontryagin, 8));
        e.pontryagin = axa::pontryagin_value(8, t + 1);
      }
    if (axa::decide_commensurable(g, bumped).status != Status::No) return false;

    axa::ClassGraph flipped = g;
    axa::VertexGroup& grp = flipped.groups[0];
    char eps = grp.automorphism.epsilon == 'a' ? 'r' : 'a';
    grp.automorphism =
        axa::certify_anosov(axa::inverse_unimodular(grp.automorphism.matrix), eps);
    if (axa::decide_commensurable(g, flipped).status != Status::No) return false;
  }
  return true;
}

// criterion 7: realize then extract is the identity up to equivalence

bool criterion_round_trip() {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    axa::ClassGraph p = axa::gen_p(8, 2, seed);
    auto pb = axa::extract_invariant(axa::realize(p));
    if (!std::holds_alternative<axa::ClassGraph>(pb)) return false;
    if (axa::decide_commensurable(std::get<axa::ClassGraph>(pb), p, 5).status != Status::Yes)
      return false;

    axa::ClassGraph m = axa::gen_m(3, 2 + static_cast<int>(seed % 3), seed);
    auto mb = axa::extract_invariant(axa::realize(m));
    if (!std::holds_alternative<axa::ClassGraph>(mb)) return false;
    if (axa::decide_commensurable(std::get<axa::ClassGraph>(mb), m, 5).status != Status::Yes)
      return false;

    axa::SInvariant s = axa::gen_s(seed % 2 ? 3 : 2, 2 + static_cast<int>(seed % 3), seed);
    auto sb = axa::extract_invariant(axa::realize(s));
    if (!std::holds_alternative<axa::SInvariant>(sb)) return false;
    if (axa::decide_tube_equivalence(std::get<axa::SInvariant>(sb), s, 5).status != Status::Yes)
      return false;
  }
  return true;
}

// criterion 8: byte-identical outputs across repeated runs

bool criterion_determinism() {
  for (const std::string& spec :
       {std::string("gen --class S --n 3 --k 3 --seed 77"),
        std::string("gen --class P --n 8 --k 3 --seed 77"),
        std::string("gen --class M --n 4 --k 3 --seed 77")}) {
    test::RunResult first = test::run(cli + " " + spec);
    if (first.exit_code != 0 || first.output.empty()) return false;
    for (int rep = 0; rep < 2; ++rep) {
      test::RunResult again = test::run(cli + " " + spec);
      if (again.exit_code != first.exit_code || again.output != first.output) return false;
    }
  }
  axa::SInvariant s1 = axa::gen_s(3, 3, 5);
  axa::SInvariant s2 = axa::relabel_and_conjugate_s(s1, 6);
  std::string f1 = test::write_temp("acc_det1.json", axa::dump(axa::serialize(s1)));
  std::string f2 = test::write_temp("acc_det2.json", axa::dump(axa::serialize(s2)));
  test::RunResult first = test::run(cli + " equiv '" + f1 + "' '" + f2 + "'");
  if (first.exit_code != 0) return false;
  for (int rep = 0; rep < 2; ++rep) {
    test::RunResult again = test::run(cli + " equiv '" + f1 + "' '" + f2 + "'");
    if (again.exit_code != first.exit_code || again.output != first.output) return false;
  }
  return true;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    bool (*run)();
  };
  const Criterion criteria[] = {
      {"fixed-point counts", criterion_fixed_points},
      {"conjugacy round trip", criterion_conjugacy},
      {"theorem 1 suite", criterion_theorem1},
      {"pontryagin arithmetic", criterion_pontryagin},
      {"genus formula", criterion_genus},
      {"commensurability invariance", criterion_commensurability},
      {"realize/extract round trip", criterion_round_trip},
      {"determinism", criterion_determinism},
  };
  int failures = 0;
  int index = 0;
  for (const Criterion& c : criteria) {
    ++index;
    bool ok = false;
    try {
      ok = c.run();
    } catch (const std::exception& e) {
      std::fprintf(stderr, "criterion %d threw: %s\n", index, e.what());
    }
    std::printf("criterion %d (%s): %s\n", index, c.name, ok ? "pass" : "fail");
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
