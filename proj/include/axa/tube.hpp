#pragma once

#include "axa/conjugacy.hpp"
#include "axa/manifold.hpp"
#include "axa/torus.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

namespace axa {

// Ordered family of codimension one Anosov automorphisms of one dimension.
struct KTube {
  std::vector<AnosovAutomorphism> autos;

  int k() const { return static_cast<int>(autos.size()); }
  int dim() const { return autos.empty() ? 0 : autos[0].dim(); }
};

inline void validate_tube_shape(const KTube& t) {
  if (t.autos.empty()) throw std::invalid_argument("tube must contain at least one automorphism");
  for (const auto& a : t.autos)
    if (a.dim() != t.dim()) throw std::invalid_argument("tube members must share one dimension");
}

// Number of members with one-dimensional unstable manifolds. The epsilon
// label decides this; for n >= 3 it coincides with the modulus profile, and
// for n = 2 (profile (1,0,1) either way) the label is the only record.
inline int t_u(const KTube& t) {
  int c = 0;
  for (const auto& a : t.autos)
    if (a.epsilon == 'r') ++c;
  return c;
}

inline bool is_admissible(const KTube& t) {
  if (t.k() < 2) throw std::invalid_argument("admissibility is defined for k >= 2");
  int tu = t_u(t);
  return tu == 1 || tu == t.k() - 1;
}

struct AgreementCheck {
  bool ok = false;
  std::string failure;  // empty when ok
};

// Agreement of an admissible tube with the saddle-region counts (a, b, c).
inline AgreementCheck agrees(const KTube& t, long a, long b, long c) {
  AgreementCheck out;
  if (a < 0 || b < 0) {
    out.failure = "a and b must be non-negative";
    return out;
  }
  if (c < 1) {
    out.failure = "c must be >= 1";
    return out;
  }
  if (t.k() + a + b != c + 2) {
    out.failure = "Euler relation k+a+b=c+2 violated";
    return out;
  }
  int tu = t_u(t);
  out.ok = (tu == 1 && b == 0) || (tu == t.k() - 1 && a == 0);
  if (!out.ok) out.failure = "counts do not agree with t_u";
  return out;
}

// Complete invariant for class S: admissible tube plus node/saddle counts.
struct SInvariant {
  KTube tube;
  long a = 0;
  long b = 0;
  long c = 1;
  int saddle_index = 1;  // 1 or n-1
};

struct SValidation {
  bool ok = true;
  std::vector<std::string> failures;

  void fail(const std::string& msg) {
    ok = false;
    failures.push_back(msg);
  }
};

inline SValidation validate_s(const SInvariant& s) {
  SValidation v;
  validate_tube_shape(s.tube);
  if (s.tube.k() < 2) v.fail("k must be >= 2 (one attractor and one repeller at least)");
  if (s.tube.k() >= 2 && !is_admissible(s.tube)) v.fail("tube is not admissible (t_u not in {1, k-1})");
  if (s.tube.k() + s.a + s.b != s.c + 2) v.fail("Euler relation k+a+b=c+2 violated");
  if (s.tube.k() >= 2 && is_admissible(s.tube)) {
    AgreementCheck ag = agrees(s.tube, s.a, s.b, s.c);
    if (!ag.ok) v.fail("tube does not agree with (a,b,c): " + ag.failure);
    int tu = t_u(s.tube);
    int n = s.tube.dim();
    bool idx_ok = false;
    if (tu == 1 && s.saddle_index == 1) idx_ok = true;
    if (tu == s.tube.k() - 1 && s.saddle_index == n - 1) idx_ok = true;
    if (!idx_ok) v.fail("saddle index inconsistent with t_u");
  }
  return v;
}

struct TubeVerdict {
  Status status = Status::Unknown;
  std::string certificate;           // named obstruction on No
  std::vector<int> permutation;      // tau: member i of s1 matches tau[i] of s2
  std::vector<IntMatrix> witnesses;  // zeta_i per member, all of one sign
  int common_sign = 0;
};

namespace detail {

struct PairSearch {
  Status status = Status::Unknown;
  std::optional<IntMatrix> witness_plus;
  std::optional<IntMatrix> witness_minus;
};

}  // namespace detail

// Theorem-1 style equivalence: permutation plus per-member conjugations whose
// determinants share one sign.
inline TubeVerdict decide_tube_equivalence(const SInvariant& s1, const SInvariant& s2,
                                           long bound = 10) {
  SValidation v1 = validate_s(s1), v2 = validate_s(s2);
  if (!v1.ok || !v2.ok) throw std::invalid_argument("decide_tube_equivalence: invalid invariant");
  if (s1.tube.dim() != s2.tube.dim())
    throw std::invalid_argument("decide_tube_equivalence: dimension mismatch");

  TubeVerdict out;
  if (s1.tube.k() != s2.tube.k()) {
    out.status = Status::No;
    out.certificate = "k";
    return out;
  }
  if (s1.a + s1.b != s2.a + s2.b) {
    out.status = Status::No;
    out.certificate = "a+b";
    return out;
  }
  if (s1.c != s2.c) {
    out.status = Status::No;
    out.certificate = "c";
    return out;
  }
  if (t_u(s1.tube) != t_u(s2.tube)) {
    out.status = Status::No;
    out.certificate = "t_u";
    return out;
  }
  const int k = s1.tube.k();
  auto fingerprint = [](const AnosovAutomorphism& a) {
    return std::make_pair(a.charpoly, a.epsilon);
  };
  {
    std::map<std::pair<IntPoly, char>, int> f1, f2;
    for (const auto& a : s1.tube.autos) f1[fingerprint(a)]++;
    for (const auto& a : s2.tube.autos) f2[fingerprint(a)]++;
    if (f1 != f2) {
      out.status = Status::No;
      out.certificate = "charpoly-multiset";
      return out;
    }
  }

  // pair searches cached; only fingerprint-compatible pairs are explored
  std::map<std::pair<int, int>, detail::PairSearch> cache;
  auto pair_result = [&](int i, int j) -> const detail::PairSearch& {
    auto it = cache.find({i, j});
    if (it != cache.end()) return it->second;
    detail::PairSearch ps;
    ConjugacyVerdict cv =
        decide_conjugacy(s1.tube.autos[i], s2.tube.autos[j], SignConstraint::any(), bound);
    ps.status = cv.status;
    ps.witness_plus = cv.witness_plus;
    ps.witness_minus = cv.witness_minus;
    return cache.emplace(std::make_pair(i, j), std::move(ps)).first->second;
  };

  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  bool saw_unknown = false;
  do {
    bool compatible = true;
    for (int i = 0; i < k && compatible; ++i)
      compatible = fingerprint(s1.tube.autos[i]) == fingerprint(s2.tube.autos[perm[i]]);
    if (!compatible) continue;
    bool plus_ok = true, minus_ok = true, unknown = false, decisive_no = false;
    for (int i = 0; i < k; ++i) {
      const auto& ps = pair_result(i, perm[i]);
      if (ps.status == Status::No) {
        decisive_no = true;
        break;
      }
      if (!ps.witness_plus && !ps.witness_minus) {
        unknown = true;
        break;
      }
      plus_ok = plus_ok && ps.witness_plus.has_value();
      minus_ok = minus_ok && ps.witness_minus.has_value();
    }
    if (decisive_no) continue;
    if (unknown) {
      saw_unknown = true;
      continue;
    }
    if (plus_ok || minus_ok) {
      out.status = Status::Yes;
      out.permutation = perm;
      out.common_sign = plus_ok ? 1 : -1;
      for (int i = 0; i < k; ++i) {
        const auto& ps = pair_result(i, perm[i]);
        out.witnesses.push_back(plus_ok ? *ps.witness_plus : *ps.witness_minus);
      }
      return out;
    }
    saw_unknown = true;  // conjugate pairwise but no common sign found in bound
  } while (std::next_permutation(perm.begin(), perm.end()));

  out.status = Status::Unknown;
  if (!saw_unknown) {
    // every compatible permutation was closed by a pairwise certificate
    out.status = Status::No;
    out.certificate = "no-permutation";
  }
  return out;
}

// Theorem 1: M^n is the connected sum of k tori.
inline ManifoldDescription manifold_of_s(const SInvariant& s) {
  ManifoldDescription m;
  m.n = s.tube.dim();
  m.torus_count = s.tube.k();
  m.handle_count = 0;
  return m;
}

}  // namespace axa
