#pragma once

#include "axa/graph.hpp"
#include "axa/tube.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace axa {

// Deterministic generator state. splitmix64 is fixed here by value so that
// outputs are byte-identical across platforms and standard libraries.
struct Rng {
  std::uint64_t state;

  explicit Rng(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t below(std::uint64_t n) { return next() % n; }

  long range(long lo, long hi) {  // inclusive
    return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  bool coin() { return (next() & 1) != 0; }
};

// Companion matrix (superdiagonal ones, coefficient last row) of a monic
// polynomial given by descending coefficients.
inline IntMatrix companion_from_descending(const std::vector<long>& coeffs) {
  if (coeffs.size() < 3 || coeffs[0] != 1)
    throw std::invalid_argument("companion: need a monic polynomial of degree >= 2");
  const int n = static_cast<int>(coeffs.size()) - 1;
  IntMatrix m(n);
  for (int i = 0; i + 1 < n; ++i) m.at(i, i + 1) = 1;
  for (int j = 0; j < n; ++j) m.at(n - 1, j) = -Int(coeffs[n - j]);
  return m;
}

// Frozen hyperbolic seeds, one per supported dimension. Each has exactly one
// eigenvalue outside the unit circle and enough fixed points to mark graph
// vertices on.
inline IntMatrix seed_matrix(int n) {
  switch (n) {
    case 2: {
      IntMatrix m(2);
      m.at(0, 0) = 2; m.at(0, 1) = 1;
      m.at(1, 0) = 1; m.at(1, 1) = 1;
      return m;
    }
    case 3: return companion_from_descending({1, -3, -3, -1});
    case 4: return companion_from_descending({1, -2, -2, -2, -1});
    case 8: return companion_from_descending({1, -2, -2, -2, -2, 0, 0, 1, 1});
    case 16:
      return companion_from_descending({1, -3, 0, -1, -1, 0, -1, 0, 0, 0, -1, 0, 0, 0, 0, 0, 1});
    default:
      throw std::invalid_argument("no generator seed for dimension " + std::to_string(n));
  }
}

inline AnosovAutomorphism seed_anosov(int n, char epsilon) {
  IntMatrix m = seed_matrix(n);
  if (n == 2) return certify_anosov(m, epsilon);
  if (epsilon == 'r') return certify_anosov(m, 'r');
  return certify_anosov(inverse_unimodular(m), 'a');
}

// Elementary shear I + s*E_{ij}, determinant one.
inline IntMatrix random_shear(Rng& rng, int n) {
  IntMatrix m = IntMatrix::identity(n);
  int i = static_cast<int>(rng.below(n));
  int j = static_cast<int>(rng.below(n - 1));
  if (j >= i) ++j;
  m.at(i, j) = rng.coin() ? 1 : -1;
  return m;
}

inline IntMatrix random_conjugator(Rng& rng, int n, int shears) {
  IntMatrix u = IntMatrix::identity(n);
  for (int s = 0; s < shears; ++s) u = u * random_shear(rng, n);
  return u;
}

inline AnosovAutomorphism conjugated_member(Rng& rng, int n, char epsilon, int shears) {
  AnosovAutomorphism s = seed_anosov(n, epsilon);
  IntMatrix u = random_conjugator(rng, n, shears);
  return certify_anosov(u * s.matrix * inverse_unimodular(u), epsilon);
}

inline SInvariant gen_s(int n, int k, std::uint64_t seed, int shears = 2) {
  if (k < 2) throw std::invalid_argument("gen_s: k must be >= 2");
  Rng rng(seed);
  bool minority_r = rng.coin();
  int minority = static_cast<int>(rng.below(k));
  SInvariant s;
  for (int i = 0; i < k; ++i) {
    char eps = (i == minority) == minority_r ? 'r' : 'a';
    s.tube.autos.push_back(conjugated_member(rng, n, eps, shears));
  }
  long extra = std::max(0L, 3L - k) + rng.range(0, 2);
  if (minority_r) {
    s.a = extra;
    s.b = 0;
    s.saddle_index = 1;
  } else {
    s.a = 0;
    s.b = extra;
    s.saddle_index = n - 1;
  }
  s.c = k + s.a + s.b - 2;
  SValidation v = validate_s(s);
  if (!v.ok) throw std::logic_error("gen_s produced an invalid invariant: " + v.failures.front());
  return s;
}

namespace gen_detail {

// Connected group skeleton: an epsilon-alternating path over the k groups
// plus a few extra edges between opposite-epsilon groups, degree-capped so
// every group keeps enough fixed points for its vertices.
struct Skeleton {
  std::vector<std::pair<int, int>> edges;  // group-level, may repeat pairs
  std::vector<int> degree;
};

inline Skeleton make_skeleton(Rng& rng, int k, int degree_cap) {
  Skeleton sk;
  sk.degree.assign(k, 0);
  for (int i = 0; i + 1 < k; ++i) {
    sk.edges.push_back({i, i + 1});
    sk.degree[i]++;
    sk.degree[i + 1]++;
  }
  long extra = rng.range(0, 2);
  for (long e = 0; e < extra; ++e) {
    for (int attempt = 0; attempt < 8; ++attempt) {
      int a = static_cast<int>(rng.below(k)), b = static_cast<int>(rng.below(k));
      if (a % 2 == b % 2) continue;  // same epsilon
      if (sk.degree[a] >= degree_cap || sk.degree[b] >= degree_cap) continue;
      if (a > b) std::swap(a, b);
      sk.edges.push_back({a, b});
      sk.degree[a]++;
      sk.degree[b]++;
      break;
    }
  }
  return sk;
}

inline ClassGraph graph_from_skeleton(Rng& rng, char variant, int n, int k, const Skeleton& sk,
                                      int shears) {
  ClassGraph g;
  g.variant = variant;
  g.n = n;
  std::vector<int> counter(k, 0);
  for (const auto& [a, b] : sk.edges) {
    GraphEdge e;
    e.gi = a;
    e.vi = counter[a]++;
    e.gj = b;
    e.vj = counter[b]++;
    g.edges.push_back(e);
  }
  for (int i = 0; i < k; ++i) {
    VertexGroup grp;
    grp.automorphism = conjugated_member(rng, n, i % 2 == 0 ? 'a' : 'r', shears);
    PointSet fps = fixed_points(grp.automorphism);
    if (static_cast<int>(fps.size()) < counter[i])
      throw std::logic_error("gen: seed has too few fixed points for the requested degree");
    grp.points.assign(fps.points.begin(), fps.points.begin() + counter[i]);
    g.groups.push_back(std::move(grp));
  }
  return g;
}

}  // namespace gen_detail

inline Rat pontryagin_value(int n, long t) {
  Int s = 1 + 2 * Int(t);
  if (n == 8) return Rat(2 * s * s);
  if (n == 16) return Rat(36 * s * s, 49);
  throw std::invalid_argument("pontryagin values exist for n in {8,16}");
}

inline ClassGraph gen_p(int n, int k, std::uint64_t seed, int shears = 2) {
  if (n != 8 && n != 16) throw std::invalid_argument("gen_p: n must be 8 or 16");
  if (k < 2) throw std::invalid_argument("gen_p: k must be >= 2");
  Rng rng(seed);
  gen_detail::Skeleton sk = gen_detail::make_skeleton(rng, k, 4);
  ClassGraph g = gen_detail::graph_from_skeleton(rng, 'P', n, k, sk, shears);
  size_t marked = rng.below(g.edges.size());
  g.edges[marked].marked = true;
  g.edges[marked].pontryagin = pontryagin_value(n, rng.range(0, 5));
  g.canonicalize_edges();
  ValidationReport r = validate_graph(g);
  if (!r.ok) throw std::logic_error("gen_p produced an invalid graph");
  return g;
}

inline ClassGraph gen_m(int n, int k, std::uint64_t seed, int shears = 2) {
  if (n < 3) throw std::invalid_argument("gen_m: n must be >= 3");
  if (k < 2) throw std::invalid_argument("gen_m: k must be >= 2");
  Rng rng(seed);
  gen_detail::Skeleton sk = gen_detail::make_skeleton(rng, k, 3);
  ClassGraph g = gen_detail::graph_from_skeleton(rng, 'M', n, k, sk, shears);

  // Promote one edge to the marked Y: its chosen endpoint becomes the middle
  // vertex and gains a second marked edge to a fresh vertex of opposite
  // epsilon.
  size_t base = rng.below(g.edges.size());
  GraphEdge& e = g.edges[base];
  e.marked = true;
  bool middle_is_from = rng.coin();
  int gm = middle_is_from ? e.gi : e.gj;
  int vm = middle_is_from ? e.vi : e.vj;
  std::vector<int> opposite;
  for (int i = 0; i < g.k(); ++i)
    if (g.groups[i].automorphism.epsilon != g.groups[gm].automorphism.epsilon) opposite.push_back(i);
  int h = opposite[rng.below(opposite.size())];
  PointSet fps = fixed_points(g.groups[h].automorphism);
  if (fps.size() <= g.groups[h].points.size())
    throw std::logic_error("gen_m: no spare fixed point for the Y leg");
  GraphEdge leg;
  leg.gi = gm;
  leg.vi = vm;
  leg.gj = h;
  leg.vj = g.groups[h].l();
  leg.marked = true;
  g.groups[h].points.push_back(fps.points[g.groups[h].points.size()]);
  g.edges.push_back(leg);
  g.canonicalize_edges();
  ValidationReport r = validate_graph(g);
  if (!r.ok) {
    for (const auto& item : r.items)
      if (!item.pass) throw std::logic_error("gen_m produced an invalid graph: " + item.condition);
  }
  return g;
}

// Equivalence-preserving scrambles, used to produce known-Yes test pairs.

inline SInvariant relabel_and_conjugate_s(const SInvariant& s, std::uint64_t seed, int shears = 1) {
  Rng rng(seed);
  SInvariant out = s;
  const int k = s.tube.k();
  std::vector<int> perm(k);
  for (int i = 0; i < k; ++i) perm[i] = i;
  for (int i = k - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(i + 1)]);
  out.tube.autos.clear();
  for (int i = 0; i < k; ++i) {
    const AnosovAutomorphism& a = s.tube.autos[perm[i]];
    IntMatrix u = random_conjugator(rng, a.dim(), shears);
    out.tube.autos.push_back(certify_anosov(u * a.matrix * inverse_unimodular(u), a.epsilon));
  }
  return out;
}

inline ClassGraph relabel_and_conjugate_graph(const ClassGraph& g, std::uint64_t seed,
                                              int shears = 1) {
  Rng rng(seed);
  const int k = g.k();
  std::vector<int> perm(k);  // new index -> old index
  for (int i = 0; i < k; ++i) perm[i] = i;
  for (int i = k - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(i + 1)]);
  std::vector<int> inv(k);
  for (int i = 0; i < k; ++i) inv[perm[i]] = i;

  ClassGraph out;
  out.variant = g.variant;
  out.n = g.n;
  std::vector<std::vector<int>> vperm(k);  // per old group: old vertex -> new vertex
  for (int i = 0; i < k; ++i) {
    const VertexGroup& src = g.groups[perm[i]];
    IntMatrix u = random_conjugator(rng, g.n, shears);
    VertexGroup grp;
    grp.automorphism =
        certify_anosov(u * src.automorphism.matrix * inverse_unimodular(u), src.automorphism.epsilon);
    int l = src.l();
    std::vector<int> vp(l);
    for (int v = 0; v < l; ++v) vp[v] = v;
    for (int v = l - 1; v > 0; --v) std::swap(vp[v], vp[rng.below(v + 1)]);
    grp.points.resize(l);
    for (int v = 0; v < l; ++v) grp.points[vp[v]] = axa::apply(u, src.points[v]);
    vperm[perm[i]] = vp;
    out.groups.push_back(std::move(grp));
  }
  for (const GraphEdge& e : g.edges) {
    GraphEdge m = e;
    m.gi = inv[e.gi];
    m.vi = vperm[e.gi][e.vi];
    m.gj = inv[e.gj];
    m.vj = vperm[e.gj][e.vj];
    out.edges.push_back(m);
  }
  out.canonicalize_edges();
  return out;
}

}  // namespace axa
