#pragma once

#include "axa/conjugacy.hpp"
#include "axa/manifold.hpp"
#include "axa/torus.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

namespace axa {

// One basic set: automorphism plus the ordered list of its marked fixed
// points. Vertex s of the group corresponds to points[s].
struct VertexGroup {
  AnosovAutomorphism automorphism;
  std::vector<TorusPoint> points;

  int l() const { return static_cast<int>(points.size()); }

  Triple triple() const {
    Triple t;
    t.automorphism = automorphism;
    t.points.points = points;
    t.points.periods.assign(points.size(), 1);
    sort_point_set(t.points);
    return t;
  }
};

struct GraphEdge {
  int gi = 0, vi = 0, gj = 0, vj = 0;  // normalized: (gi,vi) < (gj,vj)
  bool marked = false;
  std::optional<Rat> pontryagin;

  void normalize() {
    if (std::tie(gi, vi) > std::tie(gj, vj)) {
      std::swap(gi, gj);
      std::swap(vi, vj);
    }
  }
  auto key() const { return std::tie(gi, vi, gj, vj); }
};

struct ClassGraph {
  char variant = 'P';  // 'P' or 'M'
  int n = 0;
  std::vector<VertexGroup> groups;
  std::vector<GraphEdge> edges;

  int k() const { return static_cast<int>(groups.size()); }

  void canonicalize_edges() {
    for (auto& e : edges) e.normalize();
    std::sort(edges.begin(), edges.end(),
              [](const GraphEdge& a, const GraphEdge& b) { return a.key() < b.key(); });
  }
};

// Exact membership test for the admissible Pontryagin sets
// {2(1+2t)^2} (n=8) and {(36/49)(1+2t)^2} (n=16); returns the canonical
// non-negative witness t.
inline std::optional<Int> pontryagin_admissible(const Rat& value, int n) {
  if (n != 8 && n != 16) throw std::invalid_argument("pontryagin number defined for n in {8,16}");
  Rat sq = n == 8 ? value / 2 : value * Rat(49, 36);
  if (denominator(sq) != 1) return std::nullopt;
  Int x = numerator(sq);
  if (x <= 0) return std::nullopt;
  Int s = sqrt(x);
  if (s * s != x || s % 2 == 0) return std::nullopt;
  return (s - 1) / 2;
}

struct ValidationReport {
  struct Item {
    std::string condition;
    bool pass;
    std::string message;
  };
  std::vector<Item> items;
  bool ok = true;

  void add(const std::string& cond, bool pass, const std::string& msg = "") {
    items.push_back({cond, pass, msg});
    if (!pass) ok = false;
  }
};

inline ValidationReport validate_graph(const ClassGraph& g) {
  ValidationReport r;
  const int k = g.k();

  if (g.variant == 'P')
    r.add("dimension", g.n == 8 || g.n == 16, "class P requires n in {8,16}");
  else
    r.add("dimension", g.n >= 3, "class M requires n >= 3");

  bool dims_ok = true;
  for (const auto& grp : g.groups)
    if (grp.automorphism.dim() != g.n) dims_ok = false;
  r.add("uniform-dimension", dims_ok, "all automorphisms must act on the declared torus");

  // condition (1): triples, fixed marked points, both epsilon values present
  bool groups_ok = k >= 2;
  std::string group_msg = k >= 2 ? "" : "k must be >= 2";
  bool has_a = false, has_r = false;
  for (int i = 0; i < k && groups_ok; ++i) {
    const auto& grp = g.groups[i];
    if (grp.automorphism.epsilon == 'a') has_a = true;
    if (grp.automorphism.epsilon == 'r') has_r = true;
    if (grp.l() < 1) {
      groups_ok = false;
      group_msg = "group " + std::to_string(i) + " has no vertices";
      break;
    }
    std::set<TorusPoint> seen;
    for (const auto& p : grp.points) {
      if (!seen.insert(p).second) {
        groups_ok = false;
        group_msg = "group " + std::to_string(i) + " repeats a point";
        break;
      }
      if (axa::apply(grp.automorphism.matrix, p) != p) {
        groups_ok = false;
        group_msg = "group " + std::to_string(i) + " point " + point_to_string(p) +
                    " is not a fixed point";
        break;
      }
    }
  }
  r.add("groups", groups_ok, group_msg);
  r.add("epsilon-mix", has_a && has_r, "need at least one attractor and one repeller group");

  // degrees and marked decoration
  std::map<std::pair<int, int>, int> degree;
  bool edge_refs_ok = true;
  for (const auto& e : g.edges) {
    if (e.gi < 0 || e.gi >= k || e.gj < 0 || e.gj >= k || e.vi < 0 || e.vj < 0 ||
        (e.gi < k && e.vi >= g.groups[e.gi].l()) || (e.gj < k && e.vj >= g.groups[e.gj].l())) {
      edge_refs_ok = false;
      continue;
    }
    degree[{e.gi, e.vi}]++;
    degree[{e.gj, e.vj}]++;
  }
  r.add("edge-references", edge_refs_ok, "edge endpoint out of range");
  if (!edge_refs_ok) return r;

  std::vector<GraphEdge> marked;
  for (const auto& e : g.edges)
    if (e.marked) marked.push_back(e);

  if (g.variant == 'P') {
    bool deg_ok = true;
    std::string deg_msg;
    for (int i = 0; i < k; ++i)
      for (int s = 0; s < g.groups[i].l(); ++s) {
        auto it = degree.find({i, s});
        int d = it == degree.end() ? 0 : it->second;
        if (d != 1) {
          deg_ok = false;
          deg_msg = "vertex (" + std::to_string(i) + "," + std::to_string(s) + ") has degree " +
                    std::to_string(d);
        }
      }
    r.add("degrees", deg_ok, deg_msg);
    r.add("marked-edge", marked.size() == 1, "class P needs exactly one marked edge");
    if (marked.size() == 1) {
      bool p_ok = marked[0].pontryagin && pontryagin_admissible(*marked[0].pontryagin, g.n).has_value();
      r.add("pontryagin", p_ok,
            marked[0].pontryagin ? "value " + rat_to_string(*marked[0].pontryagin) + " not admissible"
                                 : "marked edge carries no Pontryagin number");
    }
  } else {
    bool shape_ok = marked.size() == 2;
    std::pair<int, int> middle{-1, -1};
    std::string msg = "class M needs exactly two marked edges";
    if (shape_ok) {
      std::map<std::pair<int, int>, int> mdeg;
      for (const auto& e : marked) {
        mdeg[{e.gi, e.vi}]++;
        mdeg[{e.gj, e.vj}]++;
      }
      int twos = 0;
      for (const auto& [v, d] : mdeg)
        if (d == 2) {
          ++twos;
          middle = v;
        }
      shape_ok = twos == 1 && mdeg.size() == 3;
      msg = "marked edges must share exactly one middle vertex";
    }
    r.add("marked-y", shape_ok, shape_ok ? "" : msg);
    bool deg_ok = true;
    std::string deg_msg;
    for (int i = 0; i < k && shape_ok; ++i)
      for (int s = 0; s < g.groups[i].l(); ++s) {
        auto it = degree.find({i, s});
        int d = it == degree.end() ? 0 : it->second;
        int want = (std::pair{i, s} == middle) ? 2 : 1;
        if (d != want) {
          deg_ok = false;
          deg_msg = "vertex (" + std::to_string(i) + "," + std::to_string(s) + ") has degree " +
                    std::to_string(d);
        }
      }
    r.add("degrees", deg_ok, deg_msg);
    bool no_p = true;
    for (const auto& e : g.edges)
      if (e.pontryagin) no_p = false;
    r.add("no-pontryagin", no_p, "class M carries no Pontryagin numbers");
  }

  // condition (3): edges join groups of different epsilon
  bool eps_ok = true;
  std::string eps_msg;
  for (const auto& e : g.edges) {
    if (e.gi == e.gj || g.groups[e.gi].automorphism.epsilon == g.groups[e.gj].automorphism.epsilon) {
      eps_ok = false;
      eps_msg = "edge joins vertices with equal epsilon";
    }
  }
  r.add("edge-epsilon", eps_ok, eps_msg);

  // condition (4): connectivity of the group graph
  if (k >= 1) {
    std::vector<int> comp(k, -1);
    std::vector<int> stack{0};
    comp[0] = 0;
    while (!stack.empty()) {
      int g0 = stack.back();
      stack.pop_back();
      for (const auto& e : g.edges) {
        int other = -1;
        if (e.gi == g0) other = e.gj;
        if (e.gj == g0) other = e.gi;
        if (other >= 0 && comp[other] < 0) {
          comp[other] = 0;
          stack.push_back(other);
        }
      }
    }
    bool conn = std::all_of(comp.begin(), comp.end(), [](int c) { return c == 0; });
    r.add("connectivity", conn, "group graph is not connected");
  }

  // condition (5): determinant signs
  if (g.variant == 'P') {
    bool pos = true;
    for (const auto& grp : g.groups)
      if (grp.automorphism.det <= 0) pos = false;
    r.add("determinant-signs", pos, "class P requires positive determinants");
  } else {
    bool same = true;
    for (const auto& grp : g.groups)
      if (sign_of(grp.automorphism.det) != sign_of(g.groups[0].automorphism.det)) same = false;
    r.add("determinant-signs", same, "class M requires one shared determinant sign");
  }

  return r;
}

// One admissible way to carry group i of g1 onto a group of g2: the
// conjugating automorphism, its sign, and the induced vertex relabeling.
struct GroupWitness {
  IntMatrix zeta;
  int sign = 1;
  std::vector<int> vertex_map;  // s -> index in the target group's point list
};

namespace detail {

struct PairWitnesses {
  Status status = Status::Unknown;  // No when a certificate closes the pair
  std::vector<GroupWitness> witnesses;
};

constexpr long kGraphPairBudget = 200'000;
constexpr size_t kMaxWitnessesPerPair = 48;

inline PairWitnesses enumerate_group_witnesses(const VertexGroup& from, const VertexGroup& to,
                                               long bound) {
  PairWitnesses out;
  Triple t1 = from.triple(), t2 = to.triple();
  if (t1.epsilon() != t2.epsilon() || from.l() != to.l() ||
      t1.automorphism.charpoly != t2.automorphism.charpoly) {
    out.status = Status::No;
    return out;
  }
  IntMatrix id = IntMatrix::identity(from.automorphism.dim());
  if (smith_normal_form(from.automorphism.matrix - id).diagonal !=
      smith_normal_form(to.automorphism.matrix - id).diagonal) {
    out.status = Status::No;
    return out;
  }

  std::set<std::pair<std::vector<int>, int>> seen;
  auto visit = [&](const IntMatrix& z, int sign) {
    GroupWitness w;
    w.zeta = z;
    w.sign = sign;
    for (const auto& p : from.points) {
      TorusPoint q = axa::apply(z, p);
      auto it = std::find(to.points.begin(), to.points.end(), q);
      if (it == to.points.end()) return true;
      w.vertex_map.push_back(static_cast<int>(it - to.points.begin()));
    }
    if (seen.insert({w.vertex_map, w.sign}).second) out.witnesses.push_back(std::move(w));
    return seen.size() < kMaxWitnessesPerPair;
  };
  if (from.automorphism.matrix == to.automorphism.matrix)
    visit(IntMatrix::identity(from.automorphism.dim()), 1);
  // grow the search radius only while nothing has been found; witnesses of
  // conjugate pairs built by small unimodular changes sit in the first shells
  if (out.witnesses.empty()) {
    std::vector<IntMatrix> basis =
        intertwiner_basis(from.automorphism.matrix, to.automorphism.matrix);
    for (long b = 1; b <= bound && out.witnesses.empty(); ++b)
      enumerate_unimodular(basis, b, kGraphPairBudget, visit);
  }
  if (!out.witnesses.empty()) out.status = Status::Yes;
  return out;
}

}  // namespace detail

struct CommensurabilityVerdict {
  Status status = Status::Unknown;
  std::string certificate;
  std::vector<int> group_bijection;         // group i of g1 -> group of g2
  std::vector<GroupWitness> group_witnesses;  // aligned with g1 groups
  int common_sign = 0;
};

// Commensurability up to relabeling: a fingerprint-compatible group
// bijection, per-group conjugations mapping marked points onto marked
// points, edge structure preserved, and the determinant-sign rule of the
// variant (all positive for P, one shared sign for M).
inline CommensurabilityVerdict decide_commensurable(const ClassGraph& g1, const ClassGraph& g2,
                                                    long bound = 10) {
  if (g1.variant != g2.variant) throw std::invalid_argument("variant mismatch");
  if (g1.n != g2.n) throw std::invalid_argument("dimension mismatch");

  CommensurabilityVerdict out;
  const int k = g1.k();
  if (k != g2.k()) {
    out.status = Status::No;
    out.certificate = "k";
    return out;
  }
  if (g1.edges.size() != g2.edges.size()) {
    out.status = Status::No;
    out.certificate = "edge-count";
    return out;
  }
  auto fingerprint = [](const VertexGroup& g) {
    return std::make_tuple(g.automorphism.charpoly, g.automorphism.epsilon, g.l());
  };
  {
    std::map<std::tuple<IntPoly, char, int>, int> f1, f2;
    for (const auto& g : g1.groups) f1[fingerprint(g)]++;
    for (const auto& g : g2.groups) f2[fingerprint(g)]++;
    if (f1 != f2) {
      out.status = Status::No;
      out.certificate = "fingerprint-multiset";
      return out;
    }
  }
  if (g1.variant == 'P') {
    Rat p1, p2;
    for (const auto& e : g1.edges)
      if (e.marked && e.pontryagin) p1 = *e.pontryagin;
    for (const auto& e : g2.edges)
      if (e.marked && e.pontryagin) p2 = *e.pontryagin;
    if (p1 != p2) {
      out.status = Status::No;
      out.certificate = "pontryagin";
      return out;
    }
  }

  // target edge lookup: key -> marked flag
  std::map<std::tuple<int, int, int, int>, bool> target_edges;
  for (const auto& e : g2.edges)
    target_edges[{e.gi, e.vi, e.gj, e.vj}] = e.marked;

  std::map<std::pair<int, int>, detail::PairWitnesses> cache;
  auto pair_witnesses = [&](int i, int j) -> const detail::PairWitnesses& {
    auto it = cache.find({i, j});
    if (it != cache.end()) return it->second;
    return cache
        .emplace(std::make_pair(i, j),
                 detail::enumerate_group_witnesses(g1.groups[i], g2.groups[j], bound))
        .first->second;
  };

  std::vector<int> pi(k, -1);
  std::vector<bool> used(k, false);
  std::vector<const GroupWitness*> chosen(k, nullptr);
  bool saw_inconclusive = false;
  bool found = false;

  auto edges_preserved = [&]() {
    for (const auto& e : g1.edges) {
      GraphEdge m;
      m.gi = pi[e.gi];
      m.vi = chosen[e.gi]->vertex_map[e.vi];
      m.gj = pi[e.gj];
      m.vj = chosen[e.gj]->vertex_map[e.vj];
      m.normalize();
      auto it = target_edges.find({m.gi, m.vi, m.gj, m.vj});
      if (it == target_edges.end() || it->second != e.marked) return false;
    }
    return true;
  };

  std::function<void(int, int)> search = [&](int i, int sign) {
    if (found) return;
    if (i == k) {
      if (edges_preserved()) {
        found = true;
        out.status = Status::Yes;
        out.group_bijection = pi;
        out.common_sign = sign == 0 ? 1 : sign;
        for (int g = 0; g < k; ++g) out.group_witnesses.push_back(*chosen[g]);
      }
      return;
    }
    for (int j = 0; j < k && !found; ++j) {
      if (used[j]) continue;
      if (fingerprint(g1.groups[i]) != fingerprint(g2.groups[j])) continue;
      const auto& pw = pair_witnesses(i, j);
      if (pw.status == Status::Unknown) saw_inconclusive = true;
      for (const auto& w : pw.witnesses) {
        if (g1.variant == 'P' && w.sign < 0) continue;
        if (g1.variant == 'M' && sign != 0 && w.sign != sign) continue;
        pi[i] = j;
        used[j] = true;
        chosen[i] = &w;
        search(i + 1, sign == 0 ? w.sign : sign);
        used[j] = false;
        if (found) return;
      }
    }
  };
  search(0, g1.variant == 'P' ? 1 : 0);

  if (found) return out;
  out.status = saw_inconclusive || !cache.empty() ? Status::Unknown : Status::No;
  // If every explored pair was closed by a certificate and no bijection
  // survived, the verdict is a genuine No.
  bool all_no = true;
  for (const auto& [key, pw] : cache)
    if (pw.status != Status::No) all_no = false;
  if (all_no && !cache.empty() && !saw_inconclusive) {
    out.status = Status::No;
    out.certificate = "no-group-matching";
  }
  return out;
}

// Eq.-style connected-sum descriptor: k tori, g = E - k + 1 handles, and
// for P the projective-like summand with its Pontryagin number.
inline ManifoldDescription manifold_of_graph(const ClassGraph& g) {
  ManifoldDescription m;
  m.n = g.n;
  m.torus_count = g.k();
  m.handle_count = static_cast<long>(g.edges.size()) - g.k() + 1;
  if (g.variant == 'P') {
    for (const auto& e : g.edges)
      if (e.marked && e.pontryagin) m.projective_like = *e.pontryagin;
  }
  return m;
}

}  // namespace axa
