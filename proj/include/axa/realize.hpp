#pragma once

#include "axa/graph.hpp"
#include "axa/tube.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace axa {

struct RealizeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// DA block: one torus carrying the automorphism, with one boundary sphere
// per surgery point.
struct DaBlock {
  AnosovAutomorphism automorphism;
  std::vector<TorusPoint> surgery_points;

  int spheres() const { return static_cast<int>(surgery_points.size()); }
};

struct ConnectorEndpoint {
  int block = 0;
  int sphere = 0;

  bool operator==(const ConnectorEndpoint&) const = default;
};

enum class ConnectorKind { Annulus, ProjectiveLike, Saddle };

inline const char* connector_kind_name(ConnectorKind k) {
  switch (k) {
    case ConnectorKind::Annulus: return "annulus";
    case ConnectorKind::ProjectiveLike: return "projective-like";
    case ConnectorKind::Saddle: return "saddle";
  }
  return "?";
}

struct SaddleCounts {
  long a = 0, b = 0, c = 1;
  int saddle_index = 1;
};

struct Connector {
  ConnectorKind kind = ConnectorKind::Annulus;
  std::vector<ConnectorEndpoint> endpoints;
  std::optional<Rat> pontryagin;   // projective-like only
  std::optional<SaddleCounts> counts;  // class S saddle region only
};

struct RealizedSystem {
  char cls = 'S';  // 'S', 'P' or 'M'
  int n = 0;
  std::vector<DaBlock> blocks;
  std::vector<Connector> connectors;
};

// Well-formedness of the gluing data: valid references, every boundary
// sphere used by exactly one endpoint, surgery points fixed by the block
// automorphism.
inline void check_realized(const RealizedSystem& sys) {
  if (sys.cls != 'S' && sys.cls != 'P' && sys.cls != 'M')
    throw RealizeError("unknown realized-system class");
  if (sys.blocks.empty()) throw RealizeError("realized system has no blocks");
  std::map<std::pair<int, int>, int> use;
  for (const auto& conn : sys.connectors)
    for (const auto& ep : conn.endpoints) {
      if (ep.block < 0 || ep.block >= static_cast<int>(sys.blocks.size()))
        throw RealizeError("connector endpoint references missing block " +
                           std::to_string(ep.block));
      if (ep.sphere < 0 || ep.sphere >= sys.blocks[ep.block].spheres())
        throw RealizeError("connector endpoint references missing boundary sphere (" +
                           std::to_string(ep.block) + "," + std::to_string(ep.sphere) + ")");
      use[{ep.block, ep.sphere}]++;
    }
  for (int b = 0; b < static_cast<int>(sys.blocks.size()); ++b) {
    const DaBlock& blk = sys.blocks[b];
    if (blk.automorphism.dim() != sys.n)
      throw RealizeError("block " + std::to_string(b) + " dimension mismatch");
    if (blk.spheres() == 0) throw RealizeError("block " + std::to_string(b) + " has no boundary");
    for (int s = 0; s < blk.spheres(); ++s) {
      auto it = use.find({b, s});
      int cnt = it == use.end() ? 0 : it->second;
      if (cnt != 1)
        throw RealizeError("boundary sphere (" + std::to_string(b) + "," + std::to_string(s) +
                           ") used " + std::to_string(cnt) + " times");
    }
    for (const auto& p : blk.surgery_points)
      if (axa::apply(blk.automorphism.matrix, p) != p)
        throw RealizeError("surgery point " + point_to_string(p) + " of block " +
                           std::to_string(b) + " is not fixed");
  }
}

inline RealizedSystem realize(const SInvariant& s) {
  SValidation v = validate_s(s);
  if (!v.ok) throw RealizeError("invalid S invariant: " + v.failures.front());
  RealizedSystem sys;
  sys.cls = 'S';
  sys.n = s.tube.dim();
  Connector saddle;
  saddle.kind = ConnectorKind::Saddle;
  saddle.counts = SaddleCounts{s.a, s.b, s.c, s.saddle_index};
  TorusPoint origin(sys.n, Rat(0));
  for (int i = 0; i < s.tube.k(); ++i) {
    DaBlock blk;
    blk.automorphism = s.tube.autos[i];
    blk.surgery_points = {origin};
    sys.blocks.push_back(std::move(blk));
    saddle.endpoints.push_back({i, 0});
  }
  sys.connectors.push_back(std::move(saddle));
  check_realized(sys);
  return sys;
}

inline RealizedSystem realize(const ClassGraph& g) {
  ValidationReport r = validate_graph(g);
  if (!r.ok) {
    for (const auto& item : r.items)
      if (!item.pass) throw RealizeError("invalid graph: " + item.condition + ": " + item.message);
  }
  RealizedSystem sys;
  sys.cls = g.variant;
  sys.n = g.n;
  for (const auto& grp : g.groups) {
    DaBlock blk;
    blk.automorphism = grp.automorphism;
    blk.surgery_points = grp.points;
    sys.blocks.push_back(std::move(blk));
  }
  if (g.variant == 'P') {
    for (const auto& e : g.edges) {
      Connector conn;
      conn.kind = e.marked ? ConnectorKind::ProjectiveLike : ConnectorKind::Annulus;
      if (e.marked) conn.pontryagin = e.pontryagin;
      conn.endpoints = {{e.gi, e.vi}, {e.gj, e.vj}};
      sys.connectors.push_back(std::move(conn));
    }
  } else {
    // The two marked edges become one three-boundary saddle region whose
    // first endpoint is the shared middle vertex.
    std::vector<GraphEdge> marked;
    for (const auto& e : g.edges) {
      if (e.marked) {
        marked.push_back(e);
        continue;
      }
      Connector conn;
      conn.kind = ConnectorKind::Annulus;
      conn.endpoints = {{e.gi, e.vi}, {e.gj, e.vj}};
      sys.connectors.push_back(std::move(conn));
    }
    std::map<std::pair<int, int>, int> deg;
    for (const auto& e : marked) {
      deg[{e.gi, e.vi}]++;
      deg[{e.gj, e.vj}]++;
    }
    std::pair<int, int> middle{-1, -1};
    for (const auto& [v, d] : deg)
      if (d == 2) middle = v;
    Connector y;
    y.kind = ConnectorKind::Saddle;
    y.endpoints.push_back({middle.first, middle.second});
    for (const auto& e : marked) {
      std::pair<int, int> other =
          std::pair{e.gi, e.vi} == middle ? std::pair{e.gj, e.vj} : std::pair{e.gi, e.vi};
      y.endpoints.push_back({other.first, other.second});
    }
    sys.connectors.push_back(std::move(y));
  }
  check_realized(sys);
  return sys;
}

inline std::variant<SInvariant, ClassGraph> extract_invariant(const RealizedSystem& sys) {
  check_realized(sys);
  if (sys.cls == 'S') {
    if (sys.connectors.size() != 1 || sys.connectors[0].kind != ConnectorKind::Saddle ||
        !sys.connectors[0].counts)
      throw RealizeError("class S system must carry exactly one counted saddle region");
    SInvariant s;
    for (const auto& blk : sys.blocks) s.tube.autos.push_back(blk.automorphism);
    const SaddleCounts& sc = *sys.connectors[0].counts;
    s.a = sc.a;
    s.b = sc.b;
    s.c = sc.c;
    s.saddle_index = sc.saddle_index;
    SValidation v = validate_s(s);
    if (!v.ok) throw RealizeError("extracted S invariant invalid: " + v.failures.front());
    return s;
  }

  ClassGraph g;
  g.variant = sys.cls;
  g.n = sys.n;
  for (const auto& blk : sys.blocks) {
    VertexGroup grp;
    grp.automorphism = blk.automorphism;
    grp.points = blk.surgery_points;
    g.groups.push_back(std::move(grp));
  }
  for (const auto& conn : sys.connectors) {
    if (conn.kind == ConnectorKind::Annulus) {
      if (conn.endpoints.size() != 2) throw RealizeError("annulus must have two endpoints");
      GraphEdge e;
      e.gi = conn.endpoints[0].block;
      e.vi = conn.endpoints[0].sphere;
      e.gj = conn.endpoints[1].block;
      e.vj = conn.endpoints[1].sphere;
      g.edges.push_back(e);
    } else if (conn.kind == ConnectorKind::ProjectiveLike) {
      if (sys.cls != 'P') throw RealizeError("projective-like region outside class P");
      if (conn.endpoints.size() != 2 || !conn.pontryagin)
        throw RealizeError("projective-like region must join two spheres with a Pontryagin number");
      GraphEdge e;
      e.gi = conn.endpoints[0].block;
      e.vi = conn.endpoints[0].sphere;
      e.gj = conn.endpoints[1].block;
      e.vj = conn.endpoints[1].sphere;
      e.marked = true;
      e.pontryagin = conn.pontryagin;
      g.edges.push_back(e);
    } else {
      if (sys.cls != 'M') throw RealizeError("three-boundary saddle region outside class M");
      if (conn.endpoints.size() != 3)
        throw RealizeError("class M saddle region must have three endpoints");
      for (int i = 1; i <= 2; ++i) {
        GraphEdge e;
        e.gi = conn.endpoints[0].block;
        e.vi = conn.endpoints[0].sphere;
        e.gj = conn.endpoints[i].block;
        e.vj = conn.endpoints[i].sphere;
        e.marked = true;
        g.edges.push_back(e);
      }
    }
  }
  g.canonicalize_edges();
  ValidationReport r = validate_graph(g);
  if (!r.ok) {
    for (const auto& item : r.items)
      if (!item.pass) throw RealizeError("extracted graph invalid: " + item.condition);
  }
  return g;
}

}  // namespace axa
