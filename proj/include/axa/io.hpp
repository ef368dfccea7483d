#pragma once

#include "axa/conjugacy.hpp"
#include "axa/graph.hpp"
#include "axa/realize.hpp"
#include "axa/tube.hpp"

#include "json.hpp"

#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace axa {

using Json = nlohmann::ordered_json;

// Syntax or schema violation; maps to exit code 3.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Structurally well-formed file whose content fails a semantic condition
// (e.g. a matrix that is not a codimension one Anosov automorphism); maps
// to exit code 1.
struct InvalidInvariant : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace io_detail {

inline const Json& field(const Json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(where + ": missing field '" + key + "'");
  return *it;
}

inline long get_long(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ParseError(where + ": expected an integer");
  return j.get<long>();
}

inline Int get_int(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Int(j.get<long long>());
  if (j.is_string()) {
    try {
      return Int(j.get<std::string>());
    } catch (const std::exception&) {
      throw ParseError(where + ": bad integer literal '" + j.get<std::string>() + "'");
    }
  }
  throw ParseError(where + ": expected an integer or integer string");
}

inline Rat get_rat(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Rat(Int(j.get<long long>()));
  if (!j.is_string()) throw ParseError(where + ": expected a rational as \"p/q\" string");
  try {
    return rat_from_string(j.get<std::string>());
  } catch (const std::exception& e) {
    throw ParseError(where + ": " + e.what());
  }
}

inline IntMatrix get_matrix(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw ParseError(where + ": matrix must be a non-empty array");
  const int n = static_cast<int>(j.size());
  IntMatrix m(n);
  for (int i = 0; i < n; ++i) {
    const Json& row = j[i];
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw ParseError(where + ": row " + std::to_string(i) + " must have " + std::to_string(n) +
                       " entries");
    for (int k = 0; k < n; ++k)
      m.at(i, k) = get_int(row[k], where + "[" + std::to_string(i) + "][" + std::to_string(k) + "]");
  }
  return m;
}

inline char get_epsilon(const Json& j, const std::string& where) {
  if (!j.is_string()) throw ParseError(where + ": epsilon must be \"a\" or \"r\"");
  std::string s = j.get<std::string>();
  if (s != "a" && s != "r") throw ParseError(where + ": epsilon must be \"a\" or \"r\"");
  return s[0];
}

inline TorusPoint get_point(const Json& j, int n, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != n)
    throw ParseError(where + ": point must have " + std::to_string(n) + " coordinates");
  TorusPoint p;
  for (size_t i = 0; i < j.size(); ++i)
    p.push_back(get_rat(j[i], where + "[" + std::to_string(i) + "]"));
  return canonical_point(p);
}

inline AnosovAutomorphism get_anosov(const Json& j, const std::string& where) {
  IntMatrix m = get_matrix(field(j, "matrix", where), where + ".matrix");
  char eps = get_epsilon(field(j, "epsilon", where), where + ".epsilon");
  AnosovCheck c = check_anosov(m, eps);
  if (!c.ok())
    throw InvalidInvariant(where + ": " + reject_name(c.reject) + " (" + c.detail + ")");
  return *c.value;
}

inline Json matrix_to_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.dim(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.dim(); ++j) {
      const Int& e = m.at(i, j);
      if (e >= std::numeric_limits<long long>::min() && e <= std::numeric_limits<long long>::max())
        row.push_back(static_cast<long long>(e));
      else
        row.push_back(e.str());
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json point_to_json(const TorusPoint& p) {
  Json out = Json::array();
  for (const Rat& c : p) out.push_back(rat_to_string(c));
  return out;
}

}  // namespace io_detail

// A parsed invariant file: class S, P, M, a single triple (class A) or a
// realized system (class R).
struct InvariantFile {
  char cls = 'S';
  std::variant<SInvariant, ClassGraph, Triple, RealizedSystem> payload;

  const SInvariant& s() const { return std::get<SInvariant>(payload); }
  const ClassGraph& graph() const { return std::get<ClassGraph>(payload); }
  const Triple& triple() const { return std::get<Triple>(payload); }
  const RealizedSystem& realized() const { return std::get<RealizedSystem>(payload); }
};

inline SInvariant parse_s(const Json& j) {
  using namespace io_detail;
  SInvariant s;
  const Json& tube = field(j, "tube", "$");
  if (!tube.is_array() || tube.empty()) throw ParseError("$.tube: must be a non-empty array");
  for (size_t i = 0; i < tube.size(); ++i)
    s.tube.autos.push_back(get_anosov(tube[i], "$.tube[" + std::to_string(i) + "]"));
  long n = get_long(field(j, "n", "$"), "$.n");
  if (n != s.tube.dim())
    throw ParseError("$.n: declared dimension " + std::to_string(n) + " does not match matrices");
  s.a = get_long(field(j, "a", "$"), "$.a");
  s.b = get_long(field(j, "b", "$"), "$.b");
  s.c = get_long(field(j, "c", "$"), "$.c");
  if (j.contains("saddle_index"))
    s.saddle_index = static_cast<int>(get_long(j["saddle_index"], "$.saddle_index"));
  else
    s.saddle_index = t_u(s.tube) == 1 ? 1 : s.tube.dim() - 1;
  return s;
}

inline ClassGraph parse_graph(const Json& j, char variant) {
  using namespace io_detail;
  ClassGraph g;
  g.variant = variant;
  g.n = static_cast<int>(get_long(field(j, "n", "$"), "$.n"));
  const Json& groups = field(j, "groups", "$");
  if (!groups.is_array() || groups.empty()) throw ParseError("$.groups: must be a non-empty array");
  for (size_t i = 0; i < groups.size(); ++i) {
    std::string where = "$.groups[" + std::to_string(i) + "]";
    VertexGroup grp;
    grp.automorphism = get_anosov(groups[i], where);
    const Json& pts = field(groups[i], "points", where);
    if (!pts.is_array() || pts.empty())
      throw ParseError(where + ".points: must be a non-empty array");
    for (size_t s = 0; s < pts.size(); ++s)
      grp.points.push_back(
          get_point(pts[s], grp.automorphism.dim(), where + ".points[" + std::to_string(s) + "]"));
    g.groups.push_back(std::move(grp));
  }
  const Json& edges = field(j, "edges", "$");
  if (!edges.is_array()) throw ParseError("$.edges: must be an array");
  for (size_t i = 0; i < edges.size(); ++i) {
    std::string where = "$.edges[" + std::to_string(i) + "]";
    const Json& je = edges[i];
    GraphEdge e;
    const Json& from = field(je, "from", where);
    const Json& to = field(je, "to", where);
    if (!from.is_array() || from.size() != 2 || !to.is_array() || to.size() != 2)
      throw ParseError(where + ": from/to must be [group, vertex] pairs");
    e.gi = static_cast<int>(get_long(from[0], where + ".from[0]"));
    e.vi = static_cast<int>(get_long(from[1], where + ".from[1]"));
    e.gj = static_cast<int>(get_long(to[0], where + ".to[0]"));
    e.vj = static_cast<int>(get_long(to[1], where + ".to[1]"));
    if (je.contains("marked")) {
      if (!je["marked"].is_boolean()) throw ParseError(where + ".marked: must be a boolean");
      e.marked = je["marked"].get<bool>();
    }
    if (je.contains("pontryagin")) e.pontryagin = get_rat(je["pontryagin"], where + ".pontryagin");
    g.edges.push_back(std::move(e));
  }
  g.canonicalize_edges();
  return g;
}

inline Triple parse_triple(const Json& j) {
  using namespace io_detail;
  Triple t;
  t.automorphism = get_anosov(j, "$");
  long n = get_long(field(j, "n", "$"), "$.n");
  if (n != t.automorphism.dim())
    throw ParseError("$.n: declared dimension does not match the matrix");
  if (j.contains("points")) {
    const Json& pts = j["points"];
    if (!pts.is_array()) throw ParseError("$.points: must be an array");
    for (size_t s = 0; s < pts.size(); ++s)
      t.points.points.push_back(
          get_point(pts[s], t.automorphism.dim(), "$.points[" + std::to_string(s) + "]"));
    if (j.contains("periods")) {
      const Json& per = j["periods"];
      if (!per.is_array() || per.size() != pts.size())
        throw ParseError("$.periods: must align with points");
      for (size_t s = 0; s < per.size(); ++s)
        t.points.periods.push_back(get_long(per[s], "$.periods[" + std::to_string(s) + "]"));
    } else {
      t.points.periods.assign(t.points.points.size(), 1);
    }
    sort_point_set(t.points);
  }
  return t;
}

inline RealizedSystem parse_realized(const Json& j) {
  using namespace io_detail;
  RealizedSystem sys;
  const Json& sysclass = field(j, "system", "$");
  if (!sysclass.is_string() || sysclass.get<std::string>().size() != 1)
    throw ParseError("$.system: must be \"S\", \"P\" or \"M\"");
  sys.cls = sysclass.get<std::string>()[0];
  sys.n = static_cast<int>(get_long(field(j, "n", "$"), "$.n"));
  const Json& blocks = field(j, "blocks", "$");
  if (!blocks.is_array() || blocks.empty()) throw ParseError("$.blocks: must be a non-empty array");
  for (size_t i = 0; i < blocks.size(); ++i) {
    std::string where = "$.blocks[" + std::to_string(i) + "]";
    DaBlock blk;
    blk.automorphism = get_anosov(blocks[i], where);
    const Json& pts = field(blocks[i], "points", where);
    if (!pts.is_array()) throw ParseError(where + ".points: must be an array");
    for (size_t s = 0; s < pts.size(); ++s)
      blk.surgery_points.push_back(
          get_point(pts[s], blk.automorphism.dim(), where + ".points[" + std::to_string(s) + "]"));
    sys.blocks.push_back(std::move(blk));
  }
  const Json& conns = field(j, "connectors", "$");
  if (!conns.is_array()) throw ParseError("$.connectors: must be an array");
  for (size_t i = 0; i < conns.size(); ++i) {
    std::string where = "$.connectors[" + std::to_string(i) + "]";
    const Json& jc = conns[i];
    Connector conn;
    const Json& kind = field(jc, "kind", where);
    if (!kind.is_string()) throw ParseError(where + ".kind: must be a string");
    std::string ks = kind.get<std::string>();
    if (ks == "annulus")
      conn.kind = ConnectorKind::Annulus;
    else if (ks == "projective-like")
      conn.kind = ConnectorKind::ProjectiveLike;
    else if (ks == "saddle")
      conn.kind = ConnectorKind::Saddle;
    else
      throw ParseError(where + ".kind: unknown kind '" + ks + "'");
    const Json& eps = field(jc, "endpoints", where);
    if (!eps.is_array()) throw ParseError(where + ".endpoints: must be an array");
    for (size_t s = 0; s < eps.size(); ++s) {
      const Json& je = eps[s];
      if (!je.is_array() || je.size() != 2)
        throw ParseError(where + ".endpoints[" + std::to_string(s) + "]: must be [block, sphere]");
      conn.endpoints.push_back({static_cast<int>(get_long(je[0], where)),
                                static_cast<int>(get_long(je[1], where))});
    }
    if (jc.contains("pontryagin")) conn.pontryagin = get_rat(jc["pontryagin"], where + ".pontryagin");
    if (jc.contains("counts")) {
      const Json& jn = jc["counts"];
      SaddleCounts sc;
      sc.a = get_long(field(jn, "a", where), where + ".counts.a");
      sc.b = get_long(field(jn, "b", where), where + ".counts.b");
      sc.c = get_long(field(jn, "c", where), where + ".counts.c");
      sc.saddle_index =
          static_cast<int>(get_long(field(jn, "saddle_index", where), where + ".counts.saddle_index"));
      conn.counts = sc;
    }
    sys.connectors.push_back(std::move(conn));
  }
  return sys;
}

inline InvariantFile parse_invariant(const Json& j) {
  using namespace io_detail;
  if (!j.is_object()) throw ParseError("$: top level must be an object");
  const Json& v = field(j, "v", "$");
  if (!v.is_number_integer() || v.get<long>() != 1)
    throw ParseError("$.v: unsupported schema version");
  const Json& cls = field(j, "class", "$");
  if (!cls.is_string()) throw ParseError("$.class: must be a string");
  std::string c = cls.get<std::string>();
  InvariantFile out;
  if (c == "S") {
    out.cls = 'S';
    out.payload = parse_s(j);
  } else if (c == "P" || c == "M") {
    out.cls = c[0];
    out.payload = parse_graph(j, c[0]);
  } else if (c == "A") {
    out.cls = 'A';
    out.payload = parse_triple(j);
  } else if (c == "R") {
    out.cls = 'R';
    out.payload = parse_realized(j);
  } else {
    throw ParseError("$.class: unknown class '" + c + "'");
  }
  return out;
}

inline InvariantFile parse_invariant_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("json: ") + e.what());
  }
  return parse_invariant(j);
}

inline InvariantFile parse_invariant_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_invariant_text(buf.str());
}

inline Json serialize(const SInvariant& s) {
  using namespace io_detail;
  Json j;
  j["v"] = 1;
  j["class"] = "S";
  j["n"] = s.tube.dim();
  Json tube = Json::array();
  for (const auto& a : s.tube.autos) {
    Json m;
    m["matrix"] = matrix_to_json(a.matrix);
    m["epsilon"] = std::string(1, a.epsilon);
    tube.push_back(std::move(m));
  }
  j["tube"] = std::move(tube);
  j["a"] = s.a;
  j["b"] = s.b;
  j["c"] = s.c;
  j["saddle_index"] = s.saddle_index;
  return j;
}

inline Json serialize(const ClassGraph& g) {
  using namespace io_detail;
  Json j;
  j["v"] = 1;
  j["class"] = std::string(1, g.variant);
  j["n"] = g.n;
  Json groups = Json::array();
  for (const auto& grp : g.groups) {
    Json m;
    m["matrix"] = matrix_to_json(grp.automorphism.matrix);
    m["epsilon"] = std::string(1, grp.automorphism.epsilon);
    Json pts = Json::array();
    for (const auto& p : grp.points) pts.push_back(point_to_json(p));
    m["points"] = std::move(pts);
    groups.push_back(std::move(m));
  }
  j["groups"] = std::move(groups);
  Json edges = Json::array();
  for (const auto& e : g.edges) {
    Json je;
    je["from"] = Json::array({e.gi, e.vi});
    je["to"] = Json::array({e.gj, e.vj});
    je["marked"] = e.marked;
    if (e.pontryagin) je["pontryagin"] = rat_to_string(*e.pontryagin);
    edges.push_back(std::move(je));
  }
  j["edges"] = std::move(edges);
  return j;
}

inline Json serialize(const Triple& t) {
  using namespace io_detail;
  Json j;
  j["v"] = 1;
  j["class"] = "A";
  j["n"] = t.dim();
  j["matrix"] = matrix_to_json(t.automorphism.matrix);
  j["epsilon"] = std::string(1, t.automorphism.epsilon);
  Json pts = Json::array();
  for (const auto& p : t.points.points) pts.push_back(point_to_json(p));
  j["points"] = std::move(pts);
  Json per = Json::array();
  for (long p : t.points.periods) per.push_back(p);
  j["periods"] = std::move(per);
  return j;
}

inline Json serialize(const RealizedSystem& sys) {
  using namespace io_detail;
  Json j;
  j["v"] = 1;
  j["class"] = "R";
  j["system"] = std::string(1, sys.cls);
  j["n"] = sys.n;
  Json blocks = Json::array();
  for (const auto& blk : sys.blocks) {
    Json b;
    b["matrix"] = matrix_to_json(blk.automorphism.matrix);
    b["epsilon"] = std::string(1, blk.automorphism.epsilon);
    Json pts = Json::array();
    for (const auto& p : blk.surgery_points) pts.push_back(point_to_json(p));
    b["points"] = std::move(pts);
    blocks.push_back(std::move(b));
  }
  j["blocks"] = std::move(blocks);
  Json conns = Json::array();
  for (const auto& conn : sys.connectors) {
    Json c;
    c["kind"] = connector_kind_name(conn.kind);
    Json eps = Json::array();
    for (const auto& ep : conn.endpoints) eps.push_back(Json::array({ep.block, ep.sphere}));
    c["endpoints"] = std::move(eps);
    if (conn.pontryagin) c["pontryagin"] = rat_to_string(*conn.pontryagin);
    if (conn.counts) {
      Json n;
      n["a"] = conn.counts->a;
      n["b"] = conn.counts->b;
      n["c"] = conn.counts->c;
      n["saddle_index"] = conn.counts->saddle_index;
      c["counts"] = std::move(n);
    }
    conns.push_back(std::move(c));
  }
  j["connectors"] = std::move(conns);
  return j;
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace axa
