#pragma once

#include "axa/int_types.hpp"
#include "axa/matrix.hpp"
#include "axa/poly.hpp"
#include "axa/smith.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace axa {

// Point on the n-torus, every coordinate reduced into [0, 1).
using TorusPoint = std::vector<Rat>;

inline TorusPoint canonical_point(TorusPoint p) {
  for (Rat& c : p) c = mod1(c);
  return p;
}

inline bool point_less(const TorusPoint& a, const TorusPoint& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

inline TorusPoint apply(const IntMatrix& z, const TorusPoint& p) {
  if (z.dim() != static_cast<int>(p.size()))
    throw std::invalid_argument("apply: dimension mismatch");
  return canonical_point(z * p);
}

inline std::string point_to_string(const TorusPoint& p) {
  std::string s = "(";
  for (size_t i = 0; i < p.size(); ++i) {
    if (i) s += ", ";
    s += rat_to_string(p[i]);
  }
  return s + ")";
}

// Codimension one hyperbolic unimodular automorphism with its epsilon label:
// 'a' when the stable direction is one-dimensional, 'r' when the unstable
// direction is. Construct only through check_anosov.
struct AnosovAutomorphism {
  IntMatrix matrix;
  char epsilon = 'a';
  ModulusProfile profile;
  Int det;
  IntPoly charpoly;

  int dim() const { return matrix.dim(); }
};

enum class AnosovReject {
  None,
  BadDimension,
  NotUnimodular,
  NotHyperbolic,
  NotCodimensionOne,
  EpsilonMismatch,
};

inline const char* reject_name(AnosovReject r) {
  switch (r) {
    case AnosovReject::None: return "none";
    case AnosovReject::BadDimension: return "bad dimension";
    case AnosovReject::NotUnimodular: return "not unimodular";
    case AnosovReject::NotHyperbolic: return "not hyperbolic";
    case AnosovReject::NotCodimensionOne: return "not codimension one";
    case AnosovReject::EpsilonMismatch: return "epsilon mismatch";
  }
  return "?";
}

struct AnosovCheck {
  std::optional<AnosovAutomorphism> value;
  AnosovReject reject = AnosovReject::None;
  std::string detail;

  bool ok() const { return value.has_value(); }
};

inline AnosovCheck check_anosov(const IntMatrix& m, char epsilon) {
  AnosovCheck out;
  if (m.dim() < 2) {
    out.reject = AnosovReject::BadDimension;
    out.detail = "dimension must be >= 2";
    return out;
  }
  if (epsilon != 'a' && epsilon != 'r')
    throw std::invalid_argument("epsilon must be 'a' or 'r'");
  Int d = determinant(m);
  if (d != 1 && d != -1) {
    out.reject = AnosovReject::NotUnimodular;
    out.detail = "determinant " + d.str();
    return out;
  }
  ModulusProfile prof = eigenvalue_modulus_profile(m);
  if (prof.on != 0) {
    out.reject = AnosovReject::NotHyperbolic;
    out.detail = "eigenvalues of modulus one";
    return out;
  }
  if (prof.inside != 1 && prof.outside != 1) {
    out.reject = AnosovReject::NotCodimensionOne;
    out.detail = "modulus profile (" + std::to_string(prof.inside) + ", 0, " +
                 std::to_string(prof.outside) + ")";
    return out;
  }
  bool a_ok = prof.inside == 1;
  bool r_ok = prof.outside == 1;
  if ((epsilon == 'a' && !a_ok) || (epsilon == 'r' && !r_ok)) {
    out.reject = AnosovReject::EpsilonMismatch;
    out.detail = std::string("profile admits only epsilon = ") + (a_ok ? 'a' : 'r');
    return out;
  }
  AnosovAutomorphism a;
  a.matrix = m;
  a.epsilon = epsilon;
  a.profile = prof;
  a.det = d;
  a.charpoly = char_poly(m);
  out.value = std::move(a);
  return out;
}

inline AnosovAutomorphism certify_anosov(const IntMatrix& m, char epsilon) {
  AnosovCheck c = check_anosov(m, epsilon);
  if (!c.ok())
    throw std::invalid_argument(std::string("not a codimension one Anosov automorphism: ") +
                                reject_name(c.reject) + " (" + c.detail + ")");
  return *c.value;
}

// Finite invariant set of periodic points, with exact least periods.
struct PointSet {
  std::vector<TorusPoint> points;  // sorted, canonical, no duplicates
  std::vector<long> periods;       // aligned with points

  size_t size() const { return points.size(); }

  bool contains(const TorusPoint& p) const {
    return std::binary_search(points.begin(), points.end(), p, point_less);
  }

  std::vector<long> period_multiset() const {
    std::vector<long> m = periods;
    std::sort(m.begin(), m.end());
    return m;
  }
};

inline void sort_point_set(PointSet& ps) {
  std::vector<size_t> idx(ps.points.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(),
            [&](size_t a, size_t b) { return point_less(ps.points[a], ps.points[b]); });
  PointSet out;
  for (size_t i : idx) {
    out.points.push_back(ps.points[i]);
    out.periods.push_back(ps.periods.empty() ? 1 : ps.periods[i]);
  }
  ps = std::move(out);
}

// All x in [0,1)^n with m*x = x (mod Z^n), for det(m - I) != 0, enumerated
// through the Smith transforms of m - I.
inline std::vector<TorusPoint> lattice_torsion_points(const IntMatrix& m_minus_i) {
  const int n = m_minus_i.dim();
  SmithForm s = smith_normal_form(m_minus_i);
  for (const Int& d : s.diagonal)
    if (d == 0)
      throw std::invalid_argument("fixed points: matrix minus identity is singular");
  // (m-I) x in Z^n  <=>  x = right * u with u_i multiples of 1/d_i
  std::vector<TorusPoint> out;
  std::vector<Int> counter(n, 0);
  for (;;) {
    TorusPoint u(n);
    for (int i = 0; i < n; ++i) u[i] = Rat(counter[i], s.diagonal[i]);
    TorusPoint x(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) x[i] += Rat(s.right.at(i, j)) * u[j];
    out.push_back(canonical_point(x));
    int pos = n - 1;
    while (pos >= 0) {
      counter[pos] += 1;
      if (counter[pos] < s.diagonal[pos]) break;
      counter[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  std::sort(out.begin(), out.end(), point_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline PointSet fixed_points(const AnosovAutomorphism& a) {
  PointSet ps;
  ps.points = lattice_torsion_points(a.matrix - IntMatrix::identity(a.dim()));
  ps.periods.assign(ps.points.size(), 1);
  return ps;
}

// Fixed points of A^m, annotated with exact least periods (divisors of m).
inline PointSet periodic_points(const AnosovAutomorphism& a, long m) {
  if (m < 1) throw std::invalid_argument("periodic_points: period must be >= 1");
  IntMatrix power = IntMatrix::identity(a.dim());
  for (long i = 0; i < m; ++i) power = power * a.matrix;
  PointSet ps;
  ps.points = lattice_torsion_points(power - IntMatrix::identity(a.dim()));
  ps.periods.resize(ps.points.size());
  for (size_t i = 0; i < ps.points.size(); ++i) {
    TorusPoint x = ps.points[i];
    long period = 1;
    TorusPoint y = axa::apply(a.matrix, x);
    while (y != x) {
      y = axa::apply(a.matrix, y);
      ++period;
    }
    ps.periods[i] = period;
  }
  return ps;
}

}  // namespace axa
