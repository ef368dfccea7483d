#pragma once

#include "axa/int_types.hpp"
#include "axa/matrix.hpp"

#include <boost/multiprecision/cpp_complex.hpp>

#include <algorithm>
#include <cassert>
#include <tuple>
#include <vector>

namespace axa {

// Polynomials are coefficient vectors in ascending degree order.
using IntPoly = std::vector<Int>;
using RatPoly = std::vector<Rat>;

namespace poly {

inline void strip(RatPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}
inline void strip(IntPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}
inline int degree(const RatPoly& p) { return static_cast<int>(p.size()) - 1; }
inline int degree(const IntPoly& p) { return static_cast<int>(p.size()) - 1; }

inline RatPoly to_rat(const IntPoly& p) {
  RatPoly r(p.size());
  for (size_t i = 0; i < p.size(); ++i) r[i] = Rat(p[i]);
  return r;
}

template <typename P, typename T>
T eval(const P& p, const T& x) {
  T acc{};
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + T(*it);
  return acc;
}

inline RatPoly derivative(const RatPoly& p) {
  RatPoly d;
  for (size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * Rat(Int(i)));
  strip(d);
  return d;
}
inline IntPoly derivative(const IntPoly& p) {
  IntPoly d;
  for (size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * Int(i));
  strip(d);
  return d;
}

inline RatPoly mul(const RatPoly& a, const RatPoly& b) {
  if (a.empty() || b.empty()) return {};
  RatPoly r(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  strip(r);
  return r;
}

inline std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b) {
  assert(!b.empty());
  RatPoly rem = a, quot(a.size() > b.size() ? a.size() - b.size() + 1 : 1);
  strip(rem);
  while (degree(rem) >= degree(b)) {
    int k = degree(rem) - degree(b);
    Rat c = rem.back() / b.back();
    quot[k] = c;
    for (size_t i = 0; i < b.size(); ++i) rem[k + i] -= c * b[i];
    strip(rem);
    if (rem.empty()) break;
  }
  strip(quot);
  return {quot, rem};
}

inline RatPoly monic(RatPoly p) {
  strip(p);
  if (p.empty()) return p;
  Rat lead = p.back();
  for (auto& c : p) c /= lead;
  return p;
}

inline RatPoly gcd(RatPoly a, RatPoly b) {
  strip(a);
  strip(b);
  while (!b.empty()) {
    auto [q, r] = divmod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

// Primitive integer polynomial with positive leading coefficient.
inline IntPoly primitive(const RatPoly& p) {
  if (p.empty()) return {};
  Int l = 1;
  for (const Rat& c : p) l = lcm(l, denominator(c));
  IntPoly q(p.size());
  Int content = 0;
  for (size_t i = 0; i < p.size(); ++i) {
    Rat v = p[i] * Rat(l);
    assert(denominator(v) == 1);
    q[i] = numerator(v);
    content = gcd(content, q[i]);
  }
  if (content > 1)
    for (Int& c : q) c /= content;
  if (q.back() < 0)
    for (Int& c : q) c = -c;
  return q;
}

// x^deg * p(1/x), coefficients reversed.
inline IntPoly reversed(const IntPoly& p) {
  IntPoly r(p.rbegin(), p.rend());
  strip(r);
  return r;
}

// Yun squarefree decomposition: returns (squarefree factor, multiplicity)
// pairs whose product with multiplicity is p up to a constant.
inline std::vector<std::pair<IntPoly, int>> squarefree_decomposition(const IntPoly& p) {
  std::vector<std::pair<IntPoly, int>> out;
  RatPoly a = to_rat(p);
  strip(a);
  if (degree(a) < 1) return out;
  RatPoly da = derivative(a);
  RatPoly g = gcd(a, da);
  if (degree(g) == 0) {
    out.push_back({primitive(a), 1});
    return out;
  }
  RatPoly w = divmod(a, g).first;
  RatPoly y = divmod(da, g).first;
  RatPoly z;
  {
    RatPoly dw = derivative(w);
    z = y;
    z.resize(std::max(z.size(), dw.size()));
    for (size_t i = 0; i < dw.size(); ++i) z[i] -= dw[i];
    strip(z);
  }
  int i = 1;
  while (degree(w) > 0) {
    RatPoly gi = gcd(w, z);
    if (degree(gi) > 0) out.push_back({primitive(gi), i});
    w = divmod(w, gi).first;
    RatPoly yq = divmod(z, gi).first;
    RatPoly dw = derivative(w);
    z = yq;
    z.resize(std::max(z.size(), dw.size()));
    for (size_t i2 = 0; i2 < dw.size(); ++i2) z[i2] -= dw[i2];
    strip(z);
    ++i;
  }
  return out;
}

inline int sign_variations(const std::vector<RatPoly>& chain, const Rat& x) {
  int v = 0, last = 0;
  for (const auto& p : chain) {
    Rat val = eval(p, x);
    int s = val > 0 ? 1 : (val < 0 ? -1 : 0);
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

// Number of distinct real roots of p in the half-open interval (a, b].
inline int sturm_root_count(const IntPoly& p, const Rat& a, const Rat& b) {
  RatPoly f = to_rat(p);
  strip(f);
  if (degree(f) < 1) return 0;
  // squarefree part
  f = divmod(f, gcd(f, derivative(f))).first;
  std::vector<RatPoly> chain{f, derivative(f)};
  while (degree(chain.back()) > 0) {
    RatPoly r = divmod(chain[chain.size() - 2], chain.back()).second;
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    chain.push_back(std::move(r));
  }
  return sign_variations(chain, a) - sign_variations(chain, b);
}

// Exact count (with multiplicity within a squarefree factor not applied here)
// of unit-circle roots of a squarefree integer polynomial. Roots at +-1 are
// divided out; the remaining self-inverse root pairs are detected through the
// substitution y = x + 1/x, which maps unit-circle pairs to real y in (-2, 2).
inline int unit_circle_roots_squarefree(const IntPoly& s) {
  RatPoly h = to_rat(s);
  strip(h);
  int cnt = 0;
  for (int root : {1, -1}) {
    if (eval(h, Rat(root)) == 0) {
      ++cnt;
      h = divmod(h, RatPoly{Rat(-root), Rat(1)}).first;
    }
  }
  if (degree(h) < 2) return cnt;
  IntPoly hi = primitive(h);
  RatPoly g = gcd(to_rat(hi), to_rat(reversed(hi)));
  if (degree(g) < 2) return cnt;
  IntPoly gi = primitive(g);
  int d = degree(gi);
  assert(d % 2 == 0);
  assert(gi == reversed(gi));
  int m = d / 2;
  // G(y) with y = x + 1/x, via the recurrence for x^i + x^{-i}.
  IntPoly G{gi[m]};
  IntPoly t_prev{2}, t_cur{0, 1};
  for (int i = 1; i <= m; ++i) {
    G.resize(std::max(G.size(), t_cur.size()));
    for (size_t j = 0; j < t_cur.size(); ++j) G[j] += gi[m + i] * t_cur[j];
    if (i < m) {
      IntPoly t_next(t_cur.size() + 1);
      for (size_t j = 0; j < t_cur.size(); ++j) t_next[j + 1] = t_cur[j];
      for (size_t j = 0; j < t_prev.size(); ++j) t_next[j] -= t_prev[j];
      strip(t_next);
      t_prev = std::move(t_cur);
      t_cur = std::move(t_next);
    }
  }
  strip(G);
  cnt += 2 * sturm_root_count(G, Rat(-2), Rat(2));
  return cnt;
}

// Durand-Kerner root finding on a squarefree monic polynomial.
template <typename C>
std::vector<C> durand_kerner(const IntPoly& p) {
  using R = typename C::value_type;
  int n = degree(p);
  std::vector<C> coeff(p.size());
  for (size_t i = 0; i < p.size(); ++i) coeff[i] = C(R(p[i].str()));
  C lead = coeff.back();
  for (auto& c : coeff) c /= lead;
  R bound(1);
  for (int i = 0; i < n; ++i) {
    R a = abs(coeff[i]);
    if (a + 1 > bound) bound = a + 1;
  }
  std::vector<C> z(n);
  C seed(R("0.4"), R("0.9"));
  C cur(1);
  for (int i = 0; i < n; ++i) {
    cur *= seed;
    z[i] = cur * bound;
  }
  R tol = bound * R("1e-45");
  for (int iter = 0; iter < 2000; ++iter) {
    R worst(0);
    for (int i = 0; i < n; ++i) {
      C num(0);
      for (int k = n; k >= 0; --k) num = num * z[i] + coeff[k];
      C den(1);
      for (int j = 0; j < n; ++j)
        if (j != i) den *= (z[i] - z[j]);
      C w = num / den;
      z[i] -= w;
      R aw = abs(w);
      if (aw > worst) worst = aw;
    }
    if (worst < tol) break;
  }
  return z;
}

}  // namespace poly

struct ModulusProfile {
  int inside = 0;
  int on = 0;
  int outside = 0;
  bool operator==(const ModulusProfile&) const = default;
};

// Exact counts of characteristic roots with modulus <1, =1, >1 (with
// algebraic multiplicity). Unit-circle roots are certified symbolically;
// the strict inside/outside split of the remaining roots is numeric, at a
// precision checked to be decisive.
inline ModulusProfile eigenvalue_modulus_profile(const IntMatrix& m) {
  IntPoly p = char_poly(m);
  ModulusProfile prof;
  auto factors = poly::squarefree_decomposition(p);
  for (const auto& [s, mult] : factors) {
    int d = poly::degree(s);
    int on = poly::unit_circle_roots_squarefree(s);
    prof.on += mult * on;
    if (on == d) continue;
    using C = boost::multiprecision::cpp_complex_50;
    auto roots = poly::durand_kerner<C>(s);
    std::vector<C::value_type> dist(roots.size());
    std::vector<int> idx(roots.size());
    for (size_t i = 0; i < roots.size(); ++i) {
      dist[i] = abs(abs(roots[i]) - 1);
      idx[i] = static_cast<int>(i);
    }
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return dist[a] < dist[b]; });
    for (size_t k = on; k < idx.size(); ++k) {
      int i = idx[k];
      if (dist[i] < C::value_type("1e-20"))
        throw std::runtime_error("modulus profile: root too close to the unit circle to classify");
      if (abs(roots[i]) < 1)
        prof.inside += mult;
      else
        prof.outside += mult;
    }
  }
  assert(prof.inside + prof.on + prof.outside == m.dim());
  return prof;
}

}  // namespace axa
