#pragma once

#include "axa/int_types.hpp"
#include "axa/lll.hpp"
#include "axa/matrix.hpp"
#include "axa/smith.hpp"
#include "axa/torus.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace axa {

// Plykin-Grines invariant of one codimension one basic set.
struct Triple {
  AnosovAutomorphism automorphism;
  PointSet points;

  char epsilon() const { return automorphism.epsilon; }
  int dim() const { return automorphism.dim(); }
};

enum class SignMode { Any, Positive, Negative, SameAsPartner };

struct SignConstraint {
  SignMode mode = SignMode::Any;

  static SignConstraint any() { return {SignMode::Any}; }
  static SignConstraint positive() { return {SignMode::Positive}; }
  static SignConstraint negative() { return {SignMode::Negative}; }

  bool satisfied(int sign) const {
    switch (mode) {
      case SignMode::Positive: return sign > 0;
      case SignMode::Negative: return sign < 0;
      default: return true;  // SameAsPartner is resolved by the caller
    }
  }
};

inline SignConstraint sign_constraint_from_string(const std::string& s) {
  if (s == "any") return SignConstraint::any();
  if (s == "positive") return SignConstraint::positive();
  if (s == "negative") return SignConstraint::negative();
  if (s == "same") return {SignMode::SameAsPartner};
  throw std::invalid_argument("unknown sign constraint: " + s);
}

enum class Certificate {
  None,
  CharPoly,
  SnfMinusIdentity,
  SnfPlusIdentity,
  Epsilon,
  PointCount,
  PeriodMultiset,
};

inline const char* certificate_name(Certificate c) {
  switch (c) {
    case Certificate::None: return "none";
    case Certificate::CharPoly: return "charpoly";
    case Certificate::SnfMinusIdentity: return "snf(A-I)";
    case Certificate::SnfPlusIdentity: return "snf(A+I)";
    case Certificate::Epsilon: return "epsilon";
    case Certificate::PointCount: return "point-count";
    case Certificate::PeriodMultiset: return "period-multiset";
  }
  return "?";
}

enum class Status { Yes, No, Unknown };

inline const char* status_name(Status s) {
  switch (s) {
    case Status::Yes: return "yes";
    case Status::No: return "no";
    case Status::Unknown: return "unknown";
  }
  return "?";
}

struct ConjugacyVerdict {
  Status status = Status::Unknown;
  std::optional<IntMatrix> witness;
  Certificate certificate = Certificate::None;
  bool plus_achievable = false;
  bool minus_achievable = false;
  long search_bound = 0;

  std::optional<IntMatrix> witness_plus;   // first witness of each sign found
  std::optional<IntMatrix> witness_minus;
};

// Basis of the additive group {Z : Z*A = B*Z} of integer matrices, via the
// integer kernel of the n^2 x n^2 system, LLL-size-reduced.
inline std::vector<IntMatrix> intertwiner_basis(const IntMatrix& a, const IntMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("intertwiner_basis: dimension mismatch");
  const int n = a.dim();
  const int nn = n * n;
  // row (i,j): coefficient of z_{kl} in (ZA - BZ)_{ij}
  IntMatrix sys(nn);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int row = i * n + j;
      for (int l = 0; l < n; ++l) sys.at(row, i * n + l) += a.at(l, j);
      for (int k = 0; k < n; ++k) sys.at(row, k * n + j) -= b.at(i, k);
    }
  SmithForm s = smith_normal_form(sys);
  std::vector<std::vector<Int>> kernel;
  for (int c = 0; c < nn; ++c) {
    if (s.diagonal[c] != 0) continue;
    std::vector<Int> v(nn);
    for (int r = 0; r < nn; ++r) v[r] = s.right.at(r, c);
    kernel.push_back(std::move(v));
  }
  if (kernel.size() > 1) lll_reduce(kernel);
  std::vector<IntMatrix> out;
  for (auto& v : kernel) out.push_back(IntMatrix(n, std::move(v)));
  return out;
}

namespace detail {

// Floating-point determinant via partial-pivot LU, used only to discard
// candidates whose determinant is clearly not +-1. For entries below 2^20
// the relative error is far below the 0.5 acceptance margin.
inline bool maybe_unimodular(const IntMatrix& m) {
  const int n = m.dim();
  if (m.max_abs_entry() >= Int(1) << 20) return true;  // fall through to the exact test
  std::vector<double> a(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i * n + j] = static_cast<double>(m.at(i, j));
  double det = 1.0;
  for (int c = 0; c < n; ++c) {
    int p = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(a[r * n + c]) > std::abs(a[p * n + c])) p = r;
    if (a[p * n + c] == 0.0) return false;
    if (p != c) {
      for (int j = c; j < n; ++j) std::swap(a[p * n + j], a[c * n + j]);
      det = -det;
    }
    det *= a[c * n + c];
    for (int r = c + 1; r < n; ++r) {
      double f = a[r * n + c] / a[c * n + c];
      for (int j = c; j < n; ++j) a[r * n + j] -= f * a[c * n + j];
    }
  }
  double ad = std::abs(det);
  return ad > 0.5 && ad < 1.5;
}

// Enumerates integer combinations of the basis by growing max-norm shells,
// lexicographic within each shell; calls cb for every unimodular combination
// with its determinant sign. cb returns false to stop the search. Returns
// the largest fully explored shell radius (== bound when the box was
// exhausted within budget).
inline long enumerate_unimodular(const std::vector<IntMatrix>& basis, long bound, long budget,
                                 const std::function<bool(const IntMatrix&, int)>& cb) {
  if (basis.empty() || bound < 1) return 0;
  const int r = static_cast<int>(basis.size());
  const int n = basis[0].dim();
  std::vector<long> c(r);
  long evaluated = 0;
  long completed = 0;
  bool stop = false;

  // Double images of the basis, used to reject non-unimodular combinations
  // before any exact arithmetic. Safe while every entry of a combination
  // stays far below 2^53; beyond that the exact path takes over.
  Int max_entry = 0;
  for (const auto& z : basis) max_entry = std::max(max_entry, z.max_abs_entry());
  const bool prefilter = max_entry * r * bound < (Int(1) << 40);
  std::vector<std::vector<double>> dbasis;
  if (prefilter) {
    for (const auto& z : basis) {
      std::vector<double> d(static_cast<size_t>(n) * n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) d[i * n + j] = static_cast<double>(z.at(i, j));
      dbasis.push_back(std::move(d));
    }
  }
  std::vector<double> dz(static_cast<size_t>(n) * n);
  auto double_rejects = [&]() {
    std::fill(dz.begin(), dz.end(), 0.0);
    for (int i = 0; i < r; ++i) {
      if (c[i] == 0) continue;
      const double f = static_cast<double>(c[i]);
      const std::vector<double>& d = dbasis[i];
      for (size_t t = 0; t < dz.size(); ++t) dz[t] += f * d[t];
    }
    double det = 1.0;
    std::vector<double> a = dz;
    for (int col = 0; col < n; ++col) {
      int p = col;
      for (int row = col + 1; row < n; ++row)
        if (std::abs(a[row * n + col]) > std::abs(a[p * n + col])) p = row;
      if (a[p * n + col] == 0.0) return true;
      if (p != col) {
        for (int j = col; j < n; ++j) std::swap(a[p * n + j], a[col * n + j]);
        det = -det;
      }
      det *= a[col * n + col];
      for (int row = col + 1; row < n; ++row) {
        double f = a[row * n + col] / a[col * n + col];
        for (int j = col; j < n; ++j) a[row * n + j] -= f * a[col * n + j];
      }
    }
    double ad = std::abs(det);
    return !(ad > 0.5 && ad < 1.5);
  };

  // Visits exactly the points of max-norm s (box minus interior), in
  // lexicographic order.
  std::function<void(long, int, bool)> walk = [&](long s, int pos, bool pinned) {
    if (stop) return;
    if (pos == r) {
      if (++evaluated > budget) { stop = true; return; }
      if (prefilter && double_rejects()) return;
      IntMatrix z(n);
      for (int i = 0; i < r; ++i) {
        if (c[i] == 0) continue;
        z = z + basis[i] * Int(c[i]);
      }
      if (!prefilter && !maybe_unimodular(z)) return;
      Int d = determinant(z);
      if (d == 1 || d == -1) {
        if (!cb(z, d > 0 ? 1 : -1)) stop = true;
      }
      return;
    }
    if (!pinned && pos == r - 1) {
      for (long x : {-s, s}) {
        c[pos] = x;
        walk(s, pos + 1, true);
        if (stop) return;
      }
      return;
    }
    for (long x = -s; x <= s; ++x) {
      c[pos] = x;
      walk(s, pos + 1, pinned || x == -s || x == s);
      if (stop) return;
    }
  };

  for (long s = 1; s <= bound && !stop; ++s) {
    walk(s, 0, false);
    if (!stop) completed = s;
  }
  return completed;
}

constexpr long kDefaultSearchBudget = 4'000'000;

}  // namespace detail

inline bool verify_conjugacy_witness(const IntMatrix& a, const IntMatrix& b, const IntMatrix& z) {
  Int d = determinant(z);
  if (d != 1 && d != -1) return false;
  return z * a == b * z;
}

namespace detail {

// Shared search core: fast certificates first, then witness enumeration.
// accept() filters candidates beyond unimodularity (point-set matching).
inline ConjugacyVerdict conjugacy_search(const AnosovAutomorphism& a, const AnosovAutomorphism& b,
                                         SignConstraint sign, long bound,
                                         const std::function<bool(const IntMatrix&)>& accept,
                                         long budget = kDefaultSearchBudget) {
  if (a.dim() != b.dim()) throw std::invalid_argument("decide_conjugacy: dimension mismatch");
  ConjugacyVerdict v;
  if (a.charpoly != b.charpoly) {
    v.status = Status::No;
    v.certificate = Certificate::CharPoly;
    return v;
  }
  if (a.epsilon != b.epsilon) {
    v.status = Status::No;
    v.certificate = Certificate::Epsilon;
    return v;
  }
  IntMatrix id = IntMatrix::identity(a.dim());
  if (smith_normal_form(a.matrix - id).diagonal != smith_normal_form(b.matrix - id).diagonal) {
    v.status = Status::No;
    v.certificate = Certificate::SnfMinusIdentity;
    return v;
  }
  if (smith_normal_form(a.matrix + id).diagonal != smith_normal_form(b.matrix + id).diagonal) {
    v.status = Status::No;
    v.certificate = Certificate::SnfPlusIdentity;
    return v;
  }

  if (a.matrix == b.matrix) {
    IntMatrix ident = IntMatrix::identity(a.dim());
    if (!accept || accept(ident)) {
      v.plus_achievable = true;
      v.witness_plus = ident;
      if (sign.satisfied(1)) v.witness = ident;
    }
  }

  std::vector<IntMatrix> basis = intertwiner_basis(a.matrix, b.matrix);
  long explored = enumerate_unimodular(basis, bound, budget, [&](const IntMatrix& z, int s) {
    if (accept && !accept(z)) return true;
    if (s > 0) {
      v.plus_achievable = true;
      if (!v.witness_plus) v.witness_plus = z;
    } else {
      v.minus_achievable = true;
      if (!v.witness_minus) v.witness_minus = z;
    }
    if (!v.witness && sign.satisfied(s)) v.witness = z;
    return !(v.witness && v.plus_achievable && v.minus_achievable);
  });
  v.search_bound = explored;
  v.status = v.witness ? Status::Yes : Status::Unknown;
  return v;
}

}  // namespace detail

// GL(n,Z) conjugacy with determinant-sign constraint; three-valued because
// the lattice search is bounded.
inline ConjugacyVerdict decide_conjugacy(const AnosovAutomorphism& a, const AnosovAutomorphism& b,
                                         SignConstraint sign = SignConstraint::any(),
                                         long bound = 10) {
  return detail::conjugacy_search(a, b, sign, bound, nullptr);
}

inline bool maps_points_onto(const IntMatrix& z, const PointSet& from, const PointSet& to) {
  if (from.size() != to.size()) return false;
  for (const TorusPoint& p : from.points)
    if (!to.contains(axa::apply(z, p))) return false;
  return true;
}

inline ConjugacyVerdict decide_triple_equivalence(const Triple& t1, const Triple& t2,
                                                  SignConstraint sign = SignConstraint::any(),
                                                  long bound = 10) {
  ConjugacyVerdict v;
  if (t1.epsilon() != t2.epsilon()) {
    v.status = Status::No;
    v.certificate = Certificate::Epsilon;
    return v;
  }
  if (t1.points.size() != t2.points.size()) {
    v.status = Status::No;
    v.certificate = Certificate::PointCount;
    return v;
  }
  if (t1.points.period_multiset() != t2.points.period_multiset()) {
    v.status = Status::No;
    v.certificate = Certificate::PeriodMultiset;
    return v;
  }
  return detail::conjugacy_search(
      t1.automorphism, t2.automorphism, sign, bound,
      [&](const IntMatrix& z) { return maps_points_onto(z, t1.points, t2.points); });
}

}  // namespace axa
