#pragma once

#include "axa/int_types.hpp"

#include <cassert>
#include <compare>
#include <sstream>
#include <vector>

namespace axa {

// Square integer matrix with exact arbitrary-precision entries, row-major.
class IntMatrix {
 public:
  IntMatrix() : n_(0) {}
  explicit IntMatrix(int n) : n_(n), e_(static_cast<size_t>(n) * n) {
    if (n < 1) throw std::invalid_argument("IntMatrix dimension must be >= 1");
  }
  IntMatrix(int n, std::vector<Int> entries) : n_(n), e_(std::move(entries)) {
    if (n < 1 || e_.size() != static_cast<size_t>(n) * n)
      throw std::invalid_argument("IntMatrix entry count mismatch");
  }

  static IntMatrix identity(int n) {
    IntMatrix m(n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  int dim() const { return n_; }
  Int& at(int i, int j) { return e_[static_cast<size_t>(i) * n_ + j]; }
  const Int& at(int i, int j) const { return e_[static_cast<size_t>(i) * n_ + j]; }

  bool operator==(const IntMatrix& o) const = default;

  IntMatrix operator+(const IntMatrix& o) const {
    check_dim(o);
    IntMatrix r(n_);
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] + o.e_[i];
    return r;
  }
  IntMatrix operator-(const IntMatrix& o) const {
    check_dim(o);
    IntMatrix r(n_);
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] - o.e_[i];
    return r;
  }
  IntMatrix operator*(const IntMatrix& o) const {
    check_dim(o);
    IntMatrix r(n_);
    for (int i = 0; i < n_; ++i)
      for (int k = 0; k < n_; ++k) {
        const Int& a = at(i, k);
        if (a == 0) continue;
        for (int j = 0; j < n_; ++j) r.at(i, j) += a * o.at(k, j);
      }
    return r;
  }
  IntMatrix operator*(const Int& s) const {
    IntMatrix r(n_);
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] * s;
    return r;
  }
  IntMatrix operator-() const { return *this * Int(-1); }

  std::vector<Rat> operator*(const std::vector<Rat>& v) const {
    if (static_cast<int>(v.size()) != n_)
      throw std::invalid_argument("matrix-vector dimension mismatch");
    std::vector<Rat> r(n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) r[i] += Rat(at(i, j)) * v[j];
    return r;
  }

  Int trace() const {
    Int t = 0;
    for (int i = 0; i < n_; ++i) t += at(i, i);
    return t;
  }

  Int max_abs_entry() const {
    Int m = 0;
    for (const Int& v : e_) if (abs(v) > m) m = abs(v);
    return m;
  }

  bool is_zero() const {
    for (const Int& v : e_) if (v != 0) return false;
    return true;
  }

  std::string str() const {
    std::ostringstream os;
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < n_; ++j) os << (j ? " " : "") << at(i, j);
      if (i + 1 < n_) os << "\n";
    }
    return os.str();
  }

  // Lexicographic order on (dimension, entries); used for deterministic tie-breaks.
  std::strong_ordering operator<=>(const IntMatrix& o) const {
    if (auto c = n_ <=> o.n_; c != 0) return c;
    for (size_t i = 0; i < e_.size(); ++i)
      if (auto c = e_[i].compare(o.e_[i]); c != 0)
        return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  void check_dim(const IntMatrix& o) const {
    if (n_ != o.n_) throw std::invalid_argument("matrix dimension mismatch");
  }
  int n_;
  std::vector<Int> e_;
};

// Exact determinant by Bareiss fraction-free elimination.
inline Int determinant(const IntMatrix& m) {
  const int n = m.dim();
  IntMatrix a = m;
  Int prev = 1;
  int sign = 1;
  for (int t = 0; t < n - 1; ++t) {
    if (a.at(t, t) == 0) {
      int p = -1;
      for (int i = t + 1; i < n; ++i)
        if (a.at(i, t) != 0) { p = i; break; }
      if (p < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(a.at(t, j), a.at(p, j));
      sign = -sign;
    }
    for (int i = t + 1; i < n; ++i) {
      for (int j = t + 1; j < n; ++j) {
        Int v = a.at(i, j) * a.at(t, t) - a.at(i, t) * a.at(t, j);
        assert(v % prev == 0);
        a.at(i, j) = v / prev;
      }
      a.at(i, t) = 0;
    }
    prev = a.at(t, t);
  }
  return sign > 0 ? a.at(n - 1, n - 1) : -a.at(n - 1, n - 1);
}

// Coefficients of det(xI - m), ascending, exact (Faddeev-LeVerrier;
// the divisions are exact over Z).
inline std::vector<Int> char_poly(const IntMatrix& m) {
  const int n = m.dim();
  std::vector<Int> c(n + 1);
  c[n] = 1;
  IntMatrix acc = IntMatrix::identity(n);
  for (int k = 1; k <= n; ++k) {
    acc = m * acc;
    Int t = acc.trace();
    assert(t % k == 0);
    c[n - k] = -t / Int(k);
    for (int i = 0; i < n; ++i) acc.at(i, i) += c[n - k];
  }
  return c;
}

// Inverse of a matrix with det = +-1, via the adjugate.
inline IntMatrix inverse_unimodular(const IntMatrix& m) {
  const int n = m.dim();
  Int d = determinant(m);
  if (d != 1 && d != -1)
    throw std::invalid_argument("inverse_unimodular: determinant is not +-1");
  if (n == 1) return IntMatrix(1, {d});
  IntMatrix adj(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      IntMatrix minor(n - 1);
      for (int r = 0, rr = 0; r < n; ++r) {
        if (r == j) continue;
        for (int c = 0, cc = 0; c < n; ++c) {
          if (c == i) continue;
          minor.at(rr, cc) = m.at(r, c);
          ++cc;
        }
        ++rr;
      }
      Int cof = determinant(minor);
      adj.at(i, j) = ((i + j) % 2 == 0) ? cof : -cof;
    }
  IntMatrix inv = adj * d;
  assert(inv * m == IntMatrix::identity(n));
  return inv;
}

}  // namespace axa
