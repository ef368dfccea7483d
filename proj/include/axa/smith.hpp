#pragma once

#include "axa/int_types.hpp"
#include "axa/matrix.hpp"

#include <cassert>

namespace axa {

// left * original * right = diag(diagonal), with |det left| = |det right| = 1
// and diagonal[i] | diagonal[i+1].
struct SmithForm {
  std::vector<Int> diagonal;
  IntMatrix left;
  IntMatrix right;
};

namespace detail {

inline void row_op_sub(IntMatrix& a, IntMatrix& l, int dst, int src, const Int& q) {
  const int n = a.dim();
  for (int j = 0; j < n; ++j) {
    a.at(dst, j) -= q * a.at(src, j);
    l.at(dst, j) -= q * l.at(src, j);
  }
}
inline void col_op_sub(IntMatrix& a, IntMatrix& r, int dst, int src, const Int& q) {
  const int n = a.dim();
  for (int i = 0; i < n; ++i) {
    a.at(i, dst) -= q * a.at(i, src);
    r.at(i, dst) -= q * r.at(i, src);
  }
}
inline void row_swap(IntMatrix& a, IntMatrix& l, int i1, int i2) {
  if (i1 == i2) return;
  const int n = a.dim();
  for (int j = 0; j < n; ++j) {
    std::swap(a.at(i1, j), a.at(i2, j));
    std::swap(l.at(i1, j), l.at(i2, j));
  }
}
inline void col_swap(IntMatrix& a, IntMatrix& r, int j1, int j2) {
  if (j1 == j2) return;
  const int n = a.dim();
  for (int i = 0; i < n; ++i) {
    std::swap(a.at(i, j1), a.at(i, j2));
    std::swap(r.at(i, j1), r.at(i, j2));
  }
}

}  // namespace detail

// Smith normal form by pivot reduction with smallest-absolute-value pivot
// selection (ties broken row-major), deterministic for a fixed input.
inline SmithForm smith_normal_form(const IntMatrix& m) {
  const int n = m.dim();
  IntMatrix a = m;
  IntMatrix l = IntMatrix::identity(n);
  IntMatrix r = IntMatrix::identity(n);

  for (int t = 0; t < n; ++t) {
    for (;;) {
      // smallest nonzero |entry| in the trailing submatrix
      int pi = -1, pj = -1;
      Int best = 0;
      for (int i = t; i < n; ++i)
        for (int j = t; j < n; ++j) {
          const Int& v = a.at(i, j);
          if (v == 0) continue;
          if (pi < 0 || abs(v) < best) {
            best = abs(v);
            pi = i;
            pj = j;
          }
        }
      if (pi < 0) {
        // remaining block is zero
        t = n;
        break;
      }
      detail::row_swap(a, l, t, pi);
      detail::col_swap(a, r, t, pj);

      bool clean = true;
      for (int i = t + 1; i < n; ++i) {
        if (a.at(i, t) == 0) continue;
        Int q = a.at(i, t) / a.at(t, t);
        detail::row_op_sub(a, l, i, t, q);
        if (a.at(i, t) != 0) clean = false;
      }
      for (int j = t + 1; j < n; ++j) {
        if (a.at(t, j) == 0) continue;
        Int q = a.at(t, j) / a.at(t, t);
        detail::col_op_sub(a, r, j, t, q);
        if (a.at(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // force divisibility of the trailing block by the pivot
      bool fixed = false;
      for (int i = t + 1; i < n && !fixed; ++i)
        for (int j = t + 1; j < n && !fixed; ++j)
          if (a.at(i, j) % a.at(t, t) != 0) {
            detail::row_op_sub(a, l, t, i, Int(-1));  // add row i to row t
            fixed = true;
          }
      if (!fixed) break;
    }
    if (t >= n) break;
    if (a.at(t, t) < 0) {
      for (int j = 0; j < n; ++j) {
        a.at(t, j) = -a.at(t, j);
        l.at(t, j) = -l.at(t, j);
      }
    }
  }

  SmithForm s;
  s.diagonal.resize(n);
  for (int i = 0; i < n; ++i) s.diagonal[i] = a.at(i, i);
  s.left = std::move(l);
  s.right = std::move(r);
  return s;
}

}  // namespace axa
