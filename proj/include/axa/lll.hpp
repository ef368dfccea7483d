#pragma once

#include "axa/int_types.hpp"

#include <vector>

namespace axa {

// LLL reduction (delta = 3/4) of a list of linearly independent integer
// vectors, exact rational Gram-Schmidt. Used to shrink intertwiner bases
// before witness enumeration.
inline void lll_reduce(std::vector<std::vector<Int>>& basis) {
  const size_t k = basis.size();
  if (k < 2) return;
  const size_t dim = basis[0].size();

  std::vector<std::vector<Rat>> mu(k, std::vector<Rat>(k));
  std::vector<Rat> B(k);  // squared norms of the GS vectors

  auto recompute = [&]() {
    std::vector<std::vector<Rat>> gs(k, std::vector<Rat>(dim));
    for (size_t i = 0; i < k; ++i) {
      for (size_t d = 0; d < dim; ++d) gs[i][d] = Rat(basis[i][d]);
      for (size_t j = 0; j < i; ++j) {
        Rat num = 0;
        for (size_t d = 0; d < dim; ++d) num += Rat(basis[i][d]) * gs[j][d];
        mu[i][j] = B[j] == 0 ? Rat(0) : num / B[j];
        for (size_t d = 0; d < dim; ++d) gs[i][d] -= mu[i][j] * gs[j][d];
      }
      B[i] = 0;
      for (size_t d = 0; d < dim; ++d) B[i] += gs[i][d] * gs[i][d];
    }
  };
  recompute();

  auto round_rat = [](const Rat& r) {
    Int num = numerator(r), den = denominator(r);
    Int q = (2 * num + den) / (2 * den);
    if (2 * num + den < 0 && (2 * num + den) % (2 * den) != 0) q -= 1;
    return q;
  };

  size_t i = 1;
  while (i < k) {
    for (size_t j = i; j-- > 0;) {
      Int q = round_rat(mu[i][j]);
      if (q != 0) {
        for (size_t d = 0; d < dim; ++d) basis[i][d] -= q * basis[j][d];
        recompute();
      }
    }
    if (B[i] >= (Rat(3, 4) - mu[i][i - 1] * mu[i][i - 1]) * B[i - 1]) {
      ++i;
    } else {
      std::swap(basis[i], basis[i - 1]);
      recompute();
      if (i > 1) --i;
    }
  }
}

}  // namespace axa
