#pragma once

#include "axa/int_types.hpp"

#include <optional>
#include <string>

namespace axa {

// Symbolic connected-sum type of the supporting manifold: k torus summands,
// g handles S^{n-1} x S^1, and optionally one projective-like summand
// carrying its Pontryagin number.
struct ManifoldDescription {
  int n = 0;
  long torus_count = 0;
  long handle_count = 0;
  std::optional<Rat> projective_like;
  std::optional<std::string> special;

  bool operator==(const ManifoldDescription&) const = default;

  std::string str() const {
    if (special) return *special;
    std::string out;
    auto add = [&](const std::string& piece) {
      if (!out.empty()) out += " # ";
      out += piece;
    };
    for (long i = 0; i < torus_count; ++i) add("T^" + std::to_string(n));
    for (long i = 0; i < handle_count; ++i)
      add("(S^" + std::to_string(n - 1) + " x S^1)");
    if (projective_like)
      add("N^" + std::to_string(n) + "[p=" + rat_to_string(*projective_like) + "]");
    if (out.empty()) out = "S^" + std::to_string(n);
    return out;
  }
};

}  // namespace axa
