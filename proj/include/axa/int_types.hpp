#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace axa {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  return Rat(num, den);
}

// Canonical representative of r modulo 1 in [0, 1).
inline Rat mod1(const Rat& r) {
  Int n = numerator(r), d = denominator(r);
  Int q = n / d;
  Int rem = n - q * d;
  if (rem < 0) rem += d;
  return Rat(rem, d);
}

inline std::string rat_to_string(const Rat& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) s += "/" + denominator(r).str();
  return s;
}

// Parses "p", "p/q" or "-p/q"; exact, no floats accepted.
inline Rat rat_from_string(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    return make_rat(num, den);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("malformed rational: " + s);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("malformed rational: " + s);
  }
}

inline int sign_of(const Int& v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

}  // namespace axa
