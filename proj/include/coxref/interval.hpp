#pragma once

// Closed rational intervals, used to compare exact quantities against π.

#include <cstdio>
#include <string>

#include "coxref/rational.hpp"

namespace coxref {

struct RationalInterval {
  Rational lo, hi;

  friend RationalInterval operator+(const RationalInterval& a, const RationalInterval& b) { return {a.lo + b.lo, a.hi + b.hi}; }
  friend RationalInterval operator-(const RationalInterval& a, const RationalInterval& b) { return {a.lo - b.hi, a.hi - b.lo}; }
  friend RationalInterval operator-(const Rational& a, const RationalInterval& b) { return {a - b.hi, a - b.lo}; }
  friend RationalInterval operator*(const Rational& k, const RationalInterval& b) {
    return k.sign() >= 0 ? RationalInterval{k * b.lo, k * b.hi} : RationalInterval{k * b.hi, k * b.lo};
  }

  bool certainly_positive() const { return lo.sign() > 0; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  Rational width() const { return hi - lo; }
};

/// π ∈ [3.14159265358979, 3.14159265358980].
inline RationalInterval pi_enclosure() {
  return {Rational(314159265358979, 100000000000000), Rational(314159265358980, 100000000000000)};
}

inline RationalInterval two_pi_enclosure() { return Rational(2) * pi_enclosure(); }

/// `x` printed with 15 significant digits.
inline std::string format15(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

}  // namespace coxref
