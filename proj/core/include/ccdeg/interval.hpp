#pragma once

#include <vector>

#include "ccdeg/types.hpp"

namespace ccdeg {

// Closed interval with finite double endpoints.  All arithmetic rounds
// outward, so for exact inputs the true real result is contained in the
// returned interval.  Hardware rounding modes are left untouched;
// directed rounding is emulated by nudging results one ulp outward
// unless the operation is proven exact (see interval.cpp).
struct Interval {
  double lo;
  double hi;

  Interval() : lo(0.0), hi(0.0) {}
  Interval(double point);  // degenerate [point, point], implicit on purpose
  Interval(double lo, double hi);

  double width() const { return hi - lo; }
  double mid() const { return lo + 0.5 * (hi - lo); }
  bool contains(double x) const { return lo <= x && x <= hi; }
  bool contains(const Interval& other) const {
    return lo <= other.lo && other.hi <= hi;
  }
};

Interval iv_add(const Interval& a, const Interval& b);
Interval iv_sub(const Interval& a, const Interval& b);
Interval iv_mul(const Interval& a, const Interval& b);
// Throws domain_error when the divisor contains zero.
Interval iv_div(const Interval& a, const Interval& b);
Interval iv_neg(const Interval& a);
// Throws domain_error on negative lower endpoint.
Interval iv_sqrt(const Interval& a);
// Integer power, k >= 0.  Even powers use the magnitude range directly,
// so straddling intervals tighten to [0, max^k] instead of the naive
// product bound.
Interval iv_powi(const Interval& a, int k);
Interval iv_hull(const Interval& a, const Interval& b);

inline Interval operator+(const Interval& a, const Interval& b) { return iv_add(a, b); }
inline Interval operator-(const Interval& a, const Interval& b) { return iv_sub(a, b); }
inline Interval operator*(const Interval& a, const Interval& b) { return iv_mul(a, b); }
inline Interval operator/(const Interval& a, const Interval& b) { return iv_div(a, b); }
inline Interval operator-(const Interval& a) { return iv_neg(a); }

// Dense polynomial with interval coefficients; coefficient k multiplies
// x^k.  The coefficient vector is never empty.
struct IntervalPoly {
  std::vector<Interval> coeffs;

  explicit IntervalPoly(std::vector<Interval> c);
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

IntervalPoly poly_add(const IntervalPoly& p, const IntervalPoly& q);
IntervalPoly poly_mul(const IntervalPoly& p, const IntervalPoly& q);
IntervalPoly poly_scale(const IntervalPoly& p, const Interval& s);
// Horner evaluation.  Sound but not optimal for wide arguments: the
// enclosure can be strictly wider than the true range.
Interval poly_eval_horner(const IntervalPoly& p, const Interval& x);

}  // namespace ccdeg
