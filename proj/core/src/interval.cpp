#include "ccdeg/interval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ccdeg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double next_down(double x) { return std::nextafter(x, -kInf); }
double next_up(double x) { return std::nextafter(x, kInf); }

void check_finite(double x) {
  if (!std::isfinite(x)) throw error("interval arithmetic overflowed");
}

// Exact roundoff of a double addition (Knuth's TwoSum), valid absent
// overflow: the sum needs no outward nudge exactly when the roundoff
// term vanishes.
bool sum_exact(double a, double b, double s) {
  const double bv = s - a;
  const double av = s - bv;
  return (a - av) + (b - bv) == 0.0;
}

// fma exposes the exact product residual, except that the residual can
// itself underflow to zero when the product sits near the bottom of the
// range; below this floor the nudge is forced instead of trusted away.
constexpr double kExactnessFloor = 1e-290;

bool prod_exact(double a, double b, double p) {
  if (p == 0.0) return a == 0.0 || b == 0.0;
  if (std::abs(p) < kExactnessFloor) return false;
  return std::fma(a, b, -p) == 0.0;
}

bool quot_exact(double num, double den, double q) {
  if (q == 0.0) return num == 0.0;
  if (std::abs(q) < kExactnessFloor) return false;
  return std::fma(q, den, -num) == 0.0;
}

double add_down(double a, double b) {
  const double s = a + b;
  check_finite(s);
  return sum_exact(a, b, s) ? s : next_down(s);
}
double add_up(double a, double b) {
  const double s = a + b;
  check_finite(s);
  return sum_exact(a, b, s) ? s : next_up(s);
}
double mul_down(double a, double b) {
  const double p = a * b;
  check_finite(p);
  return prod_exact(a, b, p) ? p : next_down(p);
}
double mul_up(double a, double b) {
  const double p = a * b;
  check_finite(p);
  return prod_exact(a, b, p) ? p : next_up(p);
}
double div_down(double a, double b) {
  const double q = a / b;
  check_finite(q);
  return quot_exact(a, b, q) ? q : next_down(q);
}
double div_up(double a, double b) {
  const double q = a / b;
  check_finite(q);
  return quot_exact(a, b, q) ? q : next_up(q);
}
double sqrt_down(double x) {
  const double r = std::sqrt(x);
  return prod_exact(r, r, x) ? r : next_down(r);
}
double sqrt_up(double x) {
  const double r = std::sqrt(x);
  return prod_exact(r, r, x) ? r : next_up(r);
}

// Nonnegative base, k >= 1: every partial product is nonnegative, so
// rounding each step in one direction keeps the final bound directed.
double pow_down_nonneg(double base, int k) {
  double r = base;
  for (int i = 1; i < k; ++i) r = mul_down(r, base);
  return r;
}
double pow_up_nonneg(double base, int k) {
  double r = base;
  for (int i = 1; i < k; ++i) r = mul_up(r, base);
  return r;
}

}  // namespace

Interval::Interval(double point) : Interval(point, point) {}

Interval::Interval(double lo_in, double hi_in) : lo(lo_in), hi(hi_in) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi) {
    throw precondition_error("invalid interval endpoints");
  }
}

Interval iv_add(const Interval& a, const Interval& b) {
  return {add_down(a.lo, b.lo), add_up(a.hi, b.hi)};
}

Interval iv_sub(const Interval& a, const Interval& b) {
  return {add_down(a.lo, -b.hi), add_up(a.hi, -b.lo)};
}

Interval iv_neg(const Interval& a) { return {-a.hi, -a.lo}; }

Interval iv_mul(const Interval& a, const Interval& b) {
  const double lo = std::min({mul_down(a.lo, b.lo), mul_down(a.lo, b.hi),
                              mul_down(a.hi, b.lo), mul_down(a.hi, b.hi)});
  const double hi = std::max({mul_up(a.lo, b.lo), mul_up(a.lo, b.hi),
                              mul_up(a.hi, b.lo), mul_up(a.hi, b.hi)});
  return {lo, hi};
}

Interval iv_div(const Interval& a, const Interval& b) {
  if (b.lo <= 0.0 && b.hi >= 0.0) {
    throw domain_error("division by an interval containing zero");
  }
  const double lo = std::min({div_down(a.lo, b.lo), div_down(a.lo, b.hi),
                              div_down(a.hi, b.lo), div_down(a.hi, b.hi)});
  const double hi = std::max({div_up(a.lo, b.lo), div_up(a.lo, b.hi),
                              div_up(a.hi, b.lo), div_up(a.hi, b.hi)});
  return {lo, hi};
}

Interval iv_sqrt(const Interval& a) {
  if (a.lo < 0.0) {
    throw domain_error("square root of an interval with negative lower end");
  }
  return {sqrt_down(a.lo), sqrt_up(a.hi)};
}

Interval iv_powi(const Interval& a, int k) {
  if (k < 0) throw precondition_error("iv_powi wants a nonnegative exponent");
  if (k == 0) return {1.0, 1.0};
  if (k % 2 == 0) {
    // Even powers depend only on |x|, so a straddling interval tightens
    // to [0, max|x|^k] instead of the sign-blind product bound.
    const double mag_hi = std::max(std::abs(a.lo), std::abs(a.hi));
    const double mag_lo =
        (a.lo <= 0.0 && a.hi >= 0.0) ? 0.0 : std::min(std::abs(a.lo), std::abs(a.hi));
    return {pow_down_nonneg(mag_lo, k), pow_up_nonneg(mag_hi, k)};
  }
  const double lo = a.lo >= 0.0 ? pow_down_nonneg(a.lo, k)
                                : -pow_up_nonneg(-a.lo, k);
  const double hi = a.hi >= 0.0 ? pow_up_nonneg(a.hi, k)
                                : -pow_down_nonneg(-a.hi, k);
  return {lo, hi};
}

Interval iv_hull(const Interval& a, const Interval& b) {
  return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

IntervalPoly::IntervalPoly(std::vector<Interval> c) : coeffs(std::move(c)) {
  if (coeffs.empty()) {
    throw precondition_error("polynomial needs at least one coefficient");
  }
}

IntervalPoly poly_add(const IntervalPoly& p, const IntervalPoly& q) {
  std::vector<Interval> out;
  const std::size_t np = p.coeffs.size(), nq = q.coeffs.size();
  out.reserve(std::max(np, nq));
  for (std::size_t k = 0; k < std::max(np, nq); ++k) {
    Interval c(0.0);
    if (k < np) c = iv_add(c, p.coeffs[k]);
    if (k < nq) c = iv_add(c, q.coeffs[k]);
    out.push_back(c);
  }
  return IntervalPoly(std::move(out));
}

IntervalPoly poly_mul(const IntervalPoly& p, const IntervalPoly& q) {
  std::vector<Interval> out(p.coeffs.size() + q.coeffs.size() - 1,
                            Interval(0.0));
  for (std::size_t i = 0; i < p.coeffs.size(); ++i) {
    for (std::size_t j = 0; j < q.coeffs.size(); ++j) {
      out[i + j] = iv_add(out[i + j], iv_mul(p.coeffs[i], q.coeffs[j]));
    }
  }
  return IntervalPoly(std::move(out));
}

IntervalPoly poly_scale(const IntervalPoly& p, const Interval& s) {
  std::vector<Interval> out;
  out.reserve(p.coeffs.size());
  for (const auto& c : p.coeffs) out.push_back(iv_mul(c, s));
  return IntervalPoly(std::move(out));
}

Interval poly_eval_horner(const IntervalPoly& p, const Interval& x) {
  Interval acc = p.coeffs.back();
  for (std::size_t k = p.coeffs.size() - 1; k-- > 0;) {
    acc = iv_add(iv_mul(acc, x), p.coeffs[k]);
  }
  return acc;
}

}  // namespace ccdeg
