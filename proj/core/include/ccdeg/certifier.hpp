#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ccdeg/interval.hpp"
#include "ccdeg/types.hpp"

namespace ccdeg {

namespace detail {
inline double cc_sqrt(double x) {
  if (x < 0.0) throw domain_error("square root of negative value");
  return std::sqrt(x);
}
inline Interval cc_sqrt(const Interval& x) { return iv_sqrt(x); }
}  // namespace detail

// Entries of the reduced 4x4 block of the rhombus family in closed form.
//
// With s = (a^2 + 1)^{1/2}, s52 = (a^2+1)^2 s, s72 = (a^2+1)^3 s, every
// entry of J2 times the common denominator (a^2 m1 + 1) is a polynomial
// of degree at most 2 in m1 whose coefficients are explicit in a.  The
// triples below store those coefficients, constant term first.  Keeping
// the multiplied-through form means one shared code path serves both
// the pointwise matrix (divide back by a^2 m1 + 1) and the determinant
// polynomial
//   G(m1) = (a^2 m1 + 1)^4 det J2(a, m1),
// which is what the degree-8 certificates below bound.
template <class T>
using EntryTriple = std::array<T, 3>;
template <class T>
using EntryTripleMatrix = std::array<std::array<EntryTriple<T>, 4>, 4>;

template <class T>
EntryTripleMatrix<T> rhombus_entry_polys(const T& a) {
  const T a2 = a * a;
  const T a3 = a2 * a;
  const T a4 = a2 * a2;
  const T a5 = a4 * a;
  const T a7 = a5 * a2;
  const T a9 = a7 * a2;
  const T r = a2 + T(1.0);
  const T sq = detail::cc_sqrt(r);
  const T s52 = r * r * sq;
  const T s72 = r * r * r * sq;

  const T A = (s52 - a5 * T(20.0) + a3 * T(4.0)) / (a2 * s72 * T(2.0));
  const T B = a2 * (s52 + a2 * T(4.0) - T(20.0)) / (s72 * T(2.0));
  const T C = a * (s52 + a2 * T(16.0) - T(32.0)) / (s72 * T(4.0));
  const T D = (s52 - a5 * T(32.0) + a3 * T(16.0)) / (a2 * s72 * T(4.0));
  const T E = a * (s52 + a2 * T(4.0) - T(20.0)) / (s72 * T(2.0));

  const T d12 = s72 * a3;
  const EntryTriple<T> j11 = {
      (s52 * (a5 + a3) / T(4.0) - a7 * T(2.0) + a5 * T(2.0) + a3 * T(4.0)) / d12,
      (a7 * T(6.0) + a5 * T(20.0) + a3 * T(2.0) - s52 / T(4.0)) / d12,
      (s52 * a4 / T(4.0) - a9 * T(2.0) + a7 * T(10.0)) / d12};
  const EntryTriple<T> j22 = {
      (s52 * (a5 + a3) / T(4.0) + a7 * T(4.0) + a5 * T(2.0) - a3 * T(2.0)) / d12,
      (s52 / T(2.0) + a9 * T(6.0) + a7 * T(12.0) - a5 * T(4.0) + a3 * T(2.0)) / d12,
      (s52 * (a4 + a2 * T(3.0)) / T(4.0) + a9 * T(4.0) - a7 * T(8.0)) / d12};
  const T d3 = s72 * a * T(2.0);
  const EntryTriple<T> j33 = {
      (s52 * (a3 * T(3.0) + a) / T(2.0) - a3 * T(16.0) + a * T(8.0)) / d3,
      (s52 * a5 + a7 * T(4.0) - a5 * T(8.0) + a3 * T(24.0) + a * T(12.0)) / d3,
      (s52 * (a2 + T(1.0)) / T(2.0) - a7 * T(4.0) + a5 * T(4.0) + a3 * T(8.0)) / d3};
  const T d4 = s72 * a * T(4.0);
  const EntryTriple<T> j44 = {
      (s52 * a + a3 * T(40.0) - a * T(8.0)) / d4,
      (a7 * T(8.0) + a5 * T(80.0) + a3 * T(24.0) - s52 * a5) / d4,
      (s52 * (a2 + T(1.0)) + a7 * T(16.0) + a5 * T(8.0) - a3 * T(8.0)) / d4};

  // Off-diagonal entries of J2 are w * m1 or plain w; multiplied by the
  // common denominator they become w m1 (a^2 m1 + 1) and w (a^2 m1 + 1).
  const auto lin = [&](const T& w) -> EntryTriple<T> {
    return {T(0.0), w, w * a2};
  };
  const auto cst = [&](const T& w) -> EntryTriple<T> {
    return {w, w * a2, T(0.0)};
  };

  return {{
      {{j11, lin(A), cst(B), cst(C)}},
      {{lin(D), j22, cst(E), cst(T(0.0) - a * C)}},
      {{lin(T(0.0) - D / a), lin(A), j33, cst(C)}},
      {{lin(D), lin(A / a), cst(E), j44}},
  }};
}

// Pointwise J2 of the rhombus family: evaluate each triple at m1 and
// divide back by the common denominator.
template <class T>
std::array<std::array<T, 4>, 4> rhombus_j2_entries(const T& a, const T& m1) {
  const auto polys = rhombus_entry_polys(a);
  const T den = a * a * m1 + T(1.0);
  std::array<std::array<T, 4>, 4> out{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const auto& t = polys[i][j];
      out[i][j] = ((t[2] * m1 + t[1]) * m1 + t[0]) / den;
    }
  }
  return out;
}

// Closed-form view of the reduced rhombus block, for cross-checking the
// numeric reduction pipeline entry by entry.
struct RhombusJ2Symbolic {
  static Eigen::Matrix4d evaluate(double a, double m1);
  static double determinant(double a, double m1);
};

// Interval enclosure of m1(a) over a box.  Throws domain_error when the
// denominator encloses zero (the box reaches the pole) or the mass
// enclosure fails to stay positive.
Interval rhombus_mass_interval(const Interval& a);

// Enclosure of det J2 along the rhombus family (m1 eliminated through
// rhombus_mass_interval).
Interval rhombus_detJ2_interval(const Interval& a_box);

// Degree-8 polynomial g with interval coefficients such that for every
// a in a_box and every m1 > 0,
//   det J2(a, m1) = g(m1) / (a^2 m1 + 1)^4   with g(m1) in g's enclosure.
// Nondegenerate boxes are split internally into 64 equal slices and the
// coefficient hulls taken, which keeps the dependency blowup of the
// one-shot cofactor expansion at bay; point boxes evaluate directly.
IntervalPoly rhombus_G_poly(const Interval& a_box);

// Sufficient positivity test for p(x) over x >= M when only the
// linear coefficient may be negative:
//   all other coefficient lower bounds nonnegative,
//   c2 M + c1 >= 0 in lower bound (the quadratic absorbs the linear),
//   M (c2 M + c1) + c0 > 0 strictly.
// Returns false whenever the hypotheses fail; never throws.
bool tail_positive(const IntervalPoly& p, double mass_threshold);

struct CertificateLeaf {
  Interval box;
  Interval value;
  int depth;
};

struct PositivityResult {
  bool certified = false;
  std::vector<CertificateLeaf> leaves;      // ascending, tiling the range
  std::optional<CertificateLeaf> failure;   // leftmost undecidable box
  std::string failure_reason;
};

// Adaptive midpoint bisection: a box is accepted when f(box).lo > 0,
// split otherwise, and reported as the failure when max_depth is
// reached or the box can no longer be split.  Domain errors from f are
// treated as undecided (split and retry), so enclosures that blow up on
// wide boxes refine naturally.  Subtrees are explored concurrently
// unless CCDEG_SEQUENTIAL is set; merge order is fixed, so the result
// is identical either way.
PositivityResult certify_positive(const std::function<Interval(const Interval&)>& f,
                                  const Interval& range, int max_depth);

struct CertifyOptions {
  int max_depth = 42;
  double mass_threshold = 2072.0;
};

// Sign conditions that pin down dm1/da < 0 near the mass pole without
// ever dividing by the vanishing denominator: with num/den the quotient
// rule pieces of m1'(a), den < 0 on the open side of the pole follows
// from den_slope < 0 together with den < 0 at the right end, and then
// num < 0 gives m1' < 0 throughout.
struct MonotonicityWitness {
  Interval numerator;
  Interval den_slope;
  Interval den_at_right;
  bool valid() const {
    return numerator.hi < 0.0 && den_slope.hi < 0.0 && den_at_right.hi < 0.0;
  }
};

// Left-end block of the rhombus certificate: over box, the determinant
// polynomial g is positive for all m1 >= mass_threshold (tail_ok), and
// the family's masses actually exceed that threshold there because m1
// decreases (witness) from a value already above it at the right end
// (m1_at_right).
struct RegimeB {
  Interval box;
  IntervalPoly g;
  double mass_threshold;
  Interval m1_at_right;
  MonotonicityWitness witness;
  bool tail_ok = false;
};

struct Certificate {
  enum class Status { certified, failed };
  Status status = Status::failed;
  Interval range;  // regime-A parameter range
  int max_depth = 0;
  std::vector<CertificateLeaf> leaves;
  std::optional<RegimeB> regime_b;
  std::optional<CertificateLeaf> failure;
  std::string failure_reason;
};

// Full nondegeneracy certificate for the rhombus family on the mass
// positivity window: direct interval bisection from just right of the
// pole up to near the far endpoint (regime A), and the polynomial tail
// argument on the sliver hugging the pole where m1 blows up (regime B).
Certificate certify_rhombus_nondegeneracy(const CertifyOptions& options = {});

void write_certificate(const Certificate& cert, std::ostream& out);
Certificate read_certificate(std::istream& in);

}  // namespace ccdeg
