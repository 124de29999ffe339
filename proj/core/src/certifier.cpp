#include "ccdeg/certifier.hpp"

#include <cmath>
#include <future>
#include <limits>
#include <utility>

#include "runtime_env.hpp"

namespace ccdeg {

namespace {

Interval det2(const Interval& a, const Interval& b, const Interval& c,
              const Interval& d) {
  return a * d - b * c;
}

// First-row cofactor expansion of a 4x4 interval matrix.  Fine at this
// size; the dependency widening it causes is handled by the adaptive
// bisection upstream.
Interval det4(const std::array<std::array<Interval, 4>, 4>& m) {
  const auto minor3 = [&](int c0, int c1, int c2) {
    return m[1][c0] * det2(m[2][c1], m[2][c2], m[3][c1], m[3][c2]) -
           m[1][c1] * det2(m[2][c0], m[2][c2], m[3][c0], m[3][c2]) +
           m[1][c2] * det2(m[2][c0], m[2][c1], m[3][c0], m[3][c1]);
  };
  return m[0][0] * minor3(1, 2, 3) - m[0][1] * minor3(0, 2, 3) +
         m[0][2] * minor3(0, 1, 3) - m[0][3] * minor3(0, 1, 2);
}

IntervalPoly poly_sub(const IntervalPoly& p, const IntervalPoly& q) {
  return poly_add(p, poly_scale(q, Interval(-1.0)));
}

// Same expansion over polynomials in m1; entries have degree <= 2, so
// the determinant has degree <= 8.
IntervalPoly pdet4(const EntryTripleMatrix<Interval>& t) {
  const auto entry = [&](int i, int j) {
    return IntervalPoly({t[i][j][0], t[i][j][1], t[i][j][2]});
  };
  const auto pdet2 = [&](int r0, int r1, int c0, int c1) {
    return poly_sub(poly_mul(entry(r0, c0), entry(r1, c1)),
                    poly_mul(entry(r0, c1), entry(r1, c0)));
  };
  const auto pdet3 = [&](int c0, int c1, int c2) {
    IntervalPoly acc = poly_mul(entry(1, c0), pdet2(2, 3, c1, c2));
    acc = poly_sub(acc, poly_mul(entry(1, c1), pdet2(2, 3, c0, c2)));
    return poly_add(acc, poly_mul(entry(1, c2), pdet2(2, 3, c0, c1)));
  };
  IntervalPoly acc = poly_mul(entry(0, 0), pdet3(1, 2, 3));
  acc = poly_sub(acc, poly_mul(entry(0, 1), pdet3(0, 2, 3)));
  acc = poly_add(acc, poly_mul(entry(0, 2), pdet3(0, 1, 3)));
  return poly_sub(acc, poly_mul(entry(0, 3), pdet3(0, 1, 2)));
}

}  // namespace

Eigen::Matrix4d RhombusJ2Symbolic::evaluate(double a, double m1) {
  const auto e = rhombus_j2_entries<double>(a, m1);
  Eigen::Matrix4d out;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) out(i, j) = e[i][j];
  }
  return out;
}

double RhombusJ2Symbolic::determinant(double a, double m1) {
  return evaluate(a, m1).determinant();
}

Interval rhombus_mass_interval(const Interval& a) {
  if (!(a.lo > 0.0)) {
    throw domain_error("rhombus half-diagonal must be positive");
  }
  const Interval a3 = iv_powi(a, 3);
  const Interval r = a * a + Interval(1.0);
  const Interval s = r * iv_sqrt(r);  // (a^2 + 1)^{3/2}
  const Interval num = a3 * (s - Interval(8.0));
  const Interval den = s - Interval(8.0) * a3;
  const Interval m1 = num / den;  // domain_error when den encloses zero
  if (!(m1.lo > 0.0)) {
    throw domain_error("rhombus mass enclosure is not positive on this box");
  }
  return m1;
}

namespace {

Interval detJ2_piece(const Interval& a) {
  const Interval m1 = rhombus_mass_interval(a);
  return det4(rhombus_j2_entries<Interval>(a, m1));
}

}  // namespace

Interval rhombus_detJ2_interval(const Interval& a_box) {
  // The cofactor expansion loses accuracy linearly in the box width
  // (every entry depends on a), so wide boxes are evaluated on uniform
  // slices and hulled: still an enclosure over the whole box, but with
  // the dependency excess of a narrow one.  Slicing never substitutes
  // for the adaptive refinement upstream; it only speeds it up.
  constexpr double kSliceWidth = 2e-3;
  const int slices = std::min(
      256, std::max(1, static_cast<int>(std::ceil(a_box.width() / kSliceWidth))));
  if (slices == 1) return detJ2_piece(a_box);
  const auto cut = [&](int i) {
    if (i == 0) return a_box.lo;
    if (i == slices) return a_box.hi;
    return a_box.lo + (a_box.hi - a_box.lo) * static_cast<double>(i) /
                          static_cast<double>(slices);
  };
  Interval acc = detJ2_piece(Interval(cut(0), cut(1)));
  for (int i = 1; i < slices; ++i) {
    acc = iv_hull(acc, detJ2_piece(Interval(cut(i), cut(i + 1))));
  }
  return acc;
}

namespace {

IntervalPoly g_poly_piece(const Interval& a) {
  return pdet4(rhombus_entry_polys<Interval>(a));
}

}  // namespace

IntervalPoly rhombus_G_poly(const Interval& a_box) {
  if (!(a_box.lo > 0.0)) {
    throw domain_error("rhombus half-diagonal must be positive");
  }
  if (a_box.width() == 0.0) return g_poly_piece(a_box);

  // One-shot cofactor expansion over the whole box overestimates badly
  // (every entry is correlated through a).  Evaluating on equal slices
  // and hulling coefficients is still a valid enclosure for every a in
  // the box, and cuts the dependency excess by the slice count.
  constexpr int slices = 64;
  const auto cut = [&](int i) {
    if (i == 0) return a_box.lo;
    if (i == slices) return a_box.hi;
    return a_box.lo + (a_box.hi - a_box.lo) * static_cast<double>(i) /
                          static_cast<double>(slices);
  };
  IntervalPoly acc = g_poly_piece(Interval(cut(0), cut(1)));
  for (int i = 1; i < slices; ++i) {
    const IntervalPoly piece = g_poly_piece(Interval(cut(i), cut(i + 1)));
    if (piece.coeffs.size() != acc.coeffs.size()) {
      throw error("determinant polynomial degree changed between slices");
    }
    for (std::size_t k = 0; k < acc.coeffs.size(); ++k) {
      acc.coeffs[k] = iv_hull(acc.coeffs[k], piece.coeffs[k]);
    }
  }
  return acc;
}

bool tail_positive(const IntervalPoly& p, double mass_threshold) {
  if (p.degree() < 2) return false;
  if (!(mass_threshold > 0.0) || !std::isfinite(mass_threshold)) return false;
  const auto& c = p.coeffs;
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (k == 1) continue;
    if (!(c[k].lo >= 0.0)) return false;
  }
  // For x >= M > 0, dropping the degree >= 3 terms (nonnegative) leaves
  //   p(x) >= c0 + c1 x + c2 x^2 = c0 + x (c1 + c2 x) >= c0 + M (c1 + c2 M)
  // provided c1 + c2 M >= 0, every step taken in lower bounds with
  // outward rounding.
  const Interval m(mass_threshold);
  const Interval quad = Interval(c[2].lo) * m + Interval(c[1].lo);
  if (!(quad.lo >= 0.0)) return false;
  const Interval total = m * Interval(quad.lo) + Interval(c[0].lo);
  return total.lo > 0.0;
}

namespace {

struct ExploreOut {
  std::vector<CertificateLeaf> leaves;
  std::optional<CertificateLeaf> failure;
  std::string reason;
};

// Depth-first bisection.  Both children are always explored so the leaf
// set does not depend on where failures appear; the leftmost failure is
// the one reported.  async_budget bounds the number of extra threads.
ExploreOut explore(const std::function<Interval(const Interval&)>& f,
                   const Interval& box, int depth, int max_depth,
                   int async_budget) {
  ExploreOut out;
  std::optional<Interval> value;
  std::string reason;
  try {
    value = f(box);
    if (value->lo > 0.0) {
      out.leaves.push_back({box, *value, depth});
      return out;
    }
    reason = "enclosure lower bound is not positive";
  } catch (const domain_error& e) {
    reason = std::string("domain error: ") + e.what();
  }

  const double mid = box.mid();
  const bool splittable = box.lo < mid && mid < box.hi;
  if (depth >= max_depth || !splittable) {
    out.failure = CertificateLeaf{box, value ? *value : Interval(0.0), depth};
    out.reason = splittable ? reason + " (max depth reached)"
                            : reason + " (box cannot be split further)";
    return out;
  }

  const Interval left(box.lo, mid);
  const Interval right(mid, box.hi);
  ExploreOut l, r;
  if (async_budget > 0 && !detail::sequential_forced()) {
    auto rf = std::async(std::launch::async, explore, std::cref(f), right,
                         depth + 1, max_depth, async_budget - 1);
    l = explore(f, left, depth + 1, max_depth, async_budget - 1);
    r = rf.get();
  } else {
    l = explore(f, left, depth + 1, max_depth, 0);
    r = explore(f, right, depth + 1, max_depth, 0);
  }
  out.leaves = std::move(l.leaves);
  out.leaves.insert(out.leaves.end(),
                    std::make_move_iterator(r.leaves.begin()),
                    std::make_move_iterator(r.leaves.end()));
  if (l.failure) {
    out.failure = l.failure;
    out.reason = std::move(l.reason);
  } else if (r.failure) {
    out.failure = r.failure;
    out.reason = std::move(r.reason);
  }
  return out;
}

}  // namespace

PositivityResult certify_positive(
    const std::function<Interval(const Interval&)>& f, const Interval& range,
    int max_depth) {
  if (max_depth < 0) throw precondition_error("max_depth must be nonnegative");
  if (!f) throw precondition_error("certify_positive needs a function");

  ExploreOut out = explore(f, range, 0, max_depth, 3);
  PositivityResult result;
  result.certified = !out.failure.has_value();
  result.leaves = std::move(out.leaves);
  result.failure = out.failure;
  result.failure_reason = std::move(out.reason);
  return result;
}

namespace {

struct MassDerivativePieces {
  Interval num;        // quotient-rule numerator of m1'(a)
  Interval den;        // denominator of m1 itself
  Interval den_slope;  // d/da of that denominator
};

// All the a-derivatives of m1 = a^3 (s - 8) / (s - 8 a^3) without ever
// forming m1' itself: with s = (a^2+1)^{3/2} and s' = 3 a (a^2+1)^{1/2},
//   num = (3 a^2 (s - 8) + a^3 s')(s - 8 a^3) - a^3 (s - 8)(s' - 24 a^2).
MassDerivativePieces mass_derivative_pieces(const Interval& a) {
  const Interval a2 = a * a;
  const Interval a3 = a2 * a;
  const Interval r = a2 + Interval(1.0);
  const Interval sq = iv_sqrt(r);
  const Interval s = r * sq;
  const Interval sp = Interval(3.0) * a * sq;
  const Interval top = a3 * (s - Interval(8.0));
  const Interval dtop = Interval(3.0) * a2 * (s - Interval(8.0)) + a3 * sp;
  const Interval den = s - Interval(8.0) * a3;
  const Interval dden = sp - Interval(24.0) * a2;
  return {dtop * den - top * dden, den, dden};
}

}  // namespace

Certificate certify_rhombus_nondegeneracy(const CertifyOptions& options) {
  Certificate cert;
  cert.max_depth = options.max_depth;

  constexpr double kInf = std::numeric_limits<double>::infinity();
  // Enclosures of the algebraic endpoints sqrt(3)/3 (mass pole) and
  // sqrt(3) (mass zero); the working endpoints are nudged outward so the
  // certified union covers the stated real ranges.
  const Interval sqrt3 = iv_sqrt(Interval(3.0));
  const Interval pole = sqrt3 / Interval(3.0);
  const double seam = std::nextafter(pole.hi + 1e-4, kInf);
  const double right_end = std::nextafter(sqrt3.hi - 1e-3, kInf);
  cert.range = Interval(seam, right_end);

  const PositivityResult direct =
      certify_positive(rhombus_detJ2_interval, cert.range, options.max_depth);
  cert.leaves = direct.leaves;

  std::string reason_a;
  if (!direct.certified) {
    cert.failure = direct.failure;
    reason_a = "direct range: " + direct.failure_reason;
  }

  // Left sliver, pole side: positivity of the determinant polynomial for
  // every mass above the threshold, plus proof that the family's mass
  // really stays above the threshold there.
  RegimeB rb{Interval(pole.lo, seam),
             rhombus_G_poly(Interval(pole.lo, seam)),
             options.mass_threshold,
             rhombus_mass_interval(Interval(seam)),
             {},
             false};
  rb.tail_ok = tail_positive(rb.g, options.mass_threshold);
  const MassDerivativePieces pieces = mass_derivative_pieces(rb.box);
  rb.witness.numerator = pieces.num;
  rb.witness.den_slope = pieces.den_slope;
  rb.witness.den_at_right = mass_derivative_pieces(Interval(seam)).den;
  cert.regime_b = rb;

  std::string reason_b;
  if (!rb.tail_ok) {
    reason_b = "pole sliver: tail positivity not established";
  } else if (!(rb.m1_at_right.lo >= options.mass_threshold)) {
    reason_b = "pole sliver: mass at the seam does not reach the threshold";
  } else if (!rb.witness.valid()) {
    reason_b = "pole sliver: mass monotonicity witness failed";
  }

  if (reason_a.empty() && reason_b.empty()) {
    cert.status = Certificate::Status::certified;
  } else {
    cert.status = Certificate::Status::failed;
    cert.failure_reason = reason_a;
    if (!reason_b.empty()) {
      if (!cert.failure_reason.empty()) cert.failure_reason += "; ";
      cert.failure_reason += reason_b;
    }
  }
  return cert;
}

}  // namespace ccdeg
