#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <random>
#include <sstream>
#include <vector>

#include "ccdeg/certifier.hpp"
#include "ccdeg/families.hpp"
#include "ccdeg/reduction.hpp"

using namespace ccdeg;

namespace {

const double kSqrt3 = std::sqrt(3.0);

Interval square_minus_one(const Interval& x) {
  return iv_sub(iv_powi(x, 2), Interval(1));
}

}  // namespace

TEST_CASE("closed form block agrees with the numeric reduction") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> ad(0.4, 2.5);
  std::uniform_real_distribution<double> md(0.2, 5.0);
  for (int t = 0; t < 50; ++t) {
    double a = ad(rng), m1 = md(rng);
    auto q = rhombus_configuration(a);
    auto m = rhombus_masses(m1);

    // The conjugated block exists for any masses; only its first
    // columns vanishing is special to central points.
    auto pf = build_P(symmetry_generators(Form::III, q), 4);
    Eigen::MatrixXd C =
        pf.P_inverse * normalized_jacobian(Form::III, q, m) * pf.P;
    Eigen::Matrix4d numeric = C.bottomRightCorner(4, 4);

    Eigen::Matrix4d sym = RhombusJ2Symbolic::evaluate(a, m1);
    CHECK((numeric - sym).cwiseAbs().maxCoeff() < 1e-8);
    CHECK(RhombusJ2Symbolic::determinant(a, m1) ==
          doctest::Approx(numeric.determinant()).epsilon(1e-8));

    // Template entries evaluated in plain doubles match too.
    auto entries = rhombus_j2_entries<double>(a, m1);
    double dev = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        dev = std::max(dev, std::abs(entries[i][j] - sym(i, j)));
    CHECK(dev < 1e-12);
  }
}

TEST_CASE("determinant polynomial identity") {
  // (a^2 m1 + 1)^4 det J2 equals the degree-8 polynomial in m1, for any
  // masses, central or not.
  std::mt19937 rng(47);
  std::uniform_real_distribution<double> ad(0.6, 1.7);
  std::uniform_real_distribution<double> md(0.2, 8.0);
  for (int t = 0; t < 25; ++t) {
    double a = ad(rng), m1 = md(rng);
    auto g = rhombus_G_poly(Interval(a));
    REQUIRE(g.degree() == 8);
    double lhs = std::pow(a * a * m1 + 1.0, 4) *
                 RhombusJ2Symbolic::determinant(a, m1);
    Interval gv = poly_eval_horner(g, Interval(m1));
    double tol = 1e-8 * std::max(1.0, std::abs(lhs));
    CHECK(gv.lo - tol <= lhs);
    CHECK(lhs <= gv.hi + tol);
  }
}

TEST_CASE("mass enclosure along the family") {
  auto at_one = rhombus_mass_interval(Interval(1.0));
  CHECK(at_one.contains(1.0));
  CHECK(at_one.width() < 1e-12);

  auto at_07 = rhombus_mass_interval(Interval(0.7));
  CHECK(at_07.contains(2.2915114231583904));

  // Boxes respect monotonicity: the enclosure of a box must cover the
  // values at both ends.
  auto box = rhombus_mass_interval(Interval(0.9, 1.1));
  CHECK(box.contains(rhombus_mass(0.9)));
  CHECK(box.contains(rhombus_mass(1.1)));
  CHECK(box.contains(1.0));

  // Reaching the pole or the sign change is a domain error.
  CHECK_THROWS_AS(rhombus_mass_interval(Interval(0.55, 0.6)), domain_error);
  CHECK_THROWS_AS(rhombus_mass_interval(Interval(1.75, 1.8)), domain_error);
  CHECK_THROWS_AS(rhombus_mass_interval(Interval(-0.5, -0.4)), domain_error);
}

TEST_CASE("determinant enclosure along the family") {
  auto at_one = rhombus_detJ2_interval(Interval(1.0));
  CHECK(at_one.contains(4.4064174064438211));
  CHECK(at_one.width() < 1e-6);

  auto wide = rhombus_detJ2_interval(Interval(0.9, 1.1));
  CHECK(wide.lo > 0.0);
  CHECK(wide.contains(at_one));
  CHECK(wide.contains(RhombusJ2Symbolic::determinant(
      1.05, rhombus_mass(1.05))));

  CHECK_THROWS_AS(rhombus_detJ2_interval(Interval(0.55, 0.6)), domain_error);
}

TEST_CASE("determinant polynomial coefficients at the pole shape") {
  // The polynomial stays perfectly regular at the mass pole; only the
  // rational mass function blows up there.
  auto g = rhombus_G_poly(Interval(kSqrt3 / 3));
  REQUIRE(g.degree() == 8);
  const double truth[9] = {0.237130883068174,  -4.33725027386143,
                           0.249686731063923,  41.0206028755625,
                           63.9649933821954,   39.4675289545013,
                           11.8801118162507,   1.74427343573894,
                           0.100112915039063};
  for (int k = 0; k <= 8; ++k) {
    double tol = 1e-12 * std::max(1.0, std::abs(truth[k]));
    CHECK(g.coeffs[k].lo - tol <= truth[k]);
    CHECK(truth[k] <= g.coeffs[k].hi + tol);
    CHECK(g.coeffs[k].width() < 1e-10 * std::max(1.0, std::abs(truth[k])));
  }
}

TEST_CASE("pole sliver coefficients stay inside the reference bounds") {
  Interval sliver(0.57735026918962551, 0.57745026918962605);
  auto g = rhombus_G_poly(sliver);
  CHECK(g.coeffs[1].lo >= -4.3604538820343463);
  CHECK(g.coeffs[1].hi <= -4.3106814046303581);
  CHECK(g.coeffs[8].lo >= 0.0997328510875500);
  CHECK(g.coeffs[8].hi <= 0.1004895898006604);
  // Only the linear coefficient is negative on the sliver.
  for (int k = 0; k <= 8; ++k) {
    if (k == 1)
      CHECK(g.coeffs[k].hi < 0.0);
    else
      CHECK(g.coeffs[k].lo > 0.0);
  }
}

TEST_CASE("tail positivity test") {
  // c2 M + c1 >= 0 and M (c2 M + c1) + c0 > 0 decide the sign for
  // x >= M when every other coefficient is nonnegative.
  IntervalPoly p(std::vector<Interval>{Interval(1), Interval(-3),
                                       Interval(1), Interval(1)});
  CHECK(tail_positive(p, 4.0));
  CHECK(!tail_positive(p, 2.0));

  IntervalPoly neg0(std::vector<Interval>{Interval(-1), Interval(0),
                                          Interval(1)});
  CHECK(!tail_positive(neg0, 10.0));

  IntervalPoly negcubic(std::vector<Interval>{Interval(1), Interval(0),
                                              Interval(1), Interval(-0.1)});
  CHECK(!tail_positive(negcubic, 10.0));

  // The real determinant polynomial on the pole sliver.
  Interval sliver(0.57735026918962551, 0.57745026918962605);
  auto g = rhombus_G_poly(sliver);
  CHECK(tail_positive(g, 2072.0));
  CHECK(!tail_positive(g, 1.0));
}

TEST_CASE("bisection certifier on a polynomial with a root inside") {
  auto r = certify_positive(square_minus_one, Interval(0.5, 2.0), 20);
  CHECK(!r.certified);
  REQUIRE(r.failure.has_value());
  // The function is genuinely nonpositive left of 1, so the leftmost
  // box must fail honestly.
  CHECK(r.failure->box.lo == 0.5);
  CHECK(square_minus_one(r.failure->box).lo <= 0.0);
  CHECK(!r.failure_reason.empty());

  auto ok = certify_positive(square_minus_one, Interval(1.001, 2.0), 20);
  CHECK(ok.certified);
  REQUIRE(!ok.leaves.empty());
  CHECK(ok.leaves.front().box.lo == 1.001);
  CHECK(ok.leaves.back().box.hi == 2.0);
  for (const auto& leaf : ok.leaves) CHECK(leaf.value.lo > 0.0);
  for (std::size_t i = 1; i < ok.leaves.size(); ++i)
    CHECK(ok.leaves[i].box.lo == ok.leaves[i - 1].box.hi);

  CHECK_THROWS_AS(certify_positive(square_minus_one, Interval(0.5, 2.0), -1),
                  precondition_error);
}

TEST_CASE("bisection depth adapts to the distance from the pole") {
  auto det = [](const Interval& b) { return rhombus_detJ2_interval(b); };

  auto wide = certify_positive(det, Interval(kSqrt3 / 3 + 0.1,
                                             kSqrt3 - 0.01), 42);
  CHECK(wide.certified);
  CHECK(wide.leaves.size() == 1);

  auto narrow = certify_positive(det, Interval(kSqrt3 / 3 + 0.0001,
                                               kSqrt3 - 0.01), 42);
  CHECK(narrow.certified);
  CHECK(narrow.leaves.size() == 99);
  CHECK(narrow.leaves.front().depth == 18);
  CHECK(narrow.leaves.back().depth == 1);
}

TEST_CASE("bisection certifier is schedule independent") {
  auto det = [](const Interval& b) { return rhombus_detJ2_interval(b); };
  Interval range(kSqrt3 / 3 + 0.001, kSqrt3 - 0.01);
  auto par = certify_positive(det, range, 42);
  setenv("CCDEG_SEQUENTIAL", "1", 1);
  auto seq = certify_positive(det, range, 42);
  unsetenv("CCDEG_SEQUENTIAL");
  REQUIRE(par.leaves.size() == seq.leaves.size());
  CHECK(par.certified == seq.certified);
  for (std::size_t i = 0; i < par.leaves.size(); ++i) {
    CHECK(par.leaves[i].box.lo == seq.leaves[i].box.lo);
    CHECK(par.leaves[i].box.hi == seq.leaves[i].box.hi);
    CHECK(par.leaves[i].value.lo == seq.leaves[i].value.lo);
    CHECK(par.leaves[i].depth == seq.leaves[i].depth);
  }
}

TEST_CASE("full rhombus certificate with default options") {
  auto cert = certify_rhombus_nondegeneracy();
  CHECK(cert.status == Certificate::Status::certified);
  CHECK(cert.max_depth == 42);
  CHECK(cert.range.lo == 0.57745026918962605);
  CHECK(cert.range.hi == 1.7310508075688777);
  REQUIRE(!cert.leaves.empty());

  // Leaves tile the direct range exactly and every bound is positive.
  CHECK(cert.leaves.front().box.lo == cert.range.lo);
  CHECK(cert.leaves.back().box.hi == cert.range.hi);
  double min_lower = 1e300;
  for (std::size_t i = 0; i < cert.leaves.size(); ++i) {
    if (i > 0) CHECK(cert.leaves[i].box.lo == cert.leaves[i - 1].box.hi);
    CHECK(cert.leaves[i].value.lo > 0.0);
    min_lower = std::min(min_lower, cert.leaves[i].value.lo);
  }
  CHECK(cert.leaves.size() == 99);
  CHECK(min_lower == doctest::Approx(0.010046528046312992).epsilon(1e-12));

  REQUIRE(cert.regime_b.has_value());
  const auto& rb = *cert.regime_b;
  CHECK(rb.box.lo == 0.57735026918962551);
  CHECK(rb.box.hi == cert.range.lo);
  CHECK(rb.mass_threshold == 2072.0);
  CHECK(rb.tail_ok);
  CHECK(rb.m1_at_right.lo > rb.mass_threshold);
  CHECK(rb.witness.valid());
  CHECK(rb.witness.numerator.hi < 0.0);
  CHECK(rb.witness.den_slope.hi < 0.0);
  CHECK(rb.witness.den_at_right.hi < 0.0);
  CHECK(rb.g.degree() == 8);

  // Soundness anchor: point evaluations agree with positivity.
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> pick(0.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    const auto& leaf = cert.leaves[static_cast<std::size_t>(
        pick(rng) * static_cast<double>(cert.leaves.size() - 1))];
    double a = leaf.box.lo + pick(rng) * leaf.box.width();
    double det = RhombusJ2Symbolic::determinant(a, rhombus_mass(a));
    CHECK(det > 0.0);
    CHECK(det >= leaf.value.lo - 1e-12 * std::abs(det));
  }
}

TEST_CASE("certificate failure modes") {
  auto shallow = certify_rhombus_nondegeneracy(CertifyOptions{1, 2072.0});
  CHECK(shallow.status == Certificate::Status::failed);
  REQUIRE(shallow.failure.has_value());
  CHECK(!shallow.failure_reason.empty());
  CHECK(shallow.failure->box.lo == 0.57745026918962605);

  auto weak = certify_rhombus_nondegeneracy(CertifyOptions{42, 1.0});
  CHECK(weak.status == Certificate::Status::failed);
  REQUIRE(weak.regime_b.has_value());
  CHECK(!weak.regime_b->tail_ok);
  CHECK(!weak.failure_reason.empty());
}

TEST_CASE("certificate serialization round trip") {
  auto cert = certify_rhombus_nondegeneracy();
  std::stringstream ss;
  write_certificate(cert, ss);

  auto back = read_certificate(ss);
  CHECK(back.status == cert.status);
  CHECK(back.range.lo == cert.range.lo);
  CHECK(back.range.hi == cert.range.hi);
  CHECK(back.max_depth == cert.max_depth);
  REQUIRE(back.leaves.size() == cert.leaves.size());
  for (std::size_t i = 0; i < cert.leaves.size(); ++i) {
    CHECK(back.leaves[i].box.lo == cert.leaves[i].box.lo);
    CHECK(back.leaves[i].box.hi == cert.leaves[i].box.hi);
    CHECK(back.leaves[i].value.lo == cert.leaves[i].value.lo);
    CHECK(back.leaves[i].value.hi == cert.leaves[i].value.hi);
    CHECK(back.leaves[i].depth == cert.leaves[i].depth);
  }
  REQUIRE(back.regime_b.has_value());
  const auto& a = *cert.regime_b;
  const auto& b = *back.regime_b;
  CHECK(b.box.lo == a.box.lo);
  CHECK(b.box.hi == a.box.hi);
  CHECK(b.mass_threshold == a.mass_threshold);
  CHECK(b.tail_ok == a.tail_ok);
  CHECK(b.m1_at_right.lo == a.m1_at_right.lo);
  CHECK(b.m1_at_right.hi == a.m1_at_right.hi);
  CHECK(b.witness.numerator.hi == a.witness.numerator.hi);
  CHECK(b.witness.den_slope.lo == a.witness.den_slope.lo);
  CHECK(b.witness.den_at_right.hi == a.witness.den_at_right.hi);
  REQUIRE(b.g.degree() == a.g.degree());
  for (int k = 0; k <= a.g.degree(); ++k) {
    CHECK(b.g.coeffs[k].lo == a.g.coeffs[k].lo);
    CHECK(b.g.coeffs[k].hi == a.g.coeffs[k].hi);
  }

  // A failed certificate round-trips with its failure block.
  auto bad = certify_rhombus_nondegeneracy(CertifyOptions{1, 2072.0});
  std::stringstream ss2;
  write_certificate(bad, ss2);
  auto bad_back = read_certificate(ss2);
  CHECK(bad_back.status == Certificate::Status::failed);
  REQUIRE(bad_back.failure.has_value());
  CHECK(bad_back.failure->box.lo == bad.failure->box.lo);
  CHECK(bad_back.failure_reason == bad.failure_reason);
}

TEST_CASE("certificate parser rejects malformed input") {
  std::stringstream empty("");
  CHECK_THROWS_AS(read_certificate(empty), precondition_error);

  std::stringstream garbage("not a certificate\nat all\n");
  CHECK_THROWS_AS(read_certificate(garbage), precondition_error);

  auto cert = certify_rhombus_nondegeneracy(CertifyOptions{1, 2072.0});
  std::stringstream ss;
  write_certificate(cert, ss);
  std::string text = ss.str();
  std::stringstream truncated(text.substr(0, text.size() / 2));
  CHECK_THROWS_AS(read_certificate(truncated), precondition_error);
}
