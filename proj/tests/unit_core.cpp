#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "ccdeg/families.hpp"
#include "ccdeg/residual.hpp"
#include "ccdeg/types.hpp"

using namespace ccdeg;

namespace {

const double kSqrt2 = std::sqrt(2.0);
const double kSqrt3 = std::sqrt(3.0);

MassVector ones(std::size_t n) {
  return MassVector(std::vector<double>(n, 1.0));
}

}  // namespace

TEST_CASE("form tags parse case-insensitively") {
  CHECK(parse_form("I") == Form::I);
  CHECK(parse_form("ii") == Form::II);
  CHECK(parse_form("III") == Form::III);
  CHECK(form_name(Form::II) == doctest::String("II"));
  CHECK_THROWS_AS(parse_form("IV"), precondition_error);
  CHECK_THROWS_AS(parse_form(""), precondition_error);
  CHECK(symmetry_count(Form::I) == 2);
  CHECK(symmetry_count(Form::II) == 3);
  CHECK(symmetry_count(Form::III) == 4);
}

TEST_CASE("mass vector validation") {
  CHECK_THROWS_AS(MassVector(std::vector<double>{}), precondition_error);
  CHECK_THROWS_AS(MassVector(std::vector<double>{1.0}), precondition_error);
  CHECK_THROWS_AS(MassVector(std::vector<double>{1.0, -1.0}),
                  precondition_error);
  CHECK_THROWS_AS(MassVector(std::vector<double>{1.0, 0.0}),
                  precondition_error);
  CHECK_THROWS_AS(MassVector(std::vector<double>{1.0, std::nan("")}),
                  precondition_error);
  MassVector m(std::vector<double>{2.0, 3.0, 5.0});
  CHECK(m.size() == 3);
  CHECK(m.total() == 10.0);
  CHECK(m.max_mass() == 5.0);
  CHECK(m[1] == 3.0);
}

TEST_CASE("configuration validation") {
  CHECK_THROWS_AS(PlanarConfiguration(std::vector<double>{1.0, 2.0, 3.0}),
                  precondition_error);
  CHECK_THROWS_AS(PlanarConfiguration(std::vector<double>{1.0, 2.0}),
                  precondition_error);
  CHECK_THROWS_AS(
      PlanarConfiguration(std::vector<double>{1.0, 2.0, 3.0, std::nan("")}),
      precondition_error);
  PlanarConfiguration q = square_configuration();
  CHECK(q.size() == 4);
  CHECK(q.x(0) == 1.0);
  CHECK(q.y(1) == 1.0);
  CHECK(q.diameter() == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("pairwise distances and collision detection") {
  PlanarConfiguration q = square_configuration();
  CHECK(pairwise_distance(q, 0, 1) == doctest::Approx(kSqrt2).epsilon(1e-15));
  CHECK(pairwise_distance(q, 0, 2) == doctest::Approx(2.0).epsilon(1e-15));

  // Two bodies separated by far less than 1e-12 of the diameter.
  PlanarConfiguration touching(
      std::vector<double>{0, 0, 1e-14, 0, 1, 0, 0, 1});
  CHECK_THROWS_AS(pairwise_distance(touching, 0, 1), collision_error);
  CHECK_THROWS_AS(potential(touching, ones(4)), collision_error);
}

TEST_CASE("scalar summary of the unit-circle square") {
  PlanarConfiguration q = square_configuration();
  auto s = scalar_summary(q, ones(4));
  // Four side pairs at sqrt(2) plus two diagonal pairs at 2.
  CHECK(s.potential ==
        doctest::Approx(1.0 + 2.0 * kSqrt2).epsilon(1e-15));
  CHECK(s.moment == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(s.center[0] == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(s.center[1] == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(s.multiplier ==
        doctest::Approx(0.25 + kSqrt2 / 2).epsilon(1e-15));
}

TEST_CASE("scalar summary of the centered triangle") {
  for (double m4 : {0.3, 1.0, 2.5}) {
    auto q = triangle_center_configuration();
    auto m = triangle_center_masses(m4);
    auto s = scalar_summary(q, m);
    CHECK(s.moment == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(s.multiplier ==
          doctest::Approx(kSqrt3 / 3 + m4).epsilon(1e-14));
  }
}

TEST_CASE("residuals vanish at central configurations") {
  PlanarConfiguration sq = square_configuration();
  for (Form f : {Form::I, Form::II, Form::III}) {
    CHECK(residual(f, sq, ones(4)).lpNorm<Eigen::Infinity>() < 1e-14);
    CHECK(is_central_configuration(f, sq, ones(4)));
  }
  auto tri = triangle_center_configuration();
  for (double m4 : {0.2, 0.9, 3.0}) {
    auto m = triangle_center_masses(m4);
    for (Form f : {Form::I, Form::II, Form::III})
      CHECK(residual(f, tri, m).lpNorm<Eigen::Infinity>() < 1e-13);
  }
  MassVector lm(std::vector<double>{2, 3, 5});
  for (Form f : {Form::I, Form::II, Form::III}) {
    // Any positive masses work on the equilateral triangle, but Form I
    // needs the center of mass at the origin, which [2,3,5] breaks.
    bool central = is_central_configuration(f, lagrange_configuration(), lm);
    CHECK(central == (f != Form::I));
  }
}

TEST_CASE("forms II and III agree pointwise, form I differs off-center") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> pos(-2.0, 2.0);
  std::uniform_real_distribution<double> mass(0.2, 4.0);
  for (int t = 0; t < 50; ++t) {
    std::vector<double> xy(8);
    for (auto& v : xy) v = pos(rng);
    PlanarConfiguration q(xy);
    if (q.diameter() < 0.5) continue;
    std::vector<double> mv(4);
    for (auto& v : mv) v = mass(rng);
    MassVector m(mv);
    Eigen::VectorXd r2, r3;
    try {
      r2 = residual(Form::II, q, m);
      r3 = residual(Form::III, q, m);
    } catch (const collision_error&) {
      continue;
    }
    CHECK((r2 - r3).lpNorm<Eigen::Infinity>() == 0.0);
  }

  // Centered square: all three forms coincide.
  PlanarConfiguration sq = square_configuration();
  auto r1 = residual(Form::I, sq, ones(4));
  auto r3 = residual(Form::III, sq, ones(4));
  CHECK((r1 - r3).lpNorm<Eigen::Infinity>() < 1e-15);

  // Corner square: center of mass off origin separates Form I.
  PlanarConfiguration corner(std::vector<double>{0, 0, 1, 0, 1, 1, 0, 1});
  auto c1 = residual(Form::I, corner, ones(4));
  auto c3 = residual(Form::III, corner, ones(4));
  CHECK((c1 - c3).lpNorm<Eigen::Infinity>() > 0.1);
  CHECK(c3.lpNorm<Eigen::Infinity>() < 1e-14);
  CHECK(is_central_configuration(Form::III, corner, ones(4)));
  CHECK_FALSE(is_central_configuration(Form::I, corner, ones(4)));
}

TEST_CASE("frozen multiplier reproduces form II at the same point") {
  PlanarConfiguration q(std::vector<double>{0.3, 0.1, -1.2, 0.4, 0.9, -1.1,
                                            -0.2, 0.8});
  MassVector m(std::vector<double>{1.5, 0.7, 2.2, 1.0});
  auto direct = residual(Form::II, q, m);
  auto frozen = residual_fixed_multiplier(q, m, multiplier(q, m));
  CHECK((direct - frozen).lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("membership test is scale invariant") {
  for (double scale : {1e-3, 1.0, 1e3}) {
    std::vector<double> xy = square_configuration().coords();
    for (auto& v : xy) v *= scale;
    PlanarConfiguration q(xy);
    CHECK(is_central_configuration(Form::III, q, ones(4)));
  }
  // A visibly broken configuration stays rejected at any scale.
  for (double scale : {1e-3, 1.0, 1e3}) {
    std::vector<double> xy{1, 0, 0, 1.5, -1, 0, 0, -1};
    for (auto& v : xy) v *= scale;
    CHECK_FALSE(
        is_central_configuration(Form::II, PlanarConfiguration(xy), ones(4)));
  }
}

TEST_CASE("recentering moves the center of mass to the origin") {
  PlanarConfiguration corner(std::vector<double>{0, 0, 1, 0, 1, 1, 0, 1});
  auto q = recentered(corner, ones(4));
  auto c = center_of_mass(q, ones(4));
  CHECK(std::abs(c[0]) < 1e-15);
  CHECK(std::abs(c[1]) < 1e-15);
  CHECK(q.x(0) == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(q.y(2) == doctest::Approx(0.5).epsilon(1e-15));
  // Recentering makes the corner square a Form I central configuration.
  CHECK(is_central_configuration(Form::I, q, ones(4)));
}

TEST_CASE("size mismatches are rejected") {
  MassVector m3(std::vector<double>{1, 1, 1});
  PlanarConfiguration q4 = square_configuration();
  CHECK_THROWS_AS(scalar_summary(q4, m3), precondition_error);
  CHECK_THROWS_AS(residual(Form::II, q4, m3), precondition_error);
}
