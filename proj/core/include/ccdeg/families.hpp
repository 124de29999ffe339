#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ccdeg/reduction.hpp"
#include "ccdeg/types.hpp"

namespace ccdeg {

struct NewtonOptions {
  enum class Strategy {
    reduced,        // solve the J2 system in reduced coordinates
    least_squares,  // minimum-norm least-squares step on the full system
  };
  int max_iterations = 50;
  double tolerance = 1e-12;
  double damping = 0.5;  // step shrink factor; at most 30 shrinks per step
  Strategy strategy = Strategy::reduced;
};

// Newton iteration on the residual of the given form.  The reduced
// strategy updates only along the non-symmetry directions of P, which
// keeps the linear systems square and well-posed at nondegenerate
// solutions.  Throws convergence_error when the budget runs out and
// collision_error if bodies collide along the way.
PlanarConfiguration newton_solve(Form form, const MassVector& m,
                                 const PlanarConfiguration& q_init,
                                 const NewtonOptions& options = {});

// Equal-mass square inscribed in the unit circle, vertices on the axes.
PlanarConfiguration square_configuration();

// Equilateral triangle inscribed in the unit circle (side sqrt(3)),
// first vertex on the positive x axis.  Central for arbitrary masses.
PlanarConfiguration lagrange_configuration();

// The lagrange_configuration triangle of three unit masses plus a
// fourth body of mass m4 at the barycenter.  A central configuration for
// every m4 > 0.
PlanarConfiguration triangle_center_configuration();
MassVector triangle_center_masses(double m4);

// Rhombus with vertices (0, a), (-1, 0), (0, -a), (1, 0); bodies 1 and 3
// carry mass m1, bodies 2 and 4 carry mass 1.
PlanarConfiguration rhombus_configuration(double a);
MassVector rhombus_masses(double m1);

// The unique m1 making the rhombus central,
//   m1(a) = a^3 (s - 8) / (s - 8 a^3),   s = (a^2 + 1)^{3/2}.
// Positive exactly for a in (sqrt(3)/3, sqrt(3)); the denominator
// vanishes at the left endpoint and the numerator at the right.  Throws
// domain_error when |denominator| < 1e-14.
double rhombus_mass(double a);

// Residual consistency of the rhombus family: with f the per-unit-mass
// residual, a * f_y(body 1) - f_x(body 2) / m1 vanishes identically in
// (a, m1), central or not.  Returns the absolute defect.
double residual_identity_check(double a, double m1);

enum class Family { triangle_center, rhombus };

const char* family_name(Family f);

// One evaluated scan point.  flag is empty when the evaluation
// succeeded; otherwise it carries the reason (domain error at a mass
// pole, nonpositive mass, ...) and the remaining fields are unset.
struct FamilyPoint {
  double parameter;
  std::optional<PlanarConfiguration> configuration;
  std::optional<MassVector> masses;
  std::optional<double> detJ2;
  std::optional<Verdict> verdict;
  std::string flag;

  bool ok() const { return flag.empty(); }
};

// Uniform inclusive scan of detJ2 along a family, steps >= 2.  Points
// are evaluated independently (in parallel unless CCDEG_SEQUENTIAL is
// set) and reported in parameter order; results are bitwise independent
// of the schedule.
std::vector<FamilyPoint> family_scan(Family family, Form form,
                                     std::array<double, 2> range, int steps);

// Parameter in the bracket where detJ2 vanishes.  Uses sign-change
// bisection when the endpoint signs differ.  Otherwise the zero, if
// any, is an even-order root: the minimizer of |detJ2| is located by
// golden-section search, accepted only when the minimum is consistent
// with zero (1e-14 times the Hadamard scale of J2), and refined by
// bisecting the sign of a central-difference derivative of detJ2.
// Throws domain_error when detJ2 does not vanish on the bracket.
double find_critical_mass(Family family, Form form,
                          std::array<double, 2> bracket);

}  // namespace ccdeg
