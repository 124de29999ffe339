#pragma once

#include <Eigen/Dense>

#include "ccdeg/types.hpp"

namespace ccdeg {

// Distance between bodies i and j.  Throws collision_error when the
// distance is below collision_relative_tolerance times the diameter.
double pairwise_distance(const PlanarConfiguration& q, std::size_t i,
                         std::size_t j);

std::array<double, 2> center_of_mass(const PlanarConfiguration& q,
                                     const MassVector& m);

// U = sum over pairs of m_i m_j / r_ij.
double potential(const PlanarConfiguration& q, const MassVector& m);

// I = sum of m_i |q_i - c|^2 with c the center of mass.
double moment_of_inertia(const PlanarConfiguration& q, const MassVector& m);

// lambda = U / I, the unique multiplier making the equations consistent
// at a central configuration.  Always positive away from total collapse.
double multiplier(const PlanarConfiguration& q, const MassVector& m);

ScalarSummary scalar_summary(const PlanarConfiguration& q,
                             const MassVector& m);

// Residual of the requested form, length 2N, interleaved like the
// configuration.  Entry block i is
//   sum_{j != i} m_i m_j (q_j - q_i)/r_ij^3  +  (U/I) m_i q_i          (I)
//   same gravitational part               +  (U/I) m_i (q_i - c)   (II, III)
// with I about the center of mass.  Forms II and III agree pointwise;
// they differ only once differentiated, because Form II freezes the
// multiplier while Form III lets it vary with the configuration.
Eigen::VectorXd residual(Form form, const PlanarConfiguration& q,
                         const MassVector& m);

// Form II residual with a caller-chosen frozen multiplier.
Eigen::VectorXd residual_fixed_multiplier(const PlanarConfiguration& q,
                                          const MassVector& m,
                                          double lambda);

// Scale factor used by the membership test: max(1, max_mass^2 / r_min^2).
// Keeps the test meaningful for both tight clusters and wide spreads.
double residual_scale(const PlanarConfiguration& q, const MassVector& m);

// True when |residual|_inf <= tol * residual_scale.
bool is_central_configuration(Form form, const PlanarConfiguration& q,
                              const MassVector& m, double tol = 1e-8);

// Copy of q translated so the center of mass sits at the origin.
PlanarConfiguration recentered(const PlanarConfiguration& q,
                               const MassVector& m);

}  // namespace ccdeg
