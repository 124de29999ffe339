#pragma once

#include <Eigen/Dense>

#include "ccdeg/residual.hpp"
#include "ccdeg/types.hpp"

namespace ccdeg {

// Derivative of residual(form, .) at q, a 2N x 2N matrix in interleaved
// coordinate order.  The pair interaction contributes the familiar
//   K_ij = Id / r^3 - 3 d d^T / r^5,   d = q_j - q_i,
// in block (i, j) scaled by m_i m_j, with the negated column sum on the
// diagonal.  The multiplier terms differ per form:
//   Form I    lambda m_i Id on the diagonal plus m_i q_i (grad lambda)^T,
//   Form II   lambda m_i (delta_ij - m_j / M) Id, multiplier frozen,
//   Form III  the Form II structure plus m_i (q_i - c) (grad lambda)^T,
// where grad lambda has blocks (g_j I - 2 U m_j (q_j - c)) / I^2 and g_j
// is the gravitational part of the residual at body j.
Eigen::MatrixXd jacobian_analytic(Form form, const PlanarConfiguration& q,
                                  const MassVector& m);

// Central finite differences, column by column.  Form II freezes the
// multiplier at its value at q before differencing, matching the
// analytic convention.  step must be positive.
Eigen::MatrixXd jacobian_fd(Form form, const PlanarConfiguration& q,
                            const MassVector& m, double step = 1e-6);

}  // namespace ccdeg
