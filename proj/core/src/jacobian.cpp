#include "ccdeg/jacobian.hpp"

#include <cmath>

namespace ccdeg {

namespace {

// Per-body gravitational acceleration terms g_j = sum_{l != j} m_j m_l
// (q_l - q_j) / r^3, reused by the multiplier gradient.
Eigen::VectorXd gravity_vector(const PlanarConfiguration& q,
                               const MassVector& m) {
  const std::size_t n = q.size();
  Eigen::VectorXd g = Eigen::VectorXd::Zero(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double r = pairwise_distance(q, i, j);
      const double w = m[i] * m[j] / (r * r * r);
      const double dx = q.x(j) - q.x(i);
      const double dy = q.y(j) - q.y(i);
      g[2 * i] += w * dx;
      g[2 * i + 1] += w * dy;
      g[2 * j] -= w * dx;
      g[2 * j + 1] -= w * dy;
    }
  }
  return g;
}

}  // namespace

Eigen::MatrixXd jacobian_analytic(Form form, const PlanarConfiguration& q,
                                  const MassVector& m) {
  if (q.size() != m.size()) {
    throw precondition_error("configuration and mass vector sizes differ");
  }
  const std::size_t n = q.size();
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(2 * n, 2 * n);

  // Pair interaction blocks.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double r = pairwise_distance(q, i, j);
      const double r3 = r * r * r;
      const double r5 = r3 * r * r;
      Eigen::Vector2d d(q.x(j) - q.x(i), q.y(j) - q.y(i));
      const Eigen::Matrix2d K =
          Eigen::Matrix2d::Identity() / r3 - 3.0 * (d * d.transpose()) / r5;
      const double mm = m[i] * m[j];
      J.block<2, 2>(2 * i, 2 * j) += mm * K;
      J.block<2, 2>(2 * j, 2 * i) += mm * K;
      J.block<2, 2>(2 * i, 2 * i) -= mm * K;
      J.block<2, 2>(2 * j, 2 * j) -= mm * K;
    }
  }

  const ScalarSummary s = scalar_summary(q, m);
  const double total = m.total();

  if (form == Form::I) {
    // lambda m_i Id on the diagonal plus the rank-one coupling through
    // the multiplier gradient; the center-of-mass terms in dI/dq cancel
    // because sum m_l (q_l - c) = 0.
    const Eigen::VectorXd g = gravity_vector(q, m);
    for (std::size_t i = 0; i < n; ++i) {
      J.block<2, 2>(2 * i, 2 * i) +=
          s.multiplier * m[i] * Eigen::Matrix2d::Identity();
    }
    for (std::size_t j = 0; j < n; ++j) {
      const Eigen::Vector2d grad_lambda =
          (Eigen::Vector2d(g[2 * j], g[2 * j + 1]) * s.moment -
           2.0 * s.potential * m[j] *
               Eigen::Vector2d(q.x(j) - s.center[0], q.y(j) - s.center[1])) /
          (s.moment * s.moment);
      for (std::size_t i = 0; i < n; ++i) {
        const Eigen::Vector2d qi(q.x(i), q.y(i));
        J.block<2, 2>(2 * i, 2 * j) += m[i] * qi * grad_lambda.transpose();
      }
    }
    return J;
  }

  // Forms II and III share the frozen-multiplier structure
  // lambda m_i (delta_ij - m_j / M) Id.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double delta = (i == j) ? 1.0 : 0.0;
      J.block<2, 2>(2 * i, 2 * j) +=
          s.multiplier * m[i] * (delta - m[j] / total) *
          Eigen::Matrix2d::Identity();
    }
  }

  if (form == Form::III) {
    const Eigen::VectorXd g = gravity_vector(q, m);
    for (std::size_t j = 0; j < n; ++j) {
      const Eigen::Vector2d grad_lambda =
          (Eigen::Vector2d(g[2 * j], g[2 * j + 1]) * s.moment -
           2.0 * s.potential * m[j] *
               Eigen::Vector2d(q.x(j) - s.center[0], q.y(j) - s.center[1])) /
          (s.moment * s.moment);
      for (std::size_t i = 0; i < n; ++i) {
        const Eigen::Vector2d ri(q.x(i) - s.center[0], q.y(i) - s.center[1]);
        J.block<2, 2>(2 * i, 2 * j) += m[i] * ri * grad_lambda.transpose();
      }
    }
  }

  return J;
}

Eigen::MatrixXd jacobian_fd(Form form, const PlanarConfiguration& q,
                            const MassVector& m, double step) {
  if (!(step > 0.0)) {
    throw precondition_error("finite-difference step must be positive");
  }
  if (q.size() != m.size()) {
    throw precondition_error("configuration and mass vector sizes differ");
  }
  const std::size_t dim = 2 * q.size();

  // Form II differentiates with the multiplier frozen at the base point.
  const double frozen =
      (form == Form::II) ? multiplier(q, m) : 0.0;
  const auto eval = [&](const PlanarConfiguration& at) -> Eigen::VectorXd {
    if (form == Form::II) return residual_fixed_multiplier(at, m, frozen);
    return residual(form, at, m);
  };

  Eigen::MatrixXd J(dim, dim);
  std::vector<double> xy = q.coords();
  for (std::size_t col = 0; col < dim; ++col) {
    const double saved = xy[col];
    xy[col] = saved + step;
    const Eigen::VectorXd plus = eval(PlanarConfiguration(xy));
    xy[col] = saved - step;
    const Eigen::VectorXd minus = eval(PlanarConfiguration(xy));
    xy[col] = saved;
    J.col(col) = (plus - minus) / (2.0 * step);
  }
  return J;
}

}  // namespace ccdeg
