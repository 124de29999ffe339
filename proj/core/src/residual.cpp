#include "ccdeg/residual.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ccdeg {

const char* form_name(Form f) {
  switch (f) {
    case Form::I: return "I";
    case Form::II: return "II";
    case Form::III: return "III";
  }
  return "?";
}

Form parse_form(std::string_view text) {
  std::string upper(text);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  if (upper == "I") return Form::I;
  if (upper == "II") return Form::II;
  if (upper == "III") return Form::III;
  throw precondition_error("unknown form '" + std::string(text) +
                           "' (expected I, II, or III)");
}

MassVector::MassVector(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() < 2) {
    throw precondition_error("need at least two masses");
  }
  for (double m : values_) {
    if (!std::isfinite(m) || m <= 0.0) {
      throw precondition_error("masses must be finite and positive");
    }
  }
}

double MassVector::total() const {
  double sum = 0.0;
  for (double m : values_) sum += m;
  return sum;
}

double MassVector::max_mass() const {
  return *std::max_element(values_.begin(), values_.end());
}

PlanarConfiguration::PlanarConfiguration(std::vector<double> interleaved_xy)
    : xy_(std::move(interleaved_xy)) {
  if (xy_.size() % 2 != 0 || xy_.size() < 4) {
    throw precondition_error(
        "configuration needs an even number of coordinates for at least two bodies");
  }
  for (double v : xy_) {
    if (!std::isfinite(v)) {
      throw precondition_error("coordinates must be finite");
    }
  }
}

double PlanarConfiguration::diameter() const {
  const std::size_t n = size();
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dx = x(j) - x(i);
      const double dy = y(j) - y(i);
      best = std::max(best, std::hypot(dx, dy));
    }
  }
  return best;
}

double pairwise_distance(const PlanarConfiguration& q, std::size_t i,
                         std::size_t j) {
  const std::size_t n = q.size();
  if (i >= n || j >= n || i == j) {
    throw precondition_error("pairwise_distance: bad body indices");
  }
  const double r = std::hypot(q.x(j) - q.x(i), q.y(j) - q.y(i));
  if (r <= collision_relative_tolerance * q.diameter()) {
    throw collision_error("bodies " + std::to_string(i) + " and " +
                          std::to_string(j) + " are in collision");
  }
  return r;
}

namespace {

// Distances checked once, reused by every accumulation below.
std::vector<double> all_distances(const PlanarConfiguration& q) {
  const std::size_t n = q.size();
  const double collision_floor = collision_relative_tolerance * q.diameter();
  std::vector<double> r(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = std::hypot(q.x(j) - q.x(i), q.y(j) - q.y(i));
      if (d <= collision_floor) {
        throw collision_error("bodies " + std::to_string(i) + " and " +
                              std::to_string(j) + " are in collision");
      }
      r[i * n + j] = d;
      r[j * n + i] = d;
    }
  }
  return r;
}

Eigen::VectorXd gravitational_part(const PlanarConfiguration& q,
                                   const MassVector& m,
                                   const std::vector<double>& r) {
  const std::size_t n = q.size();
  Eigen::VectorXd g = Eigen::VectorXd::Zero(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dist = r[i * n + j];
      const double w = m[i] * m[j] / (dist * dist * dist);
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

std::array<double, 2> center_of_mass(const PlanarConfiguration& q,
                                     const MassVector& m) {
  if (q.size() != m.size()) {
    throw precondition_error("configuration and mass vector sizes differ");
  }
  double cx = 0.0, cy = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    cx += m[i] * q.x(i);
    cy += m[i] * q.y(i);
  }
  const double total = m.total();
  return {cx / total, cy / total};
}

double potential(const PlanarConfiguration& q, const MassVector& m) {
  if (q.size() != m.size()) {
    throw precondition_error("configuration and mass vector sizes differ");
  }
  const auto r = all_distances(q);
  const std::size_t n = q.size();
  double u = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      u += m[i] * m[j] / r[i * n + j];
    }
  }
  return u;
}

double moment_of_inertia(const PlanarConfiguration& q, const MassVector& m) {
  const auto c = center_of_mass(q, m);
  double moment = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    const double dx = q.x(i) - c[0];
    const double dy = q.y(i) - c[1];
    moment += m[i] * (dx * dx + dy * dy);
  }
  return moment;
}

double multiplier(const PlanarConfiguration& q, const MassVector& m) {
  const double moment = moment_of_inertia(q, m);
  if (moment <= 0.0) {
    throw domain_error("moment of inertia vanishes (total collapse)");
  }
  return potential(q, m) / moment;
}

ScalarSummary scalar_summary(const PlanarConfiguration& q,
                             const MassVector& m) {
  ScalarSummary s{};
  s.potential = potential(q, m);
  s.moment = moment_of_inertia(q, m);
  s.center = center_of_mass(q, m);
  if (s.moment <= 0.0) {
    throw domain_error("moment of inertia vanishes (total collapse)");
  }
  s.multiplier = s.potential / s.moment;
  return s;
}

Eigen::VectorXd residual(Form form, const PlanarConfiguration& q,
                         const MassVector& m) {
  if (q.size() != m.size()) {
    throw precondition_error("configuration and mass vector sizes differ");
  }
  const auto r = all_distances(q);
  Eigen::VectorXd out = gravitational_part(q, m, r);
  const ScalarSummary s = scalar_summary(q, m);
  const std::size_t n = q.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (form == Form::I) {
      out[2 * i] += s.multiplier * m[i] * q.x(i);
      out[2 * i + 1] += s.multiplier * m[i] * q.y(i);
    } else {
      out[2 * i] += s.multiplier * m[i] * (q.x(i) - s.center[0]);
      out[2 * i + 1] += s.multiplier * m[i] * (q.y(i) - s.center[1]);
    }
  }
  return out;
}

Eigen::VectorXd residual_fixed_multiplier(const PlanarConfiguration& q,
                                          const MassVector& m,
                                          double lambda) {
  if (q.size() != m.size()) {
    throw precondition_error("configuration and mass vector sizes differ");
  }
  const auto r = all_distances(q);
  Eigen::VectorXd out = gravitational_part(q, m, r);
  const auto c = center_of_mass(q, m);
  for (std::size_t i = 0; i < q.size(); ++i) {
    out[2 * i] += lambda * m[i] * (q.x(i) - c[0]);
    out[2 * i + 1] += lambda * m[i] * (q.y(i) - c[1]);
  }
  return out;
}

double residual_scale(const PlanarConfiguration& q, const MassVector& m) {
  const std::size_t n = q.size();
  const auto r = all_distances(q);
  double r_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      r_min = std::min(r_min, r[i * n + j]);
    }
  }
  const double mmax = m.max_mass();
  return std::max(1.0, mmax * mmax / (r_min * r_min));
}

bool is_central_configuration(Form form, const PlanarConfiguration& q,
                              const MassVector& m, double tol) {
  if (tol <= 0.0) throw precondition_error("tolerance must be positive");
  const Eigen::VectorXd r = residual(form, q, m);
  return r.lpNorm<Eigen::Infinity>() <= tol * residual_scale(q, m);
}

PlanarConfiguration recentered(const PlanarConfiguration& q,
                               const MassVector& m) {
  const auto c = center_of_mass(q, m);
  std::vector<double> xy = q.coords();
  for (std::size_t i = 0; i < q.size(); ++i) {
    xy[2 * i] -= c[0];
    xy[2 * i + 1] -= c[1];
  }
  return PlanarConfiguration(std::move(xy));
}

}  // namespace ccdeg
