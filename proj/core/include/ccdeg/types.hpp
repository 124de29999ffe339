#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ccdeg {

// Base class for everything this library throws.  Callers that want
// verdict-style control flow catch these at the boundary.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Violated input contract (wrong sizes, nonpositive masses, bad options).
struct precondition_error : error {
  using error::error;
};

// Two bodies closer than the collision tolerance relative to the
// configuration diameter.  Raised by any evaluation that needs a
// pairwise distance, including finite-difference probes.
struct collision_error : error {
  using error::error;
};

// A value left the domain of the requested operation (negative radicand,
// division by an interval containing zero, family parameter at a pole).
struct domain_error : error {
  using error::error;
};

// The configuration does not satisfy the central configuration equations
// to the requested tolerance, so reduction refuses to classify it.
struct not_central_error : error {
  not_central_error(const std::string& what, double residual_norm)
      : error(what), residual_norm(residual_norm) {}
  double residual_norm;
};

// Iteration budget exhausted without meeting the convergence test.
struct convergence_error : error {
  using error::error;
};

// Symmetry generators do not have full rank, or no invertible pivot
// block exists.  Unreachable for valid configurations; kept as a
// defensive diagnostic.
struct degenerate_basis_error : error {
  using error::error;
};

// Which residual form is being studied.  The forms share the same zero
// set (rescaled) but differ in how the multiplier enters, and therefore
// in how many symmetries their linearizations inherit:
//   Form I    rotation + scaling                          (k = 2)
//   Form II   translations + rotation, multiplier frozen  (k = 3)
//   Form III  translations + rotation + scaling           (k = 4)
enum class Form { I, II, III };

constexpr int symmetry_count(Form f) {
  switch (f) {
    case Form::I: return 2;
    case Form::II: return 3;
    case Form::III: return 4;
  }
  return 0;
}

const char* form_name(Form f);

// Accepts "I", "II", "III" (case-insensitive); throws precondition_error
// otherwise.
Form parse_form(std::string_view text);

// Positive masses, at least two bodies.
class MassVector {
 public:
  explicit MassVector(std::vector<double> values);

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  const std::vector<double>& values() const { return values_; }
  double total() const;
  double max_mass() const;

 private:
  std::vector<double> values_;
};

// Planar positions stored interleaved, x1, y1, ..., xN, yN.  Every
// matrix in this library indexes rows and columns in this order.
// Coordinates must be finite and pairwise distinct (collision checks
// against the relative tolerance below happen at evaluation time, where
// the diameter of the specific configuration is known).
class PlanarConfiguration {
 public:
  explicit PlanarConfiguration(std::vector<double> interleaved_xy);

  std::size_t size() const { return xy_.size() / 2; }
  double x(std::size_t i) const { return xy_[2 * i]; }
  double y(std::size_t i) const { return xy_[2 * i + 1]; }
  const std::vector<double>& coords() const { return xy_; }
  std::vector<double>& coords() { return xy_; }

  double diameter() const;

 private:
  std::vector<double> xy_;
};

// U, I and the derived multiplier at one configuration.  The moment of
// inertia is taken about the center of mass.
struct ScalarSummary {
  double potential;
  double moment;
  std::array<double, 2> center;
  double multiplier;
};

// Two bodies count as collided when their distance drops below this
// fraction of the configuration diameter.
inline constexpr double collision_relative_tolerance = 1e-12;

}  // namespace ccdeg
