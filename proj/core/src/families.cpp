#include "ccdeg/families.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <thread>

#include "runtime_env.hpp"

namespace ccdeg {

const char* family_name(Family f) {
  switch (f) {
    case Family::triangle_center: return "triangle_center";
    case Family::rhombus: return "rhombus";
  }
  return "?";
}

PlanarConfiguration square_configuration() {
  return PlanarConfiguration({1.0, 0.0, 0.0, 1.0, -1.0, 0.0, 0.0, -1.0});
}

PlanarConfiguration lagrange_configuration() {
  const double h = std::sqrt(3.0) / 2.0;
  return PlanarConfiguration({1.0, 0.0, -0.5, h, -0.5, -h});
}

PlanarConfiguration triangle_center_configuration() {
  const double h = std::sqrt(3.0) / 2.0;
  return PlanarConfiguration({1.0, 0.0, -0.5, h, -0.5, -h, 0.0, 0.0});
}

MassVector triangle_center_masses(double m4) {
  return MassVector({1.0, 1.0, 1.0, m4});
}

PlanarConfiguration rhombus_configuration(double a) {
  if (!(a > 0.0)) throw precondition_error("rhombus half-diagonal must be positive");
  return PlanarConfiguration({0.0, a, -1.0, 0.0, 0.0, -a, 1.0, 0.0});
}

MassVector rhombus_masses(double m1) {
  return MassVector({m1, 1.0, m1, 1.0});
}

double rhombus_mass(double a) {
  if (!(a > 0.0)) throw precondition_error("rhombus half-diagonal must be positive");
  const double s = std::pow(a * a + 1.0, 1.5);
  const double den = s - 8.0 * a * a * a;
  if (std::abs(den) < 1e-14) {
    throw domain_error("rhombus mass pole: denominator vanishes at this shape");
  }
  return a * a * a * (s - 8.0) / den;
}

double residual_identity_check(double a, double m1) {
  const PlanarConfiguration q = rhombus_configuration(a);
  const MassVector m = rhombus_masses(m1);
  const Eigen::VectorXd r = residual(Form::III, q, m);
  // Per-unit-mass components: y of body 1 (mass m1), x of body 2 (mass 1).
  // a f_y1 - f_x2 / m1 vanishes identically in (a, m1): the multiplier
  // contributes lambda (a^2 m1 + 1) = U / 2, which exactly cancels the
  // gravitational part, central configuration or not.
  const double f_y1 = r[1] / m1;
  const double f_x2 = r[2];
  return std::abs(a * f_y1 - f_x2 / m1);
}

PlanarConfiguration newton_solve(Form form, const MassVector& m,
                                 const PlanarConfiguration& q_init,
                                 const NewtonOptions& options) {
  if (options.max_iterations < 1) {
    throw precondition_error("newton_solve needs at least one iteration");
  }
  if (!(options.tolerance > 0.0)) {
    throw precondition_error("newton_solve tolerance must be positive");
  }
  if (!(options.damping > 0.0 && options.damping < 1.0)) {
    throw precondition_error("newton_solve damping must lie in (0, 1)");
  }
  if (q_init.size() != m.size()) {
    throw precondition_error("configuration and mass vector sizes differ");
  }

  const std::size_t dim = 2 * q_init.size();
  PlanarConfiguration q = q_init;

  // Row normalization applied identically to the Jacobian and the
  // right-hand side, so the solved system is the same one reduce() sees.
  const auto normalize_rows = [&](Eigen::VectorXd r,
                                  const PlanarConfiguration& at) {
    if (form == Form::I) {
      return Eigen::VectorXd(std::sqrt(moment_of_inertia(at, m) / 2.0) * r);
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
      r[2 * i] /= m[i];
      r[2 * i + 1] /= m[i];
    }
    return r;
  };

  Eigen::VectorXd r = residual(form, q, m);
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    const double rnorm = r.lpNorm<Eigen::Infinity>();
    if (rnorm <= options.tolerance) return q;

    Eigen::VectorXd step(dim);
    const Eigen::MatrixXd J = normalized_jacobian(form, q, m);
    const Eigen::VectorXd rn = normalize_rows(r, q);
    if (options.strategy == NewtonOptions::Strategy::reduced) {
      const SymmetryBasis basis = symmetry_generators(form, q);
      const int k = basis.count();
      const PFactors f = build_P(basis, q.size());
      const Eigen::MatrixXd C = f.P_inverse * J * f.P;
      const Eigen::MatrixXd J2 =
          C.bottomRightCorner(dim - k, dim - k);
      const Eigen::VectorXd rhs =
          (f.P_inverse * rn).tail(dim - k);
      const Eigen::VectorXd delta2 = J2.partialPivLu().solve(-rhs);
      step = f.P.rightCols(dim - k) * delta2;
    } else {
      step = J.completeOrthogonalDecomposition().solve(-rn);
    }

    // Backtracking on the residual norm, at most 30 shrinks.
    double t = 1.0;
    bool accepted = false;
    for (int halving = 0; halving <= 30; ++halving) {
      std::vector<double> xy = q.coords();
      for (std::size_t c = 0; c < dim; ++c) xy[c] += t * step[c];
      const PlanarConfiguration trial(std::move(xy));
      const Eigen::VectorXd rt = residual(form, trial, m);
      if (rt.lpNorm<Eigen::Infinity>() < rnorm) {
        q = trial;
        r = rt;
        accepted = true;
        break;
      }
      t *= options.damping;
    }
    if (!accepted) {
      throw convergence_error("newton_solve: step backtracking stalled");
    }
  }
  if (residual(form, q, m).lpNorm<Eigen::Infinity>() <= options.tolerance) {
    return q;
  }
  throw convergence_error("newton_solve: iteration budget exhausted");
}

namespace {

struct FamilyInstance {
  PlanarConfiguration q;
  MassVector m;
};

FamilyInstance instantiate(Family family, double parameter) {
  if (family == Family::triangle_center) {
    return {triangle_center_configuration(), triangle_center_masses(parameter)};
  }
  return {rhombus_configuration(parameter),
          rhombus_masses(rhombus_mass(parameter))};
}

std::string flag_text(const char* kind, const error& e) {
  std::string text = std::string(kind) + ": " + e.what();
  // Flags travel in a comma-separated report format.
  std::replace(text.begin(), text.end(), ',', ';');
  return text;
}

FamilyPoint evaluate_point(Family family, Form form, double parameter) {
  FamilyPoint pt;
  pt.parameter = parameter;
  try {
    FamilyInstance inst = instantiate(family, parameter);
    const ReductionReport rep = reduce(form, inst.q, inst.m);
    pt.configuration = std::move(inst.q);
    pt.masses = std::move(inst.m);
    pt.detJ2 = rep.detJ2;
    pt.verdict = rep.verdict;
  } catch (const domain_error& e) {
    pt.flag = flag_text("domain error", e);
  } catch (const precondition_error& e) {
    pt.flag = flag_text("invalid parameter", e);
  } catch (const collision_error& e) {
    pt.flag = flag_text("collision", e);
  } catch (const not_central_error& e) {
    pt.flag = flag_text("not central", e);
  }
  return pt;
}

}  // namespace

std::vector<FamilyPoint> family_scan(Family family, Form form,
                                     std::array<double, 2> range, int steps) {
  if (steps < 2) throw precondition_error("family_scan needs at least two steps");
  if (!(range[0] < range[1])) {
    throw precondition_error("family_scan range must be increasing");
  }

  std::vector<double> params(steps);
  for (int i = 0; i < steps; ++i) {
    params[i] = range[0] +
                (range[1] - range[0]) * static_cast<double>(i) /
                    static_cast<double>(steps - 1);
  }
  params.back() = range[1];  // inclusive endpoint, no rounding drift

  std::vector<FamilyPoint> points(steps);
  const auto run_chunk = [&](int begin, int end) {
    for (int i = begin; i < end; ++i) {
      points[i] = evaluate_point(family, form, params[i]);
    }
  };

  const unsigned workers =
      detail::sequential_forced()
          ? 1u
          : std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                                            static_cast<unsigned>(steps)));
  if (workers == 1) {
    run_chunk(0, steps);
    return points;
  }
  std::vector<std::future<void>> futures;
  const int chunk = (steps + static_cast<int>(workers) - 1) /
                    static_cast<int>(workers);
  for (int begin = 0; begin < steps; begin += chunk) {
    const int end = std::min(steps, begin + chunk);
    futures.push_back(
        std::async(std::launch::async, run_chunk, begin, end));
  }
  for (auto& f : futures) f.get();
  return points;
}

namespace {

double detJ2_at(Family family, Form form, double parameter) {
  const FamilyInstance inst = instantiate(family, parameter);
  return reduce(form, inst.q, inst.m).detJ2;
}

double hadamard_scale_at(Family family, Form form, double parameter) {
  const FamilyInstance inst = instantiate(family, parameter);
  const ReductionReport rep = reduce(form, inst.q, inst.m);
  double scale = 1.0;
  for (int r = 0; r < rep.J2.rows(); ++r) {
    scale *= std::max(rep.J2.row(r).norm(), 1e-300);
  }
  return scale;
}

}  // namespace

double find_critical_mass(Family family, Form form,
                          std::array<double, 2> bracket) {
  double lo = bracket[0], hi = bracket[1];
  if (!(lo < hi)) throw precondition_error("bracket must be increasing");

  const auto det = [&](double p) { return detJ2_at(family, form, p); };

  const double f_lo = det(lo);
  const double f_hi = det(hi);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;

  if ((f_lo > 0.0) != (f_hi > 0.0)) {
    // Simple root: bisect the sign of detJ2 itself.
    double a = lo, b = hi;
    bool sign_a = f_lo > 0.0;
    while (b - a > 1e-13 * std::max(1.0, std::abs(a))) {
      const double mid = a + 0.5 * (b - a);
      if (mid <= a || mid >= b) break;
      const double fm = det(mid);
      if (fm == 0.0) return mid;
      if ((fm > 0.0) == sign_a) {
        a = mid;
      } else {
        b = mid;
      }
    }
    return a + 0.5 * (b - a);
  }

  // No sign change: any root in the bracket has even order.  Locate the
  // valley of |detJ2| first.
  const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double x1 = b - golden * (b - a);
  double x2 = a + golden * (b - a);
  double v1 = std::abs(det(x1));
  double v2 = std::abs(det(x2));
  while (b - a > 1e-8 * std::max(1.0, std::abs(a))) {
    if (v1 < v2) {
      b = x2;
      x2 = x1;
      v2 = v1;
      x1 = b - golden * (b - a);
      v1 = std::abs(det(x1));
    } else {
      a = x1;
      x1 = x2;
      v1 = v2;
      x2 = a + golden * (b - a);
      v2 = std::abs(det(x2));
    }
  }
  const double valley = a + 0.5 * (b - a);

  // Accept only if the minimum is consistent with an actual zero.
  if (std::abs(det(valley)) >
      1e-14 * hadamard_scale_at(family, form, valley)) {
    throw domain_error("detJ2 does not vanish inside the bracket");
  }

  // An even-order root leaves the value quadratically flat, so refine on
  // the sign of the derivative instead; near the root detJ2' is linear
  // with a clean sign change the finite difference resolves reliably.
  const auto deriv = [&](double p) {
    const double h = 3e-6 * std::max(1.0, std::abs(p));
    return (det(p + h) - det(p - h)) / (2.0 * h);
  };

  double wa = valley, wb = valley;
  double da = 0.0, db = 0.0;
  double w = 1e-4 * std::max(1.0, std::abs(valley));
  bool bracketed = false;
  for (int attempt = 0; attempt < 40; ++attempt) {
    wa = std::max(lo, valley - w);
    wb = std::min(hi, valley + w);
    da = deriv(wa);
    db = deriv(wb);
    if ((da > 0.0) != (db > 0.0)) {
      bracketed = true;
      break;
    }
    w *= 2.0;
    if (wa == lo && wb == hi) break;
  }
  if (!bracketed) {
    throw convergence_error(
        "find_critical_mass: derivative sign does not bracket the root");
  }
  const bool sign_a = da > 0.0;
  while (wb - wa > 1e-12 * std::max(1.0, std::abs(wa))) {
    const double mid = wa + 0.5 * (wb - wa);
    if (mid <= wa || mid >= wb) break;
    const double dm = deriv(mid);
    if ((dm > 0.0) == sign_a) {
      wa = mid;
    } else {
      wb = mid;
    }
  }
  return wa + 0.5 * (wb - wa);
}

}  // namespace ccdeg
