#include "ccdeg/reduction.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace ccdeg {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::nondegenerate: return "nondegenerate";
    case Verdict::degenerate: return "degenerate";
    case Verdict::uncertain: return "uncertain";
  }
  return "?";
}

SymmetryBasis symmetry_generators(Form form, const PlanarConfiguration& q) {
  const std::size_t n = q.size();
  const auto translation_x = [&] {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(2 * n);
    for (std::size_t i = 0; i < n; ++i) v[2 * i] = 1.0;
    return v;
  };
  const auto translation_y = [&] {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(2 * n);
    for (std::size_t i = 0; i < n; ++i) v[2 * i + 1] = 1.0;
    return v;
  };
  const auto rotation = [&] {
    Eigen::VectorXd v(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      v[2 * i] = -q.y(i);
      v[2 * i + 1] = q.x(i);
    }
    return v;
  };
  const auto scaling = [&] {
    Eigen::VectorXd v(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      v[2 * i] = q.x(i);
      v[2 * i + 1] = q.y(i);
    }
    return v;
  };

  SymmetryBasis basis;
  using Kind = SymmetryBasis::Kind;
  switch (form) {
    case Form::I:
      basis.generators = {rotation(), scaling()};
      basis.kinds = {Kind::rotation, Kind::scaling};
      break;
    case Form::II:
      basis.generators = {translation_x(), translation_y(), rotation()};
      basis.kinds = {Kind::translation_x, Kind::translation_y, Kind::rotation};
      break;
    case Form::III:
      basis.generators = {translation_x(), translation_y(), rotation(),
                          scaling()};
      basis.kinds = {Kind::translation_x, Kind::translation_y, Kind::rotation,
                     Kind::scaling};
      break;
  }

  Eigen::MatrixXd g(2 * n, basis.count());
  for (int c = 0; c < basis.count(); ++c) g.col(c) = basis.generators[c];
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(g);
  if (qr.rank() < basis.count()) {
    throw degenerate_basis_error(
        "symmetry generators are rank deficient for this configuration");
  }
  return basis;
}

PFactors build_P(const SymmetryBasis& basis, std::size_t n_bodies) {
  const int dim = static_cast<int>(2 * n_bodies);
  const int k = basis.count();
  if (k <= 0 || k >= dim) {
    throw precondition_error("symmetry count must lie strictly between 0 and 2N");
  }
  Eigen::MatrixXd g(dim, k);
  for (int c = 0; c < k; ++c) {
    if (basis.generators[c].size() != dim) {
      throw precondition_error("generator length does not match configuration");
    }
    g.col(c) = basis.generators[c];
  }

  // Greedy in-order pivot selection on the rows of the generator matrix:
  // keep a row when its component orthogonal to the rows already kept is
  // non-negligible.  Earlier rows therefore win whenever they span.
  std::vector<int> pivots;
  std::vector<Eigen::VectorXd> ortho;
  for (int r = 0; r < dim && static_cast<int>(pivots.size()) < k; ++r) {
    Eigen::VectorXd w = g.row(r).transpose();
    const double scale = std::max(1.0, w.norm());
    for (const auto& e : ortho) w -= e.dot(w) * e;
    if (w.norm() > 1e-10 * scale) {
      pivots.push_back(r);
      ortho.push_back(w.normalized());
    }
  }
  if (static_cast<int>(pivots.size()) < k) {
    throw degenerate_basis_error(
        "no invertible pivot block in the symmetry generators");
  }

  PFactors f;
  f.pivot_rows = pivots;
  f.P = Eigen::MatrixXd::Zero(dim, dim);
  f.P.leftCols(k) = g;
  int col = k;
  for (int r = 0; r < dim; ++r) {
    if (std::find(pivots.begin(), pivots.end(), r) != pivots.end()) continue;
    f.P(r, col) = 1.0;
    ++col;
  }
  f.P_inverse = f.P.partialPivLu().inverse();
  const double defect =
      (f.P * f.P_inverse - Eigen::MatrixXd::Identity(dim, dim))
          .cwiseAbs()
          .maxCoeff();
  if (!(defect < 1e-8)) {
    throw degenerate_basis_error("change of basis failed to invert cleanly");
  }
  return f;
}

Eigen::MatrixXd normalized_jacobian(Form form, const PlanarConfiguration& q,
                                    const MassVector& m) {
  Eigen::MatrixXd J = jacobian_analytic(form, q, m);
  if (form == Form::I) {
    return std::sqrt(moment_of_inertia(q, m) / 2.0) * J;
  }
  for (std::size_t i = 0; i < m.size(); ++i) {
    J.row(2 * i) /= m[i];
    J.row(2 * i + 1) /= m[i];
  }
  return J;
}

namespace {

ReductionReport reduce_impl(Form form, const PlanarConfiguration& q,
                            const MassVector& m, double det_tol) {
  if (!(det_tol > 0.0)) {
    throw precondition_error("determinant threshold must be positive");
  }
  if (!is_central_configuration(form, q, m)) {
    const double norm =
        residual(form, q, m).lpNorm<Eigen::Infinity>();
    throw not_central_error(
        "not a central configuration (residual norm " + std::to_string(norm) +
            "); refusing to classify",
        norm);
  }

  const SymmetryBasis basis = symmetry_generators(form, q);
  const int k = basis.count();
  PFactors f = build_P(basis, q.size());
  const Eigen::MatrixXd J = normalized_jacobian(form, q, m);
  const int dim = static_cast<int>(J.rows());

  ReductionReport rep;
  rep.P = std::move(f.P);
  rep.P_inverse = std::move(f.P_inverse);
  rep.pivot_rows = std::move(f.pivot_rows);
  rep.conjugated = rep.P_inverse * J * rep.P;
  rep.J2 = rep.conjugated.bottomRightCorner(dim - k, dim - k);
  rep.detJ2 = rep.J2.determinant();
  rep.zero_column_residual =
      rep.conjugated.leftCols(k).cwiseAbs().maxCoeff();

  const double jnorm = J.cwiseAbs().maxCoeff();
  if (!(rep.zero_column_residual <= 1e-8 * std::max(1.0, jnorm))) {
    throw error("symmetry columns of the conjugated Jacobian failed to vanish");
  }

  // Comparison scale for the verdict: the reduced block taken on an
  // orthonormal basis of the complement of the generator span, measured
  // in Frobenius norm.  AM-GM over singular values makes
  // (frob / sqrt(n2))^n2 a Hadamard-type upper bound on |detJ2|, and
  // that block conjugates orthogonally when the configuration rotates
  // or reflects, so the verdict cannot drift with orientation the way
  // row norms of the P-conjugated block do.  P itself stays exactly as
  // the propositions write it; only the threshold uses this frame.
  Eigen::MatrixXd g(dim, k);
  for (int c = 0; c < k; ++c) g.col(c) = basis.generators[c];
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  const Eigen::MatrixXd q_full = qr.householderQ();
  const int n2 = dim - k;
  const Eigen::MatrixXd complement = q_full.rightCols(n2);
  const double frob = (complement.transpose() * J * complement).norm();
  const double scale =
      std::pow(std::max(frob, 1e-300) / std::sqrt(double(n2)), n2);
  rep.verdict = std::abs(rep.detJ2) > det_tol * scale
                    ? Verdict::nondegenerate
                    : Verdict::degenerate;
  return rep;
}

}  // namespace

ReductionReport reduce(Form form, const PlanarConfiguration& q,
                       const MassVector& m, double det_tol) {
  return reduce_impl(form, q, m, det_tol);
}

ReductionReport degeneracy_verdict(Form form, const PlanarConfiguration& q,
                                   const MassVector& m, double det_tol) {
  return reduce_impl(form, q, m, det_tol);
}

std::vector<std::complex<double>> jacobian_spectrum(
    Form form, const PlanarConfiguration& q, const MassVector& m) {
  const Eigen::MatrixXd J = normalized_jacobian(form, q, m);
  Eigen::EigenSolver<Eigen::MatrixXd> solver(J, false);
  if (solver.info() != Eigen::Success) {
    throw error("eigenvalue iteration failed to converge");
  }
  std::vector<std::complex<double>> ev(solver.eigenvalues().data(),
                                       solver.eigenvalues().data() +
                                           solver.eigenvalues().size());
  std::sort(ev.begin(), ev.end(), [](const auto& a, const auto& b) {
    const double ma = std::abs(a), mb = std::abs(b);
    if (ma != mb) return ma < mb;
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return ev;
}

int count_near_zero(const std::vector<std::complex<double>>& spectrum,
                    double rel_tol) {
  if (spectrum.empty()) return 0;
  double radius = 0.0;
  for (const auto& ev : spectrum) radius = std::max(radius, std::abs(ev));
  if (radius == 0.0) return static_cast<int>(spectrum.size());
  int count = 0;
  for (const auto& ev : spectrum) {
    if (std::abs(ev) <= rel_tol * radius) ++count;
  }
  return count;
}

}  // namespace ccdeg
