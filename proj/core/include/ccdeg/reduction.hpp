#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "ccdeg/jacobian.hpp"
#include "ccdeg/types.hpp"

namespace ccdeg {

enum class Verdict { nondegenerate, degenerate, uncertain };

const char* verdict_name(Verdict v);

// Infinitesimal symmetries of the residual at a configuration, in the
// fixed order translation_x, translation_y, rotation, scaling, restricted
// to the symmetries the form actually has (see symmetry_count).  The
// rotation generator has blocks (-y_i, x_i); the scaling generator is q
// itself.
struct SymmetryBasis {
  enum class Kind { translation_x, translation_y, rotation, scaling };
  std::vector<Eigen::VectorXd> generators;
  std::vector<Kind> kinds;
  int count() const { return static_cast<int>(generators.size()); }
};

SymmetryBasis symmetry_generators(Form form, const PlanarConfiguration& q);

// Change of basis whose first k columns are the symmetry generators and
// whose remaining columns are standard basis vectors on the non-pivot
// rows.  Pivot rows are chosen greedily in row order: a row is accepted
// when it is linearly independent (within tolerance) of the rows already
// accepted, so the leading rows win whenever they can.
struct PFactors {
  Eigen::MatrixXd P;
  Eigen::MatrixXd P_inverse;
  std::vector<int> pivot_rows;  // zero-based, ascending
};

PFactors build_P(const SymmetryBasis& basis, std::size_t n_bodies);

// Jacobian with the row normalization under which the reduced
// determinants below are reported.  Forms II and III divide each body
// row by its mass (the per-unit-mass residual); Form I scales the whole
// matrix by sqrt(I/2), the linearization scale of the gradient of
// sqrt(I/2) U.  Row scaling leaves kernels, column relations, and
// verdicts unchanged; it only fixes the determinant normalization.
Eigen::MatrixXd normalized_jacobian(Form form, const PlanarConfiguration& q,
                                    const MassVector& m);

struct ReductionReport {
  Eigen::MatrixXd P;
  Eigen::MatrixXd P_inverse;
  Eigen::MatrixXd conjugated;  // P^-1 J P, full size
  Eigen::MatrixXd J2;          // trailing (2N - k) x (2N - k) block
  double detJ2;
  double zero_column_residual;  // largest |entry| in the first k columns
  std::vector<int> pivot_rows;
  Verdict verdict;
};

// Conjugates the normalized Jacobian by P.  The symmetry columns of the
// result must vanish (they are checked, not assumed).  The verdict
// compares |detJ2| against det_tol times a Hadamard-type bound,
// (frob / sqrt(n2))^n2 with frob the Frobenius norm of the reduced
// block on an orthonormal completion, so it is invariant under
// rescaling, rotating, and reflecting the configuration.
// Throws not_central_error when q fails the membership test.
ReductionReport reduce(Form form, const PlanarConfiguration& q,
                       const MassVector& m, double det_tol = 1e-8);

// reduce with an explicit threshold, kept as a separate name so call
// sites that only care about the classification read naturally.
ReductionReport degeneracy_verdict(Form form, const PlanarConfiguration& q,
                                   const MassVector& m, double det_tol);

// Eigenvalues of the normalized Jacobian, sorted by modulus then real
// then imaginary part.  Diagnostic only: the k symmetry eigenvalues sit
// at zero, so a (2N - k + 1)-th small eigenvalue signals degeneracy.
std::vector<std::complex<double>> jacobian_spectrum(Form form,
                                                    const PlanarConfiguration& q,
                                                    const MassVector& m);

// Number of eigenvalues with |lambda| <= rel_tol times the spectral
// radius.
int count_near_zero(const std::vector<std::complex<double>>& spectrum,
                    double rel_tol = 1e-9);

}  // namespace ccdeg
