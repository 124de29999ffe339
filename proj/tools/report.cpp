#include "report.hpp"

#include <ostream>

#include "ccdeg/number_io.hpp"
#include "ccdeg/residual.hpp"

namespace ccdeg::tool {

VerdictReport run_check(const ProblemFile& p, double tol, double det_tol) {
  VerdictReport r;
  r.input = p;
  MassVector m = p.mass_vector();
  PlanarConfiguration q = p.configuration();
  r.summary = scalar_summary(q, m);
  r.residual_norm =
      residual(p.form, q, m).lpNorm<Eigen::Infinity>();
  r.central = is_central_configuration(p.form, q, m, tol);
  if (!r.central) return r;
  ReductionReport red = reduce(p.form, q, m, det_tol);
  r.detJ2 = red.detJ2;
  r.zero_column_residual = red.zero_column_residual;
  r.pivot_rows = red.pivot_rows;
  r.verdict = red.verdict;
  return r;
}

void print_report(const VerdictReport& r, std::ostream& out) {
  out << "# ccdeg check report\n";
  if (r.central) {
    out << "# verdict " << verdict_name(r.verdict) << "\n";
    out << "# detJ2 " << format_double(r.detJ2) << "\n";
    out << "# pivot rows";
    for (int row : r.pivot_rows) out << ' ' << row;
    out << "\n";
    out << "# zero column residual "
        << format_double(r.zero_column_residual) << "\n";
  } else {
    out << "# verdict not a central configuration\n";
  }
  out << "# residual norm " << format_double(r.residual_norm) << "\n";
  out << "# potential " << format_double(r.summary.potential) << "\n";
  out << "# moment " << format_double(r.summary.moment) << "\n";
  out << "# center " << format_double(r.summary.center[0]) << ' '
      << format_double(r.summary.center[1]) << "\n";
  out << "# multiplier " << format_double(r.summary.multiplier) << "\n";
  emit_problem_file(r.input, out);
}

int report_exit_code(const VerdictReport& r) {
  if (!r.central) return 11;
  return r.verdict == Verdict::nondegenerate ? 0 : 10;
}

}  // namespace ccdeg::tool
