#pragma once

#include <iosfwd>
#include <vector>

#include "ccdeg/reduction.hpp"
#include "ccdeg/types.hpp"
#include "problem_file.hpp"

namespace ccdeg::tool {

// Everything cmd_check prints: the scalar summary, the membership
// residual, and (when the configuration passes membership) the reduced
// determinant with its verdict.
struct VerdictReport {
  ProblemFile input;  // echo of the problem actually evaluated
  ScalarSummary summary{};
  double residual_norm = 0;
  bool central = false;
  // Valid only when central:
  double detJ2 = 0;
  double zero_column_residual = 0;
  std::vector<int> pivot_rows;
  Verdict verdict = Verdict::uncertain;
};

// Evaluates the problem.  tol gates membership, det_tol the verdict.
VerdictReport run_check(const ProblemFile& p, double tol, double det_tol);

// Writes the report with every diagnostic line behind a `#`, followed by
// the input echo, so the whole report is itself a valid problem file:
// feeding it back through cmd_check re-parses to identical values.
void print_report(const VerdictReport& r, std::ostream& out);

// 0 nondegenerate, 10 degenerate, 11 not a central configuration.
int report_exit_code(const VerdictReport& r);

}  // namespace ccdeg::tool
