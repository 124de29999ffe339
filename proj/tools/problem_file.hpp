#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ccdeg/types.hpp"

namespace ccdeg::tool {

// One verdict problem as read from a structured text file.  The format
// is line oriented: `form I|II|III`, `mass m1 m2 ...`, one `position x y`
// per body, optional `tol T` and `det_tol T`.  `#` starts a comment,
// blank lines are skipped, keys may repeat only where noted in
// docs/formats.md.  All numbers are locale-independent decimals.
struct ProblemFile {
  Form form = Form::I;
  std::vector<double> masses;
  std::vector<double> positions;  // interleaved x1 y1 ... xN yN
  std::optional<double> tol;      // membership tolerance override
  std::optional<double> det_tol;  // verdict threshold override

  MassVector mass_vector() const { return MassVector(masses); }
  PlanarConfiguration configuration() const {
    return PlanarConfiguration(positions);
  }
};

// Throws precondition_error with a line number on malformed input.
// Counts agree on return: one mass per position pair, form tag present.
// Positivity and collision checks are deferred to MassVector /
// evaluation so their diagnostics stay in one place.
ProblemFile parse_problem_file(std::istream& in);

// parse_problem_file on the named file; the message carries the path.
ProblemFile load_problem_file(const std::string& path);

// Inverse of parse_problem_file.  Numbers are written shortest
// round-trip, so parse(emit(p)) reproduces p bit for bit.
void emit_problem_file(const ProblemFile& p, std::ostream& out);

}  // namespace ccdeg::tool
