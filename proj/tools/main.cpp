#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "ccdeg/certifier.hpp"
#include "ccdeg/families.hpp"
#include "ccdeg/number_io.hpp"
#include "ccdeg/reduction.hpp"
#include "ccdeg/residual.hpp"
#include "problem_file.hpp"
#include "report.hpp"

// Exit codes, kept stable for scripts:
//   0  nondegenerate / success
//   1  input error (bad file, bad flags, unwritable output)
//  10  degenerate
//  11  not a central configuration
//  20  certification failure
namespace {

using namespace ccdeg;
using tool::ProblemFile;

int run_check(const std::string& path, const std::string& form_flag,
              std::optional<double> tol_flag) {
  ProblemFile p = tool::load_problem_file(path);
  if (!form_flag.empty()) p.form = parse_form(form_flag);
  double tol = tol_flag ? *tol_flag : p.tol.value_or(1e-8);
  double det_tol = p.det_tol.value_or(1e-8);
  tool::VerdictReport report = tool::run_check(p, tol, det_tol);
  tool::print_report(report, std::cout);
  return tool::report_exit_code(report);
}

Family parse_family(const std::string& text) {
  if (text == "rhombus") return Family::rhombus;
  if (text == "triangle-center" || text == "triangle_center")
    return Family::triangle_center;
  throw precondition_error("unknown family '" + text +
                           "' (expected rhombus or triangle-center)");
}

int run_scan(const std::string& family_flag, const std::string& form_flag,
             double from, double to, int steps, const std::string& out_path) {
  Family family = parse_family(family_flag);
  Form form = parse_form(form_flag);
  std::ofstream out(out_path);
  if (!out) throw precondition_error("cannot open '" + out_path + "'");
  auto points = family_scan(family, form, {from, to}, steps);
  out << "param,detJ2,verdict\n";
  for (const auto& pt : points) {
    out << format_double(pt.parameter) << ',';
    if (pt.detJ2) out << format_double(*pt.detJ2);
    out << ',';
    out << (pt.ok() ? verdict_name(*pt.verdict) : pt.flag.c_str());
    out << '\n';
  }
  if (!out) throw precondition_error("write failed on '" + out_path + "'");
  std::cout << "wrote " << points.size() << " rows to " << out_path << "\n";
  return 0;
}

int run_certify_rhombus(int max_depth, const std::string& out_path) {
  std::ofstream out(out_path);
  if (!out) throw precondition_error("cannot open '" + out_path + "'");
  CertifyOptions options;
  options.max_depth = max_depth;
  Certificate cert = certify_rhombus_nondegeneracy(options);
  write_certificate(cert, out);
  if (!out) throw precondition_error("write failed on '" + out_path + "'");

  double min_lower = 0;
  int deepest = 0;
  if (!cert.leaves.empty()) {
    min_lower = cert.leaves.front().value.lo;
    for (const auto& leaf : cert.leaves) {
      min_lower = std::min(min_lower, leaf.value.lo);
      deepest = std::max(deepest, leaf.depth);
    }
  }
  std::cout << "direct range: " << cert.leaves.size()
            << " certified leaves, deepest " << deepest
            << ", smallest lower bound " << format_double(min_lower) << "\n";
  if (cert.regime_b) {
    const auto& rb = *cert.regime_b;
    std::cout << "pole sliver: tail "
              << (rb.tail_ok ? "positive" : "not established")
              << " at threshold " << format_double(rb.mass_threshold)
              << ", mass lower bound " << format_double(rb.m1_at_right.lo)
              << ", monotonicity "
              << (rb.witness.valid() ? "certified" : "not established")
              << "\n";
  }
  if (cert.status == Certificate::Status::certified) {
    std::cout << "status: certified\n";
    std::cout << "certificate written to " << out_path << "\n";
    return 0;
  }
  std::cout << "status: failed (" << cert.failure_reason << ")\n";
  if (cert.failure)
    std::cout << "failing box [" << format_double(cert.failure->box.lo)
              << ", " << format_double(cert.failure->box.hi) << "]\n";
  std::cout << "certificate written to " << out_path << "\n";
  return 20;
}

int run_eig(const std::string& path) {
  ProblemFile p = tool::load_problem_file(path);
  MassVector m = p.mass_vector();
  PlanarConfiguration q = p.configuration();
  auto spectrum = jacobian_spectrum(p.form, q, m);
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    std::cout << "eigenvalue " << i << ": "
              << format_double(spectrum[i].real()) << ' '
              << format_double(spectrum[i].imag()) << "  modulus "
              << format_double(std::abs(spectrum[i])) << "\n";
  }
  int zeros = count_near_zero(spectrum);
  std::cout << "near-zero eigenvalues: " << zeros << " of "
            << spectrum.size() << " (relative threshold 1e-09)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"degeneracy verdicts for planar central configurations"};
  app.require_subcommand(1);

  std::string check_path, check_form;
  std::optional<double> check_tol;
  auto* check = app.add_subcommand(
      "check", "classify one configuration from a problem file");
  check->add_option("file", check_path, "problem file")->required();
  check->add_option("--form", check_form, "override the form tag (I, II, III)");
  check->add_option("--tol", check_tol, "membership tolerance");

  std::string scan_family, scan_form, scan_out;
  double scan_from = 0, scan_to = 0;
  int scan_steps = 0;
  auto* scan = app.add_subcommand(
      "scan", "sweep detJ2 along a family, writing CSV");
  scan->add_option("--family", scan_family, "rhombus or triangle-center")
      ->required();
  scan->add_option("--form", scan_form, "I, II or III")->required();
  scan->add_option("--from", scan_from, "range start")->required();
  scan->add_option("--to", scan_to, "range end")->required();
  scan->add_option("--steps", scan_steps, "sample count, at least 2")
      ->required();
  scan->add_option("--out", scan_out, "output CSV path")->required();

  int certify_depth = 42;
  std::string certify_out;
  auto* certify = app.add_subcommand(
      "certify-rhombus",
      "certified positivity of detJ2 along the rhombus family");
  certify->add_option("--max-depth", certify_depth, "bisection depth limit");
  certify->add_option("--out", certify_out, "certificate path")->required();

  std::string eig_path;
  auto* eig = app.add_subcommand(
      "eig", "full Jacobian spectrum with the trivial zeros flagged");
  eig->add_option("file", eig_path, "problem file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*check) return run_check(check_path, check_form, check_tol);
    if (*scan)
      return run_scan(scan_family, scan_form, scan_from, scan_to, scan_steps,
                      scan_out);
    if (*certify) return run_certify_rhombus(certify_depth, certify_out);
    if (*eig) return run_eig(eig_path);
  } catch (const not_central_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::cerr << "residual norm " << format_double(e.residual_norm) << "\n";
    return 11;
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
