#include "problem_file.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "ccdeg/number_io.hpp"

namespace ccdeg::tool {

namespace {

std::string strip_comment(const std::string& line) {
  auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

std::vector<std::string> tokens_of(const std::string& line) {
  std::istringstream iss(line);
  std::vector<std::string> tokens;
  std::string tok;
  while (iss >> tok) tokens.push_back(tok);
  return tokens;
}

[[noreturn]] void fail(int line_number, const std::string& what) {
  throw precondition_error("problem file, line " +
                           std::to_string(line_number) + ": " + what);
}

double number_at(const std::vector<std::string>& tokens, std::size_t i,
                 int line_number) {
  try {
    return parse_double(tokens[i]);
  } catch (const precondition_error&) {
    fail(line_number, "cannot parse '" + tokens[i] + "' as a number");
  }
}

}  // namespace

ProblemFile parse_problem_file(std::istream& in) {
  ProblemFile p;
  bool saw_form = false;
  std::string raw;
  int line_number = 0;
  while (std::getline(in, raw)) {
    ++line_number;
    auto tokens = tokens_of(strip_comment(raw));
    if (tokens.empty()) continue;
    const std::string& key = tokens[0];
    if (key == "form") {
      if (tokens.size() != 2) fail(line_number, "form takes one tag");
      if (saw_form) fail(line_number, "duplicate form line");
      try {
        p.form = parse_form(tokens[1]);
      } catch (const precondition_error& e) {
        fail(line_number, e.what());
      }
      saw_form = true;
    } else if (key == "mass") {
      if (tokens.size() < 2) fail(line_number, "mass needs at least one value");
      for (std::size_t i = 1; i < tokens.size(); ++i)
        p.masses.push_back(number_at(tokens, i, line_number));
    } else if (key == "position") {
      if (tokens.size() != 3) fail(line_number, "position takes exactly x y");
      p.positions.push_back(number_at(tokens, 1, line_number));
      p.positions.push_back(number_at(tokens, 2, line_number));
    } else if (key == "tol" || key == "det_tol") {
      if (tokens.size() != 2) fail(line_number, key + " takes one value");
      auto& slot = key == "tol" ? p.tol : p.det_tol;
      if (slot) fail(line_number, "duplicate " + key + " line");
      double value = number_at(tokens, 1, line_number);
      if (!(value > 0)) fail(line_number, key + " must be positive");
      slot = value;
    } else {
      fail(line_number, "unknown key '" + key + "'");
    }
  }
  if (!saw_form) throw precondition_error("problem file: missing form line");
  if (p.masses.empty()) throw precondition_error("problem file: no masses");
  if (p.positions.size() != 2 * p.masses.size())
    throw precondition_error(
        "problem file: " + std::to_string(p.masses.size()) + " masses but " +
        std::to_string(p.positions.size() / 2) + " positions");
  return p;
}

ProblemFile load_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw precondition_error("cannot open '" + path + "'");
  try {
    return parse_problem_file(in);
  } catch (const precondition_error& e) {
    throw precondition_error(path + ": " + e.what());
  }
}

void emit_problem_file(const ProblemFile& p, std::ostream& out) {
  out << "form " << form_name(p.form) << "\n";
  out << "mass";
  for (double m : p.masses) out << ' ' << format_double(m);
  out << "\n";
  for (std::size_t i = 0; i + 1 < p.positions.size(); i += 2)
    out << "position " << format_double(p.positions[i]) << ' '
        << format_double(p.positions[i + 1]) << "\n";
  if (p.tol) out << "tol " << format_double(*p.tol) << "\n";
  if (p.det_tol) out << "det_tol " << format_double(*p.det_tol) << "\n";
}

}  // namespace ccdeg::tool
