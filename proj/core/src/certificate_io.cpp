#include <istream>
#include <ostream>
#include <sstream>

#include "ccdeg/certifier.hpp"
#include "ccdeg/number_io.hpp"

namespace ccdeg {

namespace {

constexpr const char* kHeader = "ccdeg-certificate v1";

void put_interval(std::ostream& out, const Interval& v) {
  out << format_double(v.lo) << ' ' << format_double(v.hi);
}

std::string one_line(std::string text) {
  for (char& c : text) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return text;
}

struct LineReader {
  std::istream& in;
  int line_number = 0;

  bool next(std::string& line) {
    while (std::getline(in, line)) {
      ++line_number;
      if (!line.empty()) return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw precondition_error("certificate line " + std::to_string(line_number) +
                             ": " + what);
  }
};

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) tokens.push_back(tok);
  return tokens;
}

}  // namespace

void write_certificate(const Certificate& cert, std::ostream& out) {
  out << kHeader << '\n';
  out << "family rhombus form III\n";
  out << "range ";
  put_interval(out, cert.range);
  out << '\n';
  out << "max_depth " << cert.max_depth << '\n';
  out << "status "
      << (cert.status == Certificate::Status::certified ? "certified"
                                                        : "failed")
      << '\n';
  if (!cert.failure_reason.empty()) {
    out << "failure_reason " << one_line(cert.failure_reason) << '\n';
  }
  if (cert.failure) {
    out << "failure_box ";
    put_interval(out, cert.failure->box);
    out << ' ';
    put_interval(out, cert.failure->value);
    out << ' ' << cert.failure->depth << '\n';
  }
  out << "leaves " << cert.leaves.size() << '\n';
  for (const auto& leaf : cert.leaves) {
    out << "leaf ";
    put_interval(out, leaf.box);
    out << ' ';
    put_interval(out, leaf.value);
    out << ' ' << leaf.depth << '\n';
  }
  if (cert.regime_b) {
    const RegimeB& rb = *cert.regime_b;
    out << "regime_b begin\n";
    out << "box ";
    put_interval(out, rb.box);
    out << '\n';
    out << "g_coeffs " << rb.g.coeffs.size() << '\n';
    for (std::size_t k = 0; k < rb.g.coeffs.size(); ++k) {
      out << "g " << k << ' ';
      put_interval(out, rb.g.coeffs[k]);
      out << '\n';
    }
    out << "mass_threshold " << format_double(rb.mass_threshold) << '\n';
    out << "m1_at_right ";
    put_interval(out, rb.m1_at_right);
    out << '\n';
    out << "dm1_numerator ";
    put_interval(out, rb.witness.numerator);
    out << '\n';
    out << "den_slope ";
    put_interval(out, rb.witness.den_slope);
    out << '\n';
    out << "den_at_right ";
    put_interval(out, rb.witness.den_at_right);
    out << '\n';
    out << "tail_positive " << (rb.tail_ok ? "true" : "false") << '\n';
    out << "regime_b end\n";
  }
}

Certificate read_certificate(std::istream& in) {
  LineReader reader{in};
  std::string line;

  if (!reader.next(line) || line != kHeader) {
    reader.fail("missing certificate header");
  }
  if (!reader.next(line) || line != "family rhombus form III") {
    reader.fail("unexpected family line");
  }

  Certificate cert;
  const auto expect = [&](const char* key, std::size_t count) {
    if (!reader.next(line)) reader.fail(std::string("expected ") + key);
    auto tokens = split(line);
    if (tokens.empty() || tokens[0] != key || tokens.size() != count + 1) {
      reader.fail(std::string("expected '") + key + "' with " +
                  std::to_string(count) + " fields, got '" + line + "'");
    }
    return tokens;
  };

  auto tokens = expect("range", 2);
  cert.range = Interval(parse_double(tokens[1]), parse_double(tokens[2]));
  tokens = expect("max_depth", 1);
  cert.max_depth = static_cast<int>(parse_long(tokens[1]));
  tokens = expect("status", 1);
  if (tokens[1] == "certified") {
    cert.status = Certificate::Status::certified;
  } else if (tokens[1] == "failed") {
    cert.status = Certificate::Status::failed;
  } else {
    reader.fail("unknown status '" + tokens[1] + "'");
  }

  if (!reader.next(line)) reader.fail("truncated certificate");
  auto head = split(line);
  if (head[0] == "failure_reason") {
    cert.failure_reason = line.substr(std::string("failure_reason ").size());
    if (!reader.next(line)) reader.fail("truncated certificate");
    head = split(line);
  }
  if (head[0] == "failure_box") {
    if (head.size() != 6) reader.fail("failure_box wants 5 fields");
    cert.failure = CertificateLeaf{
        Interval(parse_double(head[1]), parse_double(head[2])),
        Interval(parse_double(head[3]), parse_double(head[4])),
        static_cast<int>(parse_long(head[5]))};
    if (!reader.next(line)) reader.fail("truncated certificate");
    head = split(line);
  }

  if (head[0] != "leaves" || head.size() != 2) reader.fail("expected leaf count");
  const long n_leaves = parse_long(head[1]);
  cert.leaves.reserve(static_cast<std::size_t>(n_leaves));
  for (long i = 0; i < n_leaves; ++i) {
    tokens = expect("leaf", 5);
    cert.leaves.push_back(CertificateLeaf{
        Interval(parse_double(tokens[1]), parse_double(tokens[2])),
        Interval(parse_double(tokens[3]), parse_double(tokens[4])),
        static_cast<int>(parse_long(tokens[5]))});
  }

  if (!reader.next(line)) return cert;  // no regime-B block
  if (line != "regime_b begin") reader.fail("expected regime_b block");

  tokens = expect("box", 2);
  RegimeB rb{Interval(parse_double(tokens[1]), parse_double(tokens[2])),
             IntervalPoly({Interval(0.0)}),
             0.0,
             Interval(0.0),
             {},
             false};
  tokens = expect("g_coeffs", 1);
  const long n_coeffs = parse_long(tokens[1]);
  if (n_coeffs < 1) reader.fail("empty coefficient list");
  std::vector<Interval> coeffs;
  coeffs.reserve(static_cast<std::size_t>(n_coeffs));
  for (long k = 0; k < n_coeffs; ++k) {
    tokens = expect("g", 3);
    if (parse_long(tokens[1]) != k) reader.fail("coefficient index mismatch");
    coeffs.emplace_back(parse_double(tokens[2]), parse_double(tokens[3]));
  }
  rb.g = IntervalPoly(std::move(coeffs));
  tokens = expect("mass_threshold", 1);
  rb.mass_threshold = parse_double(tokens[1]);
  tokens = expect("m1_at_right", 2);
  rb.m1_at_right = Interval(parse_double(tokens[1]), parse_double(tokens[2]));
  tokens = expect("dm1_numerator", 2);
  rb.witness.numerator =
      Interval(parse_double(tokens[1]), parse_double(tokens[2]));
  tokens = expect("den_slope", 2);
  rb.witness.den_slope =
      Interval(parse_double(tokens[1]), parse_double(tokens[2]));
  tokens = expect("den_at_right", 2);
  rb.witness.den_at_right =
      Interval(parse_double(tokens[1]), parse_double(tokens[2]));
  tokens = expect("tail_positive", 1);
  if (tokens[1] == "true") {
    rb.tail_ok = true;
  } else if (tokens[1] == "false") {
    rb.tail_ok = false;
  } else {
    reader.fail("tail_positive wants true or false");
  }
  cert.regime_b = std::move(rb);

  if (!reader.next(line) || line != "regime_b end") {
    reader.fail("unterminated regime_b block");
  }
  return cert;
}

}  // namespace ccdeg
