#include "ncdq/report.hpp"

#include <cmath>

namespace ncdq {

void VerificationReport::add_case(std::string input, Complex expected, Complex got, double tol) {
  CheckCase c;
  c.input = std::move(input);
  c.expected = expected;
  c.got = got;
  c.abs_err = std::abs(expected - got);
  c.tol = tol;
  c.pass = c.abs_err <= tol;
  pass = pass && c.pass;
  cases.push_back(std::move(c));
}

void VerificationReport::add_bound_case(std::string input, double bound, double got) {
  CheckCase c;
  c.input = std::move(input);
  c.expected = bound;
  c.got = got;
  c.abs_err = std::max(0.0, got - bound);
  c.tol = 0;
  c.pass = got <= bound;
  pass = pass && c.pass;
  cases.push_back(std::move(c));
}

void VerificationReport::add_flag_case(std::string input, bool ok, std::string detail) {
  CheckCase c;
  c.input = std::move(input) + (detail.empty() ? "" : " [" + detail + "]");
  c.pass = ok;
  pass = pass && ok;
  cases.push_back(std::move(c));
}

void VerificationReport::merge(const VerificationReport& other) {
  for (const auto& c : other.cases) {
    cases.push_back(c);
    cases.back().input = other.check + ": " + cases.back().input;
  }
  pass = pass && other.pass;
}

std::size_t VerificationReport::failed_count() const {
  std::size_t k = 0;
  for (const auto& c : cases)
    if (!c.pass) ++k;
  return k;
}

}  // namespace ncdq
