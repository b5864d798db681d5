#pragma once

#include <string>
#include <vector>

#include "ncdq/lattice_algebra.hpp"

namespace ncdq {

struct CheckCase {
  std::string input;  // human-readable description of the case
  Complex expected = 0;
  Complex got = 0;
  double abs_err = 0;
  double tol = 0;
  bool pass = false;
};

struct VerificationReport {
  std::string check;
  std::vector<CheckCase> cases;
  bool pass = true;

  // abs_err = |expected - got|, pass iff abs_err <= tol.
  void add_case(std::string input, Complex expected, Complex got, double tol);
  // For one-sided bounds: pass iff got <= bound (within slack already folded
  // into bound by the caller).  abs_err records the overshoot, 0 if none.
  void add_bound_case(std::string input, double bound, double got);
  void add_flag_case(std::string input, bool ok, std::string detail = "");
  void merge(const VerificationReport& other);

  std::size_t failed_count() const;
};

}  // namespace ncdq
