#pragma once

#include "ncdq/states.hpp"

namespace ncdq {

// Certified two-sided bound for the deformed C*-norm ||a||_hbar.  lower is
// the norm of a compression of the twisted left regular representation
// (always a valid lower bound, non-decreasing in N); upper is the l1 bound,
// hbar-independent.
struct NormBracket {
  double lower = 0;
  double upper = 0;
  int N = 0;
};

// lower = sqrt(lambda_max(P_N pi(a)* pi(a) P_N)) by power iteration, with
// pi applied exactly on enlarged cubes before projecting back.  Requires
// N >= support_radius(a) so one convolution cannot escape the bookkeeping.
NormBracket norm_bracket(const DeformationData& data, const FourierElement& a, int N);

// The squared continuity constant c(hbar)^2 = (2 pi hbar)^n det(G)^{3/2}
// ||G_hbar||_S^2 with ||G_hbar||_S^2 = integral of G_hbar^2 in closed form
// (= sqrt(det G)/(2 pi hbar)^n).  Degenerates at hbar = 0, which is rejected.
double smoothing_norm_constant(const DeformationData& data);
double gauss_l2_closed_form(const DeformationData& data);

// Scalar profiles from a closed vocabulary so Lipschitz data is computable
// analytically.  `shift` composes: the profile is evaluated at hbar + shift.
struct Profile {
  enum class Kind { constant, polynomial, exp_decay };
  Kind kind = Kind::constant;
  std::vector<double> coeffs{1.0};  // constant value or polynomial coefficients
  double amp = 1.0, rate = 1.0;     // exp_decay: amp * exp(-rate * h)
  double shift = 0.0;

  static Profile constant(double c);
  static Profile polynomial(std::vector<double> coeffs);
  static Profile exp_decay(double amp, double rate);
  Profile shifted(double s) const;

  double value(double hbar) const;
  // sup |f| and sup |f'| over [lo, hi] (analytic bounds, not samples).
  double sup_bound(double lo, double hi) const;
  double slope_bound(double lo, double hi) const;
};

struct SectionTerm {
  Profile profile;
  FourierElement element;
};

// Field element hbar -> sum_t f_t(hbar) a_t with continuous profiles.
struct Section {
  int n = 1;
  std::vector<SectionTerm> terms;

  static Section constant(const FourierElement& a);
};

FourierElement evaluate_section(const Section& s, double hbar);

// Analytic Lipschitz constant of hbar -> omega_hbar(s(hbar)) on [lo, hi].
double section_state_lipschitz(const MomentState& state, const DeformationData& base,
                               const Section& s, double lo, double hi);

struct ScanRow {
  double hbar = 0;
  Complex value = 0;
  double diff_upper = 0;  // l1 distance of consecutive smoothed section values
};

struct ScanTable {
  std::vector<ScanRow> rows;
  double max_jump = 0;         // max |value_{i+1} - value_i|
  double max_jump_per_dh = 0;  // max |Delta value| / Delta hbar
  double lipschitz_bound = 0;  // analytic bound the jumps must respect
};

// (hbar, omega_hbar(s(hbar))) along the grid; the hbar = 0 row reuses the
// exact classical evaluation path, so it matches omega(s(0)) bit for bit.
ScanTable state_field_scan(const MomentState& state, const DeformationData& base, const Section& s,
                           const std::vector<double>& grid);

struct ContinuityScan {
  std::vector<double> hbars;
  std::vector<double> diffs;  // diffs[0] = 0; l1 norm of consecutive differences
  std::vector<FourierElement> smoothed;
};

// hbar -> smooth_hbar(s(hbar)) sampled along the grid; consecutive l1
// differences must shrink under refinement, including at the hbar = 0 end.
ContinuityScan smoothing_continuity_scan(const DeformationData& base, const Section& s,
                                         const std::vector<double>& grid);

// {0} followed by hbar_max * 2^{-j}, j = levels-1 .. 0.
std::vector<double> geometric_grid(double hbar_max, int levels);
// Midpoint insertion: every consecutive gap is halved (this is the refinement
// under which max jumps halve for C^1 sections).
std::vector<double> refine_grid(const std::vector<double>& grid);

// CSV emission: header hbar,re_value,im_value,diff_upper; 17 significant
// digits; LF line endings; byte-stable for identical inputs.
std::string scan_csv(const ScanTable& table);

}  // namespace ncdq
