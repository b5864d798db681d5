#include "ncdq/smoothing.hpp"

#include <cmath>
#include <numbers>

namespace ncdq {

namespace {

void check_dims(const DeformationData& data, const FourierElement& a, const char* where) {
  if (data.n() != a.n())
    throw DimensionMismatch(std::string(where) + ": deformation and element dimensions differ");
}

// T(M, X) = sum_{s > M} X^s / s!.  Terms are summed upward until they are
// negligible, then the remaining tail is dominated by a geometric series with
// ratio X/(s+1) < 1 — the closure keeps the value a true upper bound.
double tail_factor(int M, double X) {
  if (X <= 0) return 0;
  long double term = 1;
  for (int s = 1; s <= M + 1; ++s) term *= X / s;
  long double sum = 0;
  int s = M + 1;
  while (term > 0 && (X / (s + 1) >= 0.5 || term > 1e-300L)) {
    sum += term;
    ++s;
    term *= X / s;
    if (s > M + 100000) break;
  }
  const long double rho = X / (s + 1);
  sum += rho < 1 ? term / (1 - rho) : term * 1e30L;
  return static_cast<double>(sum);
}

}  // namespace

FourierElement smooth(const DeformationData& data, const FourierElement& a) {
  check_dims(data, a, "smooth");
  if (data.hbar() == 0.0) return a;
  FourierElement out(a.n());
  for (const auto& [k, c] : a.terms())
    out.set_coeff(k, c * std::exp(-data.hbar() * laplacian_symbol(data, k) / 4.0));
  return out;
}

VerificationReport smooth_derivative_check(const DeformationData& data, const FourierElement& a,
                                           double dh) {
  check_dims(data, a, "smooth_derivative_check");
  if (dh <= 0) throw ConfigError("smooth_derivative_check: dh must be positive");
  VerificationReport report;
  report.check = "smoothing flow solves the quarter-Laplacian heat equation";

  const FourierElement plus = smooth(data.with_hbar(data.hbar() + dh), a);
  const FourierElement minus = smooth(data.with_hbar(data.hbar() - dh), a);
  const FourierElement fd = (1.0 / (2.0 * dh)) * (plus - minus);
  const FourierElement closed = 0.25 * apply_laplacian(data, smooth(data, a));

  // Third-derivative bound for the central difference, coefficient by
  // coefficient: (dh^2/6) (lambda/4)^3 exp(-(hbar-dh) lambda/4).
  double bound = 1e-12;
  for (const auto& [k, c] : a.terms()) {
    const double lam = laplacian_symbol(data, k);
    bound += std::abs(c) * dh * dh / 6.0 * std::pow(lam / 4.0, 3) *
             std::exp(-(data.hbar() - dh) * lam / 4.0);
  }
  report.add_bound_case("l1(finite difference - quarter-laplacian) at dh=" + std::to_string(dh),
                        bound, l1_norm(fd - closed));
  return report;
}

FourierElement asymptotic_expansion(const DeformationData& data, const FourierElement& a, int R) {
  check_dims(data, a, "asymptotic_expansion");
  if (R < 0) throw ConfigError("asymptotic_expansion: R must be >= 0");
  FourierElement out(a.n());
  for (const auto& [k, c] : a.terms()) {
    const double x = -data.hbar() * laplacian_symbol(data, k) / 4.0;
    long double mult = 0, term = 1;
    for (int r = 0; r < R; ++r) {
      mult += term;
      term *= x / (r + 1);
    }
    out.set_coeff(k, c * static_cast<double>(mult));
  }
  return out;
}

double expansion_remainder_bound(const DeformationData& data, const FourierElement& a, int R) {
  check_dims(data, a, "expansion_remainder_bound");
  if (R < 0) throw ConfigError("expansion_remainder_bound: R must be >= 0");
  long double bound = 0;
  for (const auto& [k, c] : a.terms()) {
    const double x = data.hbar() * laplacian_symbol(data, k) / 4.0;
    long double term = 1;
    for (int r = 1; r <= R; ++r) term *= x / r;
    bound += std::abs(c) * term;
  }
  return static_cast<double>(bound);
}

WickCoefficient wick_coefficient(const DeformationData& data, const FourierElement& a,
                                 const std::vector<int>& L) {
  check_dims(data, a, "wick_coefficient");
  if (static_cast<int>(L.size()) != data.n())
    throw DimensionMismatch("wick_coefficient: moment index length must equal n");
  for (int lj : L)
    if (lj < 0) throw ConfigError("wick_coefficient: moment index must be nonnegative");

  WickCoefficient out{L, FourierElement(a.n())};
  const double hbar = data.hbar();
  for (const auto& [k, c] : a.terms()) {
    const Eigen::VectorXcd kap = data.frame().kappa(k);
    Complex mult = data.frame().abs_det * std::exp(-hbar * laplacian_symbol(data, k) / 4.0);
    for (int j = 0; j < data.n(); ++j) {
      const Complex factor = Complex(0, 0.5 * std::sqrt(hbar)) * kap[j];
      for (int r = 0; r < L[j]; ++r) mult *= factor;
    }
    out.element.add_coeff(k, c * mult);
  }
  return out;
}

WickSeriesResult wick_series(const DeformationData& data, const FourierElement& a,
                             SeriesTruncation trunc) {
  check_dims(data, a, "wick_series");
  if (trunc.Lmax < 0) throw ConfigError("wick_series: Lmax must be >= 0");

  const int n = data.n();
  const double hbar = data.hbar();
  FourierElement sum(n);
  for (const auto& L : multi_indices_up_to(n, trunc.Lmax)) {
    const FourierElement aL = wick_coefficient(data, a, L).element;
    double weight = 1;  // 2^{|L|}/L!
    for (int lj : L)
      for (int r = 1; r <= lj; ++r) weight *= 2.0 / r;
    sum += weight * multiply_undeformed(involution(aL), aL);
  }

  // Rigorous truncation tail: summing the coefficient-level bound over mode
  // pairs turns the multi-index tail into sum_{s > Lmax} X^s/s! per pair.
  const double absF = data.frame().abs_det;
  long double tail = 0;
  for (const auto& [k, ck] : a.terms()) {
    const Eigen::VectorXcd kapk = data.frame().kappa(k);
    const double damp_k = std::exp(-hbar * laplacian_symbol(data, k) / 4.0);
    for (const auto& [l, cl] : a.terms()) {
      const Eigen::VectorXcd kapl = data.frame().kappa(l);
      double X = 0;
      for (int j = 0; j < n; ++j) X += 0.5 * hbar * std::abs(kapk[j]) * std::abs(kapl[j]);
      const double damp_l = std::exp(-hbar * laplacian_symbol(data, l) / 4.0);
      tail += std::abs(ck) * std::abs(cl) * absF * absF * damp_k * damp_l *
              tail_factor(trunc.Lmax, X);
    }
  }
  trunc.tail_bound = static_cast<double>(tail);

  WickSeriesResult result{sum, trunc, {}};
  result.report.check = "hermitian square expansion of the smoothed star square";
  const FourierElement direct = smooth(data, star_product(data, involution(a), a));
  result.report.add_bound_case(
      "l1(smoothed star square - series truncated at " + std::to_string(trunc.Lmax) + ")",
      trunc.tail_bound + 1e-10, l1_norm(direct - sum));
  result.report.add_flag_case("truncated series is hermitian", sum.is_hermitian(1e-12));
  return result;
}

std::pair<FourierElement, FourierElement> leading_order_split(const DeformationData& data,
                                                              const FourierElement& a) {
  check_dims(data, a, "leading_order_split");
  const double det_g = data.g().det();
  const FourierElement sa = smooth(data, a);
  FourierElement leading =
      Complex(1.0 / det_g, 0) * multiply_undeformed(involution(sa), sa);
  const FourierElement direct = smooth(data, star_product(data, involution(a), a));
  return {leading, direct - leading};
}

double gauss_value(const DeformationData& data, const std::vector<double>& v) {
  if (static_cast<int>(v.size()) != 2 * data.n())
    throw DimensionMismatch("gauss_value: point dimension must be 2n");
  if (data.hbar() <= 0) throw ConfigError("gauss_value: requires hbar > 0");
  Eigen::VectorXd x(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) x[i] = v[i];
  const double quad = x.dot(data.g().matrix() * x);
  return std::sqrt(data.g().det()) / std::pow(std::numbers::pi * data.hbar(), data.n()) *
         std::exp(-quad / data.hbar());
}

VerificationReport star_root_check(const DeformationData& data,
                                   const std::vector<std::vector<double>>& sample_points,
                                   const QuadratureConfig& cfg) {
  if (data.n() != 1) throw ConfigError("star_root_check: oracle path requires n = 1");
  VerificationReport report;
  report.check = "normalized Gaussian reproduces itself under the deformed product";
  const double scale =
      std::pow(2 * std::numbers::pi * data.hbar(), -data.n()) / std::sqrt(data.g().det());
  for (const auto& w : sample_points) {
    Integrand task{Integrand::Kind::gauss_star_gauss, data, {}, {}, {}, w, 0};
    const IntegralResult r = integrate(task, cfg);
    const double expected = scale * gauss_value(data, w);
    std::string label = "w=(";
    for (std::size_t i = 0; i < w.size(); ++i)
      label += (i ? "," : "") + std::to_string(w[i]);
    label += ")";
    report.add_case(label, Complex(expected, 0), r.value,
                    std::max(1e-8, 1e-6 * std::abs(expected)));
    report.add_flag_case(label + " quadrature converged", r.converged);
  }
  return report;
}

}  // namespace ncdq
