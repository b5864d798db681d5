#include "ncdq/star_product.hpp"

#include <cmath>

namespace ncdq {

TwistCocycle::TwistCocycle(const DeformationData& data)
    : dual_(data.theta().dual()), hbar_(data.hbar()) {}

double TwistCocycle::angle(const LatticeIndex& k, const LatticeIndex& l) const {
  if (k.size() != static_cast<std::size_t>(dual_.rows()) || l.size() != k.size())
    throw DimensionMismatch("lattice index has wrong length");
  double b = 0;
  for (std::size_t i = 0; i < k.size(); ++i) {
    double row = 0;
    for (std::size_t j = 0; j < l.size(); ++j) row += dual_(i, j) * l[j];
    b += k[i] * row;
  }
  return -0.5 * hbar_ * b;
}

Complex TwistCocycle::phase(const LatticeIndex& k, const LatticeIndex& l) const {
  if (hbar_ == 0) return 1.0;
  return std::polar(1.0, angle(k, l));
}

FourierElement star_product(const DeformationData& data, const FourierElement& a,
                            const FourierElement& b) {
  if (a.n() != b.n() || a.n() != data.n())
    throw DimensionMismatch("product operands/geometry dimension mismatch");
  if (data.hbar() == 0) return multiply_undeformed(a, b);

  const TwistCocycle sigma(data);
  std::map<LatticeIndex, std::complex<long double>> acc;
  for (const auto& [k, ca] : a.terms()) {
    for (const auto& [l, cb] : b.terms()) {
      const long double phi = sigma.angle(k, l);
      const std::complex<long double> twist(std::cos(phi), std::sin(phi));
      acc[lattice_add(k, l)] += std::complex<long double>(ca) * std::complex<long double>(cb) * twist;
    }
  }
  FourierElement out(a.n());
  for (const auto& [m, v] : acc)
    out.add_coeff(m, Complex(static_cast<double>(v.real()), static_cast<double>(v.imag())));
  return out;
}

FourierElement star_commutator(const DeformationData& data, const FourierElement& a,
                               const FourierElement& b) {
  return star_product(data, a, b) - star_product(data, b, a);
}

VerificationReport trace_identity_check(const DeformationData& data, const FourierElement& a,
                                        const FourierElement& b) {
  VerificationReport report;
  report.check = "trace identity: haar(a*b) = haar(a.b) = haar(b*a)";
  const Complex undeformed = haar_trace(multiply_undeformed(a, b));
  const Complex ab = haar_trace(star_product(data, a, b));
  const Complex ba = haar_trace(star_product(data, b, a));
  report.add_case("haar(a*b) vs haar(a.b)", undeformed, ab, 1e-12);
  report.add_case("haar(b*a) vs haar(a.b)", undeformed, ba, 1e-12);
  return report;
}

}  // namespace ncdq
