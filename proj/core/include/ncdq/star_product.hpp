#pragma once

#include "ncdq/report.hpp"
#include "ncdq/symplectic_frame.hpp"

namespace ncdq {

// Unit-modulus 2-cocycle on the lattice: sigma_hbar(k,l) =
// exp(-i*(hbar/2)*k^T inv(Theta)^T l).  This is exactly the phase the
// oscillatory product integral produces on characters under the frozen
// measure normalization (see calibrate_twist in the oracle).
class TwistCocycle {
 public:
  explicit TwistCocycle(const DeformationData& data);

  double angle(const LatticeIndex& k, const LatticeIndex& l) const;
  Complex phase(const LatticeIndex& k, const LatticeIndex& l) const;
  double hbar() const { return hbar_; }

 private:
  Eigen::MatrixXd dual_;
  double hbar_;
};

// Twisted coefficient convolution (a*b)_m = sum_{k+l=m} a_k b_l sigma(k,l).
// hbar = 0 short-circuits to multiply_undeformed for a bit-exact classical
// limit.  Accumulation runs in extended precision so differently-associated
// evaluations of the same product agree to ~1e-15 coefficientwise.
FourierElement star_product(const DeformationData& data, const FourierElement& a,
                            const FourierElement& b);

FourierElement star_commutator(const DeformationData& data, const FourierElement& a,
                               const FourierElement& b);

// haar_trace(a*b) = haar_trace(a.b) = haar_trace(b*a): the trace does not see
// the twist.
VerificationReport trace_identity_check(const DeformationData& data, const FourierElement& a,
                                        const FourierElement& b);

}  // namespace ncdq
