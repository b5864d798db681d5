#pragma once

namespace ncdq {

inline constexpr const char* kVersion = "0.1.0";

// Frozen sign convention for the product twist, confirmed against the
// quadrature oracle before release.  Every emitted report carries this string
// so downstream data is self-describing.
inline constexpr const char* kTwistConvention =
    "sigma_hbar(k,l) = exp(-i*(hbar/2)*k^T*inv(Theta)^T*l), |det Theta| = 1";

}  // namespace ncdq
