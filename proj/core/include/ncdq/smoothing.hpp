#pragma once

#include <utility>

#include "ncdq/integral_oracle.hpp"
#include "ncdq/star_product.hpp"

namespace ncdq {

// Gaussian smoothing as an exact Fourier multiplier:
// a_k -> exp(-hbar*lambda(k)/4) a_k.  hbar = 0 returns the input unchanged
// (same object, bit-exact classical limit).
FourierElement smooth(const DeformationData& data, const FourierElement& a);

// Central finite difference of hbar -> smooth(a) against the closed-form
// derivative smooth(laplacian a / 4); second-order in dh.
VerificationReport smooth_derivative_check(const DeformationData& data, const FourierElement& a,
                                           double dh);

// Degree-(R-1) Taylor polynomial of the multiplier, applied coefficientwise:
// sum_{r<R} (1/r!)(-hbar lambda/4)^r.  R = 0 gives the zero element.
FourierElement asymptotic_expansion(const DeformationData& data, const FourierElement& a, int R);

// sum_k |a_k| (hbar lambda(k)/4)^R / R!  — rigorous remainder bound for the
// expansion in the l1 coefficient norm.
double expansion_remainder_bound(const DeformationData& data, const FourierElement& a, int R);

struct WickCoefficient {
  std::vector<int> L;      // multi-index of length n
  FourierElement element;  // a_L: same support as a, multiplier-rescaled
};

// Gaussian moment multiplier in the compatible frame:
// (a_L)_k = a_k * |det F| * prod_j (i sqrt(hbar) kappa_j(k)/2)^{l_j}
//               * exp(-hbar |kappa(k)|^2 / 4).
// |det F| = det(G)^{-1/2} is the frame Jacobian; with the frozen measure
// normalization det G = 1 and sqrt(det G) a_{L=0} = smooth(a) holds exactly.
WickCoefficient wick_coefficient(const DeformationData& data, const FourierElement& a,
                                 const std::vector<int>& L);

struct SeriesTruncation {
  int Lmax = 12;
  double tail_bound = 0;  // filled by wick_series; monotone decreasing in Lmax
};

struct WickSeriesResult {
  FourierElement value;
  SeriesTruncation trunc;
  VerificationReport report;
};

// Hermitian-square expansion of the smoothed star square:
//   smooth(a* x a) = sum_L (2^{|L|}/L!) a_L^* a_L  (undeformed products).
// Returns the truncated sum plus a report comparing it against the direct
// evaluation smooth(star_product(involution(a), a)) within tail_bound + 1e-10.
WickSeriesResult wick_series(const DeformationData& data, const FourierElement& a,
                             SeriesTruncation trunc);

// smooth(a* x a) = (1/det G) smooth(a*) smooth(a) + remainder, with the
// remainder equal to the L != 0 part of the series above — a sum of hermitian
// squares, hence positive.
std::pair<FourierElement, FourierElement> leading_order_split(const DeformationData& data,
                                                              const FourierElement& a);

// Star-root property of the normalized Gaussian:
//   (G_hbar * G_hbar)(w) = (2 pi hbar)^{-n} det(G)^{-1/2} G_hbar(w),
// checked by the quadrature oracle at the given sample points w.
VerificationReport star_root_check(const DeformationData& data,
                                   const std::vector<std::vector<double>>& sample_points,
                                   const QuadratureConfig& cfg);

// Value of the normalized Gaussian G_hbar at a point of V.
double gauss_value(const DeformationData& data, const std::vector<double>& v);

}  // namespace ncdq
