#pragma once

#include <complex>
#include <map>
#include <vector>

#include "ncdq/errors.hpp"

namespace ncdq {

using Complex = std::complex<double>;

// Lattice point of Z^{2n}, stored as a plain integer vector of length 2n.
// The map key order (lexicographic) doubles as the canonical serialization
// order.
using LatticeIndex = std::vector<int>;

LatticeIndex lattice_add(const LatticeIndex& k, const LatticeIndex& l);
LatticeIndex lattice_neg(const LatticeIndex& k);
double lattice_dot(const LatticeIndex& k, const std::vector<double>& u);
int lattice_max_abs(const LatticeIndex& k);

// Coefficients with modulus below this are dropped after every operation, so
// elements stay in canonical form (no stored zeros).  Chosen well under all
// verification tolerances.
inline constexpr double kCoeffPrune = 1e-14;

// Trigonometric polynomial on T^{2n}: finite sum a = sum_k a_k e_k with
// e_k(x) = exp(i k.x).  Immutable in spirit; mutating helpers return *this
// only during construction phases.
class FourierElement {
 public:
  explicit FourierElement(int n);
  static FourierElement basis(int n, LatticeIndex k, Complex c = 1.0);
  static FourierElement unit(int n) { return basis(n, LatticeIndex(2 * n, 0)); }

  int n() const { return n_; }
  int dim() const { return 2 * n_; }
  const std::map<LatticeIndex, Complex>& terms() const { return terms_; }
  std::size_t mode_count() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  Complex coeff(const LatticeIndex& k) const;
  void set_coeff(const LatticeIndex& k, Complex c);
  void add_coeff(const LatticeIndex& k, Complex c);

  // Largest |coordinate| over the support; 0 for the zero element.
  int support_radius() const;

  FourierElement& operator+=(const FourierElement& other);
  FourierElement& operator-=(const FourierElement& other);
  FourierElement& operator*=(Complex c);
  friend FourierElement operator+(FourierElement a, const FourierElement& b) { return a += b; }
  friend FourierElement operator-(FourierElement a, const FourierElement& b) { return a -= b; }
  friend FourierElement operator*(Complex c, FourierElement a) { return a *= c; }
  friend bool operator==(const FourierElement& a, const FourierElement& b) = default;

  bool is_hermitian(double tol = 0.0) const;

 private:
  int n_;
  std::map<LatticeIndex, Complex> terms_;
};

// Pointwise product of functions = untwisted coefficient convolution.
FourierElement multiply_undeformed(const FourierElement& a, const FourierElement& b);

// Complex conjugation of the function: (a*)_k = conj(a_{-k}).
FourierElement involution(const FourierElement& a);

// Translation action: coefficients pick up the character value exp(i k.u).
FourierElement act(const std::vector<double>& u, const FourierElement& a);

// Derivative along the action: a_k -> (ik)^beta a_k, beta a multi-index over
// the 2n coordinates.
FourierElement derivative(const std::vector<int>& beta, const FourierElement& a);

Complex evaluate_point(const FourierElement& a, const std::vector<double>& x);

double l1_norm(const FourierElement& a);

struct SeminormSpec {
  int mu = 0;
  int grid_density = 64;  // evaluation points per circle
};

struct SeminormBracket {
  double lower = 0;  // max of |d^beta a| over the evaluation grid, |beta| <= mu
  double upper = 0;  // max over beta of the l1 bound sum_k |k^beta||a_k|
};

// Two-sided bracket for max_{|beta|<=mu} sup_x |(d^beta a)(x)|.  The sup over
// the torus is only estimated from below (grid) and above (l1); no exactness
// is claimed.
SeminormBracket seminorm(const FourierElement& a, const SeminormSpec& spec = {});

// Coefficient of e_0; the canonical tracial state of the model.
Complex haar_trace(const FourierElement& a);

// All multi-indices beta of length dim with |beta| <= mu, in lexicographic
// order (used by seminorms and their tests).
std::vector<std::vector<int>> multi_indices_up_to(int dim, int mu);

}  // namespace ncdq
