#include "ncdq/lattice_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>

namespace ncdq {

namespace {

void require_same_dim(const FourierElement& a, const FourierElement& b) {
  if (a.n() != b.n()) throw DimensionMismatch("elements live on different tori");
}

void require_index_dim(const FourierElement& a, std::size_t len, const char* what) {
  if (len != static_cast<std::size_t>(a.dim()))
    throw DimensionMismatch(std::string(what) + ": expected length " + std::to_string(a.dim()) +
                            ", got " + std::to_string(len));
}

}  // namespace

LatticeIndex lattice_add(const LatticeIndex& k, const LatticeIndex& l) {
  LatticeIndex m(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) m[i] = k[i] + l[i];
  return m;
}

LatticeIndex lattice_neg(const LatticeIndex& k) {
  LatticeIndex m(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) m[i] = -k[i];
  return m;
}

double lattice_dot(const LatticeIndex& k, const std::vector<double>& u) {
  double s = 0;
  for (std::size_t i = 0; i < k.size(); ++i) s += k[i] * u[i];
  return s;
}

int lattice_max_abs(const LatticeIndex& k) {
  int m = 0;
  for (int ki : k) m = std::max(m, std::abs(ki));
  return m;
}

FourierElement::FourierElement(int n) : n_(n) {
  if (n < 1) throw DimensionMismatch("torus half-dimension must be >= 1");
}

FourierElement FourierElement::basis(int n, LatticeIndex k, Complex c) {
  FourierElement a(n);
  if (k.size() != static_cast<std::size_t>(2 * n))
    throw DimensionMismatch("basis index has wrong length");
  a.set_coeff(k, c);
  return a;
}

Complex FourierElement::coeff(const LatticeIndex& k) const {
  auto it = terms_.find(k);
  return it == terms_.end() ? Complex(0) : it->second;
}

void FourierElement::set_coeff(const LatticeIndex& k, Complex c) {
  require_index_dim(*this, k.size(), "coefficient index");
  if (std::abs(c) < kCoeffPrune)
    terms_.erase(k);
  else
    terms_[k] = c;
}

void FourierElement::add_coeff(const LatticeIndex& k, Complex c) {
  require_index_dim(*this, k.size(), "coefficient index");
  auto it = terms_.find(k);
  Complex v = (it == terms_.end() ? Complex(0) : it->second) + c;
  if (std::abs(v) < kCoeffPrune) {
    if (it != terms_.end()) terms_.erase(it);
  } else if (it != terms_.end()) {
    it->second = v;
  } else {
    terms_.emplace(k, v);
  }
}

int FourierElement::support_radius() const {
  int r = 0;
  for (const auto& [k, c] : terms_) r = std::max(r, lattice_max_abs(k));
  return r;
}

FourierElement& FourierElement::operator+=(const FourierElement& other) {
  require_same_dim(*this, other);
  for (const auto& [k, c] : other.terms_) add_coeff(k, c);
  return *this;
}

FourierElement& FourierElement::operator-=(const FourierElement& other) {
  require_same_dim(*this, other);
  for (const auto& [k, c] : other.terms_) add_coeff(k, -c);
  return *this;
}

FourierElement& FourierElement::operator*=(Complex c) {
  std::map<LatticeIndex, Complex> scaled;
  for (const auto& [k, v] : terms_) {
    Complex w = c * v;
    if (std::abs(w) >= kCoeffPrune) scaled.emplace(k, w);
  }
  terms_ = std::move(scaled);
  return *this;
}

bool FourierElement::is_hermitian(double tol) const {
  for (const auto& [k, c] : terms_)
    if (std::abs(c - std::conj(coeff(lattice_neg(k)))) > tol) return false;
  return true;
}

FourierElement multiply_undeformed(const FourierElement& a, const FourierElement& b) {
  require_same_dim(a, b);
  // Extended-precision accumulation keeps re-associated evaluations of the
  // same product (Leibniz tests, associativity) within a few ulp.
  std::map<LatticeIndex, std::complex<long double>> acc;
  for (const auto& [k, ca] : a.terms())
    for (const auto& [l, cb] : b.terms())
      acc[lattice_add(k, l)] += std::complex<long double>(ca) * std::complex<long double>(cb);
  FourierElement out(a.n());
  for (const auto& [m, v] : acc)
    out.add_coeff(m, Complex(static_cast<double>(v.real()), static_cast<double>(v.imag())));
  return out;
}

FourierElement involution(const FourierElement& a) {
  FourierElement out(a.n());
  for (const auto& [k, c] : a.terms()) out.set_coeff(lattice_neg(k), std::conj(c));
  return out;
}

FourierElement act(const std::vector<double>& u, const FourierElement& a) {
  require_index_dim(a, u.size(), "translation vector");
  FourierElement out(a.n());
  for (const auto& [k, c] : a.terms()) out.set_coeff(k, c * std::polar(1.0, lattice_dot(k, u)));
  return out;
}

FourierElement derivative(const std::vector<int>& beta, const FourierElement& a) {
  require_index_dim(a, beta.size(), "derivative multi-index");
  for (int b : beta)
    if (b < 0) throw DimensionMismatch("derivative multi-index must be non-negative");
  FourierElement out(a.n());
  for (const auto& [k, c] : a.terms()) {
    Complex factor = 1.0;
    for (std::size_t i = 0; i < beta.size(); ++i)
      for (int r = 0; r < beta[i]; ++r) factor *= Complex(0, k[i]);
    out.add_coeff(k, factor * c);
  }
  return out;
}

Complex evaluate_point(const FourierElement& a, const std::vector<double>& x) {
  require_index_dim(a, x.size(), "evaluation point");
  std::complex<long double> s = 0;
  for (const auto& [k, c] : a.terms())
    s += std::complex<long double>(c) *
         std::polar<long double>(1.0L, static_cast<long double>(lattice_dot(k, x)));
  return Complex(static_cast<double>(s.real()), static_cast<double>(s.imag()));
}

double l1_norm(const FourierElement& a) {
  double s = 0;
  for (const auto& [k, c] : a.terms()) s += std::abs(c);
  return s;
}

std::vector<std::vector<int>> multi_indices_up_to(int dim, int mu) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(dim, 0);
  // Lexicographic enumeration of all beta with |beta| <= mu.
  while (true) {
    int total = 0;
    for (int c : cur) total += c;
    if (total <= mu) out.push_back(cur);
    int i = dim - 1;
    while (i >= 0) {
      if (++cur[i] > mu) {
        cur[i] = 0;
        --i;
      } else {
        break;
      }
    }
    if (i < 0) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

SeminormBracket seminorm(const FourierElement& a, const SeminormSpec& spec) {
  if (spec.grid_density < 1) throw ConfigError("grid_density must be >= 1");
  SeminormBracket bracket;
  if (a.empty()) return bracket;

  const int d = a.dim();
  const auto betas = multi_indices_up_to(d, spec.mu);
  const double step = 2.0 * std::numbers::pi / spec.grid_density;

  for (const auto& beta : betas) {
    bool zeroth = std::all_of(beta.begin(), beta.end(), [](int b) { return b == 0; });
    const FourierElement der = zeroth ? a : derivative(beta, a);
    bracket.upper = std::max(bracket.upper, l1_norm(der));

    // Grid sweep over the torus: odometer over grid_density^d points.
    std::vector<int> idx(d, 0);
    std::vector<double> x(d, 0.0);
    while (true) {
      for (int i = 0; i < d; ++i) x[i] = step * idx[i];
      bracket.lower = std::max(bracket.lower, std::abs(evaluate_point(der, x)));
      int i = d - 1;
      while (i >= 0) {
        if (++idx[i] >= spec.grid_density) {
          idx[i] = 0;
          --i;
        } else {
          break;
        }
      }
      if (i < 0) break;
    }
  }
  // Floating-point grid maxima can exceed the l1 bound by an ulp on exact
  // cases (e.g. single characters); clamp to keep the bracket well-ordered.
  bracket.lower = std::min(bracket.lower, bracket.upper);
  return bracket;
}

Complex haar_trace(const FourierElement& a) { return a.coeff(LatticeIndex(a.dim(), 0)); }

}  // namespace ncdq
