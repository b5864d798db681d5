#include "ncdq/states.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace ncdq {

MomentState MomentState::point(std::vector<double> x) {
  if (x.empty() || x.size() % 2 != 0)
    throw ConfigError("point state: coordinate vector must have positive even length 2n");
  MomentState s;
  s.kind_ = Kind::point;
  s.n_ = static_cast<int>(x.size()) / 2;
  s.x_ = std::move(x);
  return s;
}

MomentState MomentState::haar(int n) {
  if (n < 1) throw ConfigError("haar state: n must be >= 1");
  MomentState s;
  s.kind_ = Kind::haar;
  s.n_ = n;
  return s;
}

MomentState MomentState::mixture(std::vector<double> weights, std::vector<MomentState> components) {
  if (weights.empty() || weights.size() != components.size())
    throw ConfigError("mixture state: need matching nonempty weights and components");
  double total = 0;
  for (double w : weights) {
    if (w <= 0) throw ConfigError("mixture state: weights must be positive");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw ConfigError("mixture state: weights must sum to 1 within 1e-12");
  const int n = components.front().n();
  for (const auto& c : components)
    if (c.n() != n) throw DimensionMismatch("mixture state: components must share n");
  MomentState s;
  s.kind_ = Kind::mixture;
  s.n_ = n;
  s.weights_ = std::move(weights);
  s.components_ = std::move(components);
  return s;
}

Complex MomentState::moment(const LatticeIndex& k) const {
  if (static_cast<int>(k.size()) != 2 * n_)
    throw DimensionMismatch("moment: index length must be 2n");
  switch (kind_) {
    case Kind::point:
      return std::polar(1.0, lattice_dot(k, x_));
    case Kind::haar:
      return std::all_of(k.begin(), k.end(), [](int v) { return v == 0; }) ? 1.0 : 0.0;
    case Kind::mixture: {
      Complex m = 0;
      for (std::size_t i = 0; i < weights_.size(); ++i) m += weights_[i] * components_[i].moment(k);
      return m;
    }
  }
  throw ConfigError("moment: unknown state kind");
}

Complex evaluate(const MomentState& state, const FourierElement& a) {
  if (state.n() != a.n()) throw DimensionMismatch("evaluate: state and element dimensions differ");
  std::complex<long double> acc = 0;
  for (const auto& [k, c] : a.terms()) acc += std::complex<long double>(c * state.moment(k));
  return Complex(static_cast<double>(acc.real()), static_cast<double>(acc.imag()));
}

Complex deformed_evaluate(const MomentState& state, const DeformationData& data,
                          const FourierElement& a) {
  return evaluate(state, smooth(data, a));
}

VerificationReport state_expansion_check(const MomentState& state, const DeformationData& data,
                                         const FourierElement& a, int R) {
  if (R < 0) throw ConfigError("state_expansion_check: R must be >= 0");
  VerificationReport report;
  report.check = "semiclassical expansion of the deformed state";

  const Complex direct = deformed_evaluate(state, data, a);
  std::complex<long double> series = 0;
  FourierElement b = a;
  long double factor = 1;  // (hbar/4)^r / r!
  for (int r = 0; r < R; ++r) {
    series += factor * std::complex<long double>(evaluate(state, b));
    b = apply_laplacian(data, b);
    factor *= data.hbar() / (4.0 * (r + 1));
  }

  long double bound = 1e-12;
  for (const auto& [k, c] : a.terms()) {
    const double x = data.hbar() * laplacian_symbol(data, k) / 4.0;
    long double term = std::abs(c) * std::abs(state.moment(k));
    for (int r = 1; r <= R; ++r) term *= x / r;
    bound += term;
  }
  const Complex series_d(static_cast<double>(series.real()), static_cast<double>(series.imag()));
  report.add_bound_case("order-" + std::to_string(R) + " remainder", static_cast<double>(bound),
                        std::abs(direct - series_d));
  return report;
}

MatrixElement::MatrixElement(int m, int n) : size(m) {
  if (m < 1) throw ConfigError("MatrixElement: size must be >= 1");
  entries.assign(static_cast<std::size_t>(m) * m, FourierElement(n));
}

FourierElement& MatrixElement::at(int i, int j) {
  return entries[static_cast<std::size_t>(i) * size + j];
}

const FourierElement& MatrixElement::at(int i, int j) const {
  return entries[static_cast<std::size_t>(i) * size + j];
}

MatrixElement matrix_star(const DeformationData& data, const MatrixElement& A,
                          const MatrixElement& B) {
  if (A.size != B.size) throw DimensionMismatch("matrix_star: size mismatch");
  MatrixElement C(A.size, data.n());
  for (int i = 0; i < A.size; ++i)
    for (int j = 0; j < A.size; ++j) {
      FourierElement acc(data.n());
      for (int k = 0; k < A.size; ++k) acc += star_product(data, A.at(i, k), B.at(k, j));
      C.at(i, j) = std::move(acc);
    }
  return C;
}

MatrixElement matrix_involution(const MatrixElement& A) {
  const int n = A.entries.front().n();
  MatrixElement B(A.size, n);
  for (int i = 0; i < A.size; ++i)
    for (int j = 0; j < A.size; ++j) B.at(i, j) = involution(A.at(j, i));
  return B;
}

VerificationReport matrix_deformed_positivity(const MomentState& state, const DeformationData& data,
                                              const MatrixElement& A) {
  VerificationReport report;
  report.check = "matrix amplification of the deformed state is positive";

  const MatrixElement square = matrix_star(data, matrix_involution(A), A);
  const int m = A.size;
  Eigen::MatrixXcd omega(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) omega(i, j) = deformed_evaluate(state, data, square.at(i, j));

  const double herm_dev = (omega - omega.adjoint().eval()).cwiseAbs().maxCoeff();
  report.add_bound_case("hermiticity deviation of the moment matrix (size " + std::to_string(m) +
                            ")",
                        1e-10, herm_dev);

  const Eigen::MatrixXcd herm = 0.5 * (omega + omega.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm);
  const double min_eig = es.eigenvalues().minCoeff();
  report.add_bound_case("negative part of the spectrum (size " + std::to_string(m) + ")", 1e-10,
                        std::max(0.0, -min_eig));
  return report;
}

VerificationReport bochner_check(const MomentState& state, int N) {
  if (N < 0) throw ConfigError("bochner_check: N must be >= 0");
  VerificationReport report;
  report.check = "moment matrix positivity (Bochner probe)";

  const int d = 2 * state.n();
  std::vector<LatticeIndex> indices;
  LatticeIndex k(d, -N);
  while (true) {
    indices.push_back(k);
    if (indices.size() >= 12) break;
    int i = d - 1;
    while (i >= 0 && k[i] == N) k[i--] = -N;
    if (i < 0) break;
    ++k[i];
  }

  const int m = static_cast<int>(indices.size());
  Eigen::MatrixXcd M(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      LatticeIndex diff(d);
      for (int t = 0; t < d; ++t) diff[t] = indices[i][t] - indices[j][t];
      M(i, j) = state.moment(diff);
    }

  const double herm_dev = (M - M.adjoint().eval()).cwiseAbs().maxCoeff();
  report.add_bound_case("hermiticity deviation", 1e-12, herm_dev);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (M + M.adjoint().eval()));
  report.add_bound_case("negative part of the spectrum", 1e-10,
                        std::max(0.0, -es.eigenvalues().minCoeff()));
  report.add_case("normalization moment", 1.0, state.moment(LatticeIndex(d, 0)), 1e-15);
  return report;
}

}  // namespace ncdq
