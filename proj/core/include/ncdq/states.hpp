#pragma once

#include <memory>
#include <vector>

#include "ncdq/smoothing.hpp"

namespace ncdq {

// Classical state given by its moment function k -> omega(e_k): point
// evaluation, the Haar trace, or a finite mixture.  m(0) = 1, m(-k) =
// conj(m(k)), and the moment matrix [m(k_i - k_j)] is positive semidefinite
// (Bochner); bochner_check probes the last invariant numerically.
class MomentState {
 public:
  enum class Kind { point, haar, mixture };

  static MomentState point(std::vector<double> x);  // x on T^{2n}, length 2n
  static MomentState haar(int n);
  static MomentState mixture(std::vector<double> weights, std::vector<MomentState> components);

  Kind kind() const { return kind_; }
  int n() const { return n_; }
  const std::vector<double>& x() const { return x_; }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<MomentState>& components() const { return components_; }

  Complex moment(const LatticeIndex& k) const;

 private:
  MomentState() = default;
  Kind kind_ = Kind::haar;
  int n_ = 1;
  std::vector<double> x_;
  std::vector<double> weights_;
  std::vector<MomentState> components_;
};

// omega(a) = sum_k a_k m(k).
Complex evaluate(const MomentState& state, const FourierElement& a);

// omega_hbar(a) = omega(smooth(a)) = sum_k a_k exp(-hbar lambda(k)/4) m(k).
Complex deformed_evaluate(const MomentState& state, const DeformationData& data,
                          const FourierElement& a);

// |omega_hbar(a) - sum_{r<R} (1/r!)(hbar/4)^r omega(Delta^r a)| against the
// factorial remainder bound sum_k |a_k||m(k)| (hbar lambda(k)/4)^R / R!.
VerificationReport state_expansion_check(const MomentState& state, const DeformationData& data,
                                         const FourierElement& a, int R);

struct MatrixElement {
  int size = 0;
  std::vector<FourierElement> entries;  // row-major, size*size

  MatrixElement(int m, int n);
  FourierElement& at(int i, int j);
  const FourierElement& at(int i, int j) const;
};

MatrixElement matrix_star(const DeformationData& data, const MatrixElement& A,
                          const MatrixElement& B);
MatrixElement matrix_involution(const MatrixElement& A);

// Complete positivity probe: Omega_ij = omega_hbar((A* x A)_ij) must be
// hermitian with min eigenvalue >= -1e-10.
VerificationReport matrix_deformed_positivity(const MomentState& state, const DeformationData& data,
                                              const MatrixElement& A);

// Moment-matrix positivity over |k| <= N per coordinate, capped at 12 indices
// by lexicographic selection.
VerificationReport bochner_check(const MomentState& state, int N);

}  // namespace ncdq
