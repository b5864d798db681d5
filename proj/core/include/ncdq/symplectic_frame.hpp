#pragma once

#include <Eigen/Dense>

#include "ncdq/lattice_algebra.hpp"

namespace ncdq {

inline constexpr double kGeometryTol = 1e-12;

// Non-degenerate antisymmetric form on V = R^{2n}.  The normalization
// |det Theta| = 1 is structural: the Haar measure on V is fixed so that the
// deformed product has twist prefactor 1 and e_0 stays the unit.
class SymplecticForm {
 public:
  explicit SymplecticForm(Eigen::MatrixXd theta);
  static SymplecticForm standard(int n);

  int n() const { return static_cast<int>(theta_.rows()) / 2; }
  const Eigen::MatrixXd& matrix() const { return theta_; }
  // inv(Theta)^T, the dual form pairing lattice indices in the twist.
  const Eigen::MatrixXd& dual() const { return dual_; }

 private:
  Eigen::MatrixXd theta_;
  Eigen::MatrixXd dual_;
};

class Metric {
 public:
  explicit Metric(Eigen::MatrixXd g);
  static Metric identity(int n);

  int n() const { return static_cast<int>(g_.rows()) / 2; }
  const Eigen::MatrixXd& matrix() const { return g_; }
  const Eigen::MatrixXd& inverse() const { return inv_; }
  double det() const { return det_; }

 private:
  Eigen::MatrixXd g_;
  Eigen::MatrixXd inv_;
  double det_;
};

// Symplectic basis {e_1..e_n, f_1..f_n} (columns of `basis`) in which g is
// the identity quadratic form and theta the standard block form.  kappa packs
// the frame coordinates of a lattice index into complex pairs; |kappa(k)|^2
// equals the inverse-metric quadratic form of k.
struct CompatibleFrame {
  Eigen::MatrixXd basis;
  double abs_det = 1.0;  // |det basis| = det(G)^{-1/2}

  Eigen::VectorXcd kappa(const LatticeIndex& k) const;
};

// Symplectic Gram-Schmidt.  Deterministic: candidate vectors are taken in
// index order and each pair (e_j, f_j = J e_j) is sign-fixed by requiring a
// positive first nonzero entry of e_j.  Throws IncompatibilityError unless
// J = inv(Theta) G squares to -I within tolerance.
CompatibleFrame build_compatible_frame(const SymplecticForm& theta, const Metric& g);

class DeformationData {
 public:
  DeformationData(SymplecticForm theta, Metric g, double hbar);
  static DeformationData standard(int n, double hbar);

  int n() const { return theta_.n(); }
  double hbar() const { return hbar_; }
  const SymplecticForm& theta() const { return theta_; }
  const Metric& g() const { return g_; }
  const CompatibleFrame& frame() const { return frame_; }

  DeformationData with_hbar(double hbar) const;

  // k^T inv(Theta)^T l; antisymmetric pairing entering the twist phase.
  double dual_pairing(const LatticeIndex& k, const LatticeIndex& l) const;

 private:
  SymplecticForm theta_;
  Metric g_;
  CompatibleFrame frame_;
  double hbar_;
};

// lambda(k) = k^T inv(G) k, the spectral function of the metric Laplacian on
// characters.
double laplacian_symbol(const DeformationData& data, const LatticeIndex& k);

// a_k -> -lambda(k) a_k.
FourierElement apply_laplacian(const DeformationData& data, const FourierElement& a);

}  // namespace ncdq
