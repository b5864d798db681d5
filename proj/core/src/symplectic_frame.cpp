#include "ncdq/symplectic_frame.hpp"

#include <cmath>

namespace ncdq {

namespace {

Eigen::VectorXd to_vec(const LatticeIndex& k) {
  Eigen::VectorXd v(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) v[i] = k[i];
  return v;
}

void require_square_even(const Eigen::MatrixXd& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() < 2 || m.rows() % 2 != 0)
    throw DimensionMismatch(std::string(what) + " must be square of even size >= 2");
}

}  // namespace

SymplecticForm::SymplecticForm(Eigen::MatrixXd theta) : theta_(std::move(theta)) {
  require_square_even(theta_, "symplectic form");
  if ((theta_ + theta_.transpose()).cwiseAbs().maxCoeff() > kGeometryTol)
    throw IncompatibilityError("form is not antisymmetric");
  const double det = theta_.determinant();
  if (std::abs(det) < 0.5) throw IncompatibilityError("form is degenerate");
  // |det Theta| = 1 fixes the Haar measure so the product twist has unit
  // prefactor; anything else would break unitality of e_0.
  if (std::abs(std::abs(det) - 1.0) > 1e-9)
    throw IncompatibilityError("form must be normalized to |det| = 1");
  dual_ = theta_.inverse().transpose();
}

SymplecticForm SymplecticForm::standard(int n) {
  Eigen::MatrixXd theta = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  theta.topRightCorner(n, n) = Eigen::MatrixXd::Identity(n, n);
  theta.bottomLeftCorner(n, n) = -Eigen::MatrixXd::Identity(n, n);
  return SymplecticForm(theta);
}

Metric::Metric(Eigen::MatrixXd g) : g_(std::move(g)) {
  require_square_even(g_, "metric");
  if ((g_ - g_.transpose()).cwiseAbs().maxCoeff() > kGeometryTol)
    throw IncompatibilityError("metric is not symmetric");
  Eigen::LLT<Eigen::MatrixXd> llt(g_);
  if (llt.info() != Eigen::Success)
    throw IncompatibilityError("metric is not positive definite");
  inv_ = g_.inverse();
  det_ = g_.determinant();
}

Metric Metric::identity(int n) { return Metric(Eigen::MatrixXd::Identity(2 * n, 2 * n)); }

Eigen::VectorXcd CompatibleFrame::kappa(const LatticeIndex& k) const {
  const int n = static_cast<int>(basis.rows()) / 2;
  if (k.size() != static_cast<std::size_t>(2 * n))
    throw DimensionMismatch("lattice index has wrong length for the frame");
  Eigen::VectorXd fk = basis.transpose() * to_vec(k);
  Eigen::VectorXcd z(n);
  for (int j = 0; j < n; ++j) z[j] = Complex(fk[j], fk[n + j]);
  return z;
}

CompatibleFrame build_compatible_frame(const SymplecticForm& theta, const Metric& g) {
  const int d = static_cast<int>(theta.matrix().rows());
  if (g.matrix().rows() != d) throw DimensionMismatch("form and metric sizes differ");
  const int n = d / 2;

  const Eigen::MatrixXd J = theta.matrix().inverse() * g.matrix();
  if ((J * J + Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff() > kGeometryTol)
    throw IncompatibilityError("metric is not compatible with the form (J^2 != -I)");

  // Symplectic Gram-Schmidt: each accepted vector e is g-normalized and
  // paired with f = J e; removing the g-orthogonal projection onto found
  // pairs keeps later vectors symplectically orthogonal to them as well,
  // because J maps the span of a pair to itself.
  std::vector<Eigen::VectorXd> es, fs;
  const Eigen::MatrixXd& G = g.matrix();
  for (int i = 0; i < d && static_cast<int>(es.size()) < n; ++i) {
    Eigen::VectorXd v = Eigen::VectorXd::Unit(d, i);
    for (std::size_t p = 0; p < es.size(); ++p) {
      v -= (es[p].transpose() * G * v)(0) * es[p];
      v -= (fs[p].transpose() * G * v)(0) * fs[p];
    }
    const double norm2 = (v.transpose() * G * v)(0);
    if (norm2 < 1e-10) continue;
    v /= std::sqrt(norm2);
    for (int r = 0; r < d; ++r) {
      if (std::abs(v[r]) > kGeometryTol) {
        if (v[r] < 0) v = -v;
        break;
      }
    }
    es.push_back(v);
    fs.push_back(J * v);
  }
  if (static_cast<int>(es.size()) != n)
    throw IncompatibilityError("frame construction exhausted candidates");

  CompatibleFrame frame;
  frame.basis.resize(d, d);
  for (int j = 0; j < n; ++j) {
    frame.basis.col(j) = es[j];
    frame.basis.col(n + j) = fs[j];
  }
  frame.abs_det = std::abs(frame.basis.determinant());

  // The output must bring both structures to normal form; verify rather than
  // trust the algebra above.
  const Eigen::MatrixXd gf = frame.basis.transpose() * G * frame.basis;
  Eigen::MatrixXd jstd = Eigen::MatrixXd::Zero(d, d);
  jstd.topRightCorner(n, n) = Eigen::MatrixXd::Identity(n, n);
  jstd.bottomLeftCorner(n, n) = -Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd tf = frame.basis.transpose() * theta.matrix() * frame.basis;
  if ((gf - Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-10 ||
      (tf - jstd).cwiseAbs().maxCoeff() > 1e-10)
    throw IncompatibilityError("frame failed to normalize the structures");
  return frame;
}

DeformationData::DeformationData(SymplecticForm theta, Metric g, double hbar)
    : theta_(std::move(theta)), g_(std::move(g)), frame_(build_compatible_frame(theta_, g_)),
      hbar_(hbar) {
  if (hbar < 0) throw ConfigError("hbar must be non-negative");
  const int d = 2 * n();
  const Eigen::MatrixXd J = g_.inverse() * theta_.matrix();
  if ((J * J + Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff() > kGeometryTol)
    throw IncompatibilityError("metric incompatible with form");
}

DeformationData DeformationData::standard(int n, double hbar) {
  return DeformationData(SymplecticForm::standard(n), Metric::identity(n), hbar);
}

DeformationData DeformationData::with_hbar(double hbar) const {
  DeformationData copy(*this);
  if (hbar < 0) throw ConfigError("hbar must be non-negative");
  copy.hbar_ = hbar;
  return copy;
}

double DeformationData::dual_pairing(const LatticeIndex& k, const LatticeIndex& l) const {
  if (k.size() != static_cast<std::size_t>(2 * n()) || l.size() != k.size())
    throw DimensionMismatch("lattice index has wrong length");
  return (to_vec(k).transpose() * theta_.dual() * to_vec(l))(0);
}

double laplacian_symbol(const DeformationData& data, const LatticeIndex& k) {
  if (k.size() != static_cast<std::size_t>(2 * data.n()))
    throw DimensionMismatch("lattice index has wrong length");
  const Eigen::VectorXd v = to_vec(k);
  return (v.transpose() * data.g().inverse() * v)(0);
}

FourierElement apply_laplacian(const DeformationData& data, const FourierElement& a) {
  if (a.n() != data.n()) throw DimensionMismatch("element dimension differs from geometry");
  FourierElement out(a.n());
  for (const auto& [k, c] : a.terms()) out.add_coeff(k, -laplacian_symbol(data, k) * c);
  return out;
}

}  // namespace ncdq
