#pragma once

#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "ncdq/report.hpp"
#include "ncdq/symplectic_frame.hpp"

namespace ncdq {

struct QuadratureConfig {
  int order = 16;            // initial Gauss-Hermite order per axis, >= 8
  double box_radius = 7.0;   // half-width for the trapezoid fallback
  double target_tol = 1e-10;
  int max_refinements = 6;   // each refinement doubles the order
  enum class Scheme { gauss_hermite, trapezoid } scheme = Scheme::gauss_hermite;

  void validate() const;  // throws ConfigError
};

// One integral from the closed family the oracle knows how to evaluate.
// All kinds are Gaussian x trigonometric; the 4D kinds (star_on_modes,
// double_gaussian, gauss_star_gauss) are reduced to an exact inner complex
// Gaussian integral plus a recentered outer quadrature, because their joint
// integrands are not absolutely convergent (the twist only oscillates) or
// couple the two copies too strongly for tensor quadrature.
struct Integrand {
  enum class Kind {
    S_hbar_on_mode,    // multiplier of the Gaussian smoothing on e_k
    star_on_modes,     // regularized product integral on (e_k, e_l); needs epsilon > 0
    double_gaussian,   // twisted double-Gaussian moment on mode pair (k, l)
    wick_moment,       // Gaussian moment with holomorphic monomial z^L on e_k
    gauss_star_gauss,  // (G_hbar * G_hbar)(w), the star-root integrand
    gauss_l2           // integral of G_hbar^2 (scalar-fiber norm of the Gaussian)
  };

  Kind kind;
  DeformationData data;
  LatticeIndex k, l;       // mode labels where applicable
  std::vector<int> L;      // moment multi-index (wick_moment)
  std::vector<double> w;   // evaluation point (gauss_star_gauss)
  double epsilon = 0.0;    // Gaussian regularizer (star_on_modes only)
};

std::string kind_name(Integrand::Kind kind);
Integrand::Kind kind_from_name(const std::string& name);

struct IntegralResult {
  Complex value = 0;
  double error_estimate = 0;  // from successive refinement differences
  bool converged = false;
  int refinements_used = 0;
  std::vector<double> refinement_errors;  // successive differences, one per refinement
};

IntegralResult integrate(const Integrand& integrand, const QuadratureConfig& cfg);

// Geometrically decreasing regularizer schedule; extrapolation uses the
// four smallest entries (phase: polynomial Richardson in epsilon^2,
// modulus: polynomial Richardson in epsilon on the log).  The larger entries
// exist to exhibit convergence of the schedule itself.
const std::vector<double>& epsilon_schedule();

struct TwistProbe {
  Complex value;       // extrapolated coefficient of e_{k+l} (phase x modulus)
  double modulus;      // extrapolated modulus, should be 1 up to ~1e-4
  bool converged;
  std::vector<Complex> per_epsilon;  // raw values along the schedule
};

TwistProbe star_modes_probe(const DeformationData& data, const LatticeIndex& k,
                            const LatticeIndex& l, const QuadratureConfig& cfg);

// Runs the regularized product integral on the calibration grid
// (k,l) in {-2..2}^2 x {-2..2}^2 and compares extracted phases with the
// frozen cocycle.  This is the ground truth that pins the twist sign.
VerificationReport calibrate_twist(const QuadratureConfig& cfg, const DeformationData& data);

struct GoldenRecord {
  std::string kind;
  nlohmann::json params;
  Complex value = 0;
  double err = 0;
};

std::vector<GoldenRecord> read_goldens(const std::string& path);               // throws IoError
void write_goldens(const std::string& path, const std::vector<GoldenRecord>&); // throws IoError

// The full calibration task list (standard geometry, n = 1).  Running it
// yields the golden records checked into the repository.
std::vector<Integrand> golden_tasks();
nlohmann::json golden_params(const Integrand& integrand);
std::vector<GoldenRecord> compute_goldens(const QuadratureConfig& cfg);
const GoldenRecord* find_golden(const std::vector<GoldenRecord>& goldens, const std::string& kind,
                                const nlohmann::json& params);

}  // namespace ncdq
