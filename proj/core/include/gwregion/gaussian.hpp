#pragma once

#include <string_view>

// Closed forms for the unit-variance bivariate Gaussian source. All values are in nats.
namespace gwregion::gaussian {

class GaussianSource {
 public:
  /// Throws DomainError unless 0 < rho < 1.
  explicit GaussianSource(double rho);
  double rho() const { return rho_; }

 private:
  double rho_;
};

/// sin(theta_alpha) = exp(-alpha). Only used for reporting; clause tests work on cosines.
struct AngleCoords {
  double theta_alpha = 0.0;
  double theta_beta = 0.0;
};

AngleCoords angle_coords(double alpha, double beta);

enum class GaussianRegionLabel { G1, G2, G3, G4 };

std::string_view to_string(GaussianRegionLabel label);

inline constexpr double kTieTolerance = 1e-12;
/// Floor applied to 1 - rho_hat^2 in the G1 clause.
inline constexpr double kRhoHatFloor = 1e-14;

/// (rho - cos(theta_a) cos(theta_b)) / (sin(theta_a) sin(theta_b)).
double rho_hat(const GaussianSource& src, double alpha, double beta);

GaussianRegionLabel classify_point_g(const GaussianSource& src, double alpha, double beta);

/// Lower increasing envelope of the Gaussian mutual information region.
double upsilon_g_star(const GaussianSource& src, double alpha, double beta);

/// Minimal common rate for private rates (r1, r2) and quadratic distortions (d1, d2).
double lossy_gw_rate_gaussian(const GaussianSource& src, double r1, double r2, double d1,
                              double d2);

/// The upper envelope is unbounded for the Gaussian source; always +infinity.
double upper_envelope_gaussian(const GaussianSource& src, double alpha, double beta);

// Divergence-region envelopes.
double psi_lower_gaussian(const GaussianSource& src, double alpha, double beta);
double phi_upper_gaussian(const GaussianSource& src, double alpha, double beta);
/// Requires q < 0.
double phi_q_gaussian(const GaussianSource& src, double q, double alpha);

// The same envelopes recomputed by optimizing alpha/p + beta/q over the
// hypercontractivity boundary (p - 1)(q - 1) = rho^2.
double hyper_sup_psi(const GaussianSource& src, double alpha, double beta);
double hyper_inf_phibar(const GaussianSource& src, double alpha, double beta);
double hyper_inf_phiq(const GaussianSource& src, double q, double alpha);

}  // namespace gwregion::gaussian
