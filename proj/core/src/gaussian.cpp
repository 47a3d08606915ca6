#include "gwregion/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gwregion/errors.hpp"
#include "gwregion/format.hpp"
#include "gwregion/optimize.hpp"

namespace gwregion::gaussian {
namespace {

constexpr int kGoldenIterations = 400;
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_rate(double v, const char* name) {
  if (!(v >= 0.0) || std::isinf(v)) {
    throw DomainError(std::string(name) + " must be a finite value >= 0, got " + format_number(v));
  }
}

void check_q(double q) {
  if (!(q < 0.0)) throw DomainError("q must be < 0, got " + format_number(q));
}

// cos(theta) with sin(theta) = exp(-t)
double cosine(double t) { return std::sqrt(-std::expm1(-2.0 * t)); }

// c / x, treating 0 / 0 as 0
double ratio_term(double c, double x) { return c == 0.0 ? 0.0 : c / x; }

}  // namespace

GaussianSource::GaussianSource(double rho) : rho_(rho) {
  if (!(rho > 0.0 && rho < 1.0)) {
    throw DomainError("Gaussian correlation rho must satisfy 0 < rho < 1, got " +
                      format_number(rho));
  }
}

AngleCoords angle_coords(double alpha, double beta) {
  check_rate(alpha, "alpha");
  check_rate(beta, "beta");
  return {std::asin(std::exp(-alpha)), std::asin(std::exp(-beta))};
}

std::string_view to_string(GaussianRegionLabel label) {
  switch (label) {
    case GaussianRegionLabel::G1: return "G1";
    case GaussianRegionLabel::G2: return "G2";
    case GaussianRegionLabel::G3: return "G3";
    case GaussianRegionLabel::G4: return "G4";
  }
  return "?";
}

double rho_hat(const GaussianSource& src, double alpha, double beta) {
  check_rate(alpha, "alpha");
  check_rate(beta, "beta");
  return (src.rho() - cosine(alpha) * cosine(beta)) / std::exp(-alpha - beta);
}

GaussianRegionLabel classify_point_g(const GaussianSource& src, double alpha, double beta) {
  check_rate(alpha, "alpha");
  check_rate(beta, "beta");
  const double rho = src.rho();
  const double ca = cosine(alpha);
  const double cb = cosine(beta);
  const double cc = ca * cb;
  if (cc <= rho + kTieTolerance && rho * ca <= cb + kTieTolerance &&
      rho * cb <= ca + kTieTolerance) {
    return GaussianRegionLabel::G1;
  }
  if (rho <= cc) return GaussianRegionLabel::G2;
  if (rho * ca > cb) return GaussianRegionLabel::G3;
  return GaussianRegionLabel::G4;
}

double upsilon_g_star(const GaussianSource& src, double alpha, double beta) {
  const double rho = src.rho();
  switch (classify_point_g(src, alpha, beta)) {
    case GaussianRegionLabel::G1: {
      const double rh = rho_hat(src, alpha, beta);
      const double one_minus = std::max((1.0 - rh) * (1.0 + rh), kRhoHatFloor);
      // (1 - rho^2) / (1 - rh^2) = 1 + (rh - rho)(rh + rho) / (1 - rh^2), exact at the origin
      return alpha + beta + 0.5 * std::log1p((rh - rho) * (rh + rho) / one_minus);
    }
    case GaussianRegionLabel::G2:
      return alpha + beta + 0.5 * std::log1p(-rho * rho);
    case GaussianRegionLabel::G3:
      return alpha;
    case GaussianRegionLabel::G4:
      return beta;
  }
  return kInf;
}

double lossy_gw_rate_gaussian(const GaussianSource& src, double r1, double r2, double d1,
                              double d2) {
  check_rate(r1, "r1");
  check_rate(r2, "r2");
  if (!(d1 > 0.0) || !(d2 > 0.0)) throw DomainError("distortions d1, d2 must be > 0");
  const double alpha = std::max(0.0, -0.5 * std::log(d1) - r1);
  const double beta = std::max(0.0, -0.5 * std::log(d2) - r2);
  return upsilon_g_star(src, alpha, beta);
}

double upper_envelope_gaussian(const GaussianSource&, double alpha, double beta) {
  check_rate(alpha, "alpha");
  check_rate(beta, "beta");
  return kInf;
}

double psi_lower_gaussian(const GaussianSource& src, double alpha, double beta) {
  check_rate(alpha, "alpha");
  check_rate(beta, "beta");
  const double r2 = src.rho() * src.rho();
  if (beta < r2 * alpha) return alpha;
  if (r2 * beta > alpha) return beta;
  return (alpha + beta - 2.0 * src.rho() * std::sqrt(alpha * beta)) / (1.0 - r2);
}

double phi_upper_gaussian(const GaussianSource& src, double alpha, double beta) {
  check_rate(alpha, "alpha");
  check_rate(beta, "beta");
  const double rho = src.rho();
  return (alpha + beta + 2.0 * rho * std::sqrt(alpha * beta)) / (1.0 - rho * rho);
}

double phi_q_gaussian(const GaussianSource& src, double q, double alpha) {
  check_q(q);
  check_rate(alpha, "alpha");
  return (1.0 - q) * alpha / (1.0 - q - src.rho() * src.rho());
}

double hyper_sup_psi(const GaussianSource& src, double alpha, double beta) {
  check_rate(alpha, "alpha");
  check_rate(beta, "beta");
  const double r2 = src.rho() * src.rho();
  // s = 1/p in [0, 1]; on the boundary 1/q = (1 - s) / (1 - s + rho^2 s)
  auto neg = [&](double s) { return -(alpha * s + beta * (1.0 - s) / (1.0 - s + r2 * s)); };
  return -optimize::golden_section_minimize(neg, 0.0, 1.0, kGoldenIterations).value;
}

double hyper_inf_phibar(const GaussianSource& src, double alpha, double beta) {
  check_rate(alpha, "alpha");
  check_rate(beta, "beta");
  const double r2 = src.rho() * src.rho();
  // p in (0, 1 - rho^2), q = 1 - rho^2 / (1 - p) < 0
  auto f = [&](double p) {
    const double den = 1.0 - p - r2;
    if (beta > 0.0 && den <= 0.0) return kInf;
    return ratio_term(alpha, p) + ratio_term(beta * (1.0 - p), den);
  };
  return optimize::golden_section_minimize(f, 0.0, 1.0 - r2, kGoldenIterations).value;
}

double hyper_inf_phiq(const GaussianSource& src, double q, double alpha) {
  check_q(q);
  check_rate(alpha, "alpha");
  const double r2 = src.rho() * src.rho();
  // alpha/p over the p in (0, 1] admissible for this q
  auto f = [&](double p) {
    if ((1.0 - p) * (1.0 - q) < r2) return kInf;
    return ratio_term(alpha, p);
  };
  return optimize::golden_section_minimize(f, 0.0, 1.0, kGoldenIterations).value;
}

}  // namespace gwregion::gaussian
