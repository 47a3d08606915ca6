#include "gwregion/dsbs.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gwregion/errors.hpp"
#include "gwregion/format.hpp"
#include "gwregion/info.hpp"

namespace gwregion::dsbs {
namespace {

using info::binary_capacity;
using info::binary_convolve;
using info::binary_entropy_inv;

// h on arguments produced by arithmetic, which may drift slightly past [0, 1].
double h(double t) { return info::binary_entropy(std::clamp(t, 0.0, 1.0)); }

double check_unit(double v, const char* name, double hi = 1.0) {
  if (!(v >= -kTieTolerance && v <= hi + kTieTolerance)) {
    throw DomainError(std::string(name) + " must lie in [0, " + (hi == 1.0 ? "1" : "1/2") +
                      "], got " + format_number(v));
  }
  return std::clamp(v, 0.0, hi);
}

// 1 - (1-p) h(x) - p h(y), written with capacities to avoid cancellation near zero
double d1_clause(double p, double a, double b) {
  const double x = std::clamp((a + b - p) / (2.0 * (1.0 - p)), 0.0, 1.0);
  const double y = std::clamp((a - b + p) / (2.0 * p), 0.0, 1.0);
  return (1.0 - p) * binary_capacity(x) + p * binary_capacity(y);
}

double d2_clause(double p, double a, double b) {
  return 1.0 + info::binary_entropy(p) - h(a) - h(b);
}

RegionLabel coarse_label(double p, double a, double b) {
  const double ab = binary_convolve(a, b);
  const double ap = binary_convolve(a, p);
  const double bp = binary_convolve(b, p);
  if (ab >= p - kTieTolerance && ap >= b - kTieTolerance && bp >= a - kTieTolerance) {
    return RegionLabel::D1;
  }
  if (ab < p) return RegionLabel::D2;
  if (ap < b) return RegionLabel::D3;
  return RegionLabel::D4;
}

// (p - alpha*h^{-1}(1 - beta/alpha)) / (1 - alpha) clause on D3'' (mirror on D4'').
double double_prime_clause(double p, double alpha, double beta) {
  const double t = binary_entropy_inv(1.0 - std::min(beta / alpha, 1.0));
  const double rest = 1.0 - alpha;
  const double tail = rest <= 0.0 ? 0.0 : rest * h((p - alpha * t) / rest);
  return info::binary_entropy(p) + beta - tail;
}

}  // namespace

DsbsSource::DsbsSource(double p) : p_(p) {
  if (!(p > 0.0 && p < 0.5)) {
    throw DomainError("DSBS parameter p must satisfy 0 < p < 1/2, got " + format_number(p));
  }
}

std::string_view to_string(RegionLabel label) {
  switch (label) {
    case RegionLabel::D1: return "D1";
    case RegionLabel::D2: return "D2";
    case RegionLabel::D3: return "D3";
    case RegionLabel::D4: return "D4";
    case RegionLabel::D3p: return "D3p";
    case RegionLabel::D3pp: return "D3pp";
    case RegionLabel::D4p: return "D4p";
    case RegionLabel::D4pp: return "D4pp";
    case RegionLabel::OUTSIDE: return "OUTSIDE";
  }
  return "?";
}

double rate_distortion_dsbs(const DsbsSource& src, double d1, double d2) {
  d1 = check_unit(d1, "d1", 0.5);
  d2 = check_unit(d2, "d2", 0.5);
  const double p = src.p();
  const double a = std::min(d1, d2);
  const double b = std::max(d1, d2);
  const double ab = binary_convolve(a, b);
  if (binary_convolve(a, p) >= b - kTieTolerance && ab >= p - kTieTolerance) {
    return d1_clause(p, a, b);
  }
  if (ab <= p) return d2_clause(p, a, b);
  return binary_capacity(a);
}

double projection_boundary(const DsbsSource& src, double alpha) {
  const double p = src.p();
  // the curve starts at alpha = 2p; below that no constraint binds
  if (alpha <= 2.0 * p) return 0.0;
  return alpha - alpha * h(p / alpha);
}

bool in_projection_region(const DsbsSource& src, double alpha, double beta, double slack) {
  return beta >= projection_boundary(src, alpha) - slack &&
         alpha >= projection_boundary(src, beta) - slack;
}

RegionLabel classify_point(const DsbsSource& src, double alpha, double beta, Level level) {
  alpha = check_unit(alpha, "alpha");
  beta = check_unit(beta, "beta");
  const double p = src.p();
  if (level == Level::fine && !in_projection_region(src, alpha, beta)) return RegionLabel::OUTSIDE;
  const RegionLabel coarse =
      coarse_label(p, binary_entropy_inv(1.0 - alpha), binary_entropy_inv(1.0 - beta));
  if (level == Level::coarse) return coarse;
  const double cap = binary_capacity(p);
  switch (coarse) {
    case RegionLabel::D3:
      return beta >= cap * alpha - kTieTolerance ? RegionLabel::D3p : RegionLabel::D3pp;
    case RegionLabel::D4:
      return alpha >= cap * beta - kTieTolerance ? RegionLabel::D4p : RegionLabel::D4pp;
    default:
      return coarse;
  }
}

double upsilon_star(const DsbsSource& src, double alpha, double beta) {
  alpha = check_unit(alpha, "alpha");
  beta = check_unit(beta, "beta");
  const double p = src.p();
  const double a = binary_entropy_inv(1.0 - alpha);
  const double b = binary_entropy_inv(1.0 - beta);
  switch (coarse_label(p, a, b)) {
    case RegionLabel::D1: return d1_clause(p, a, b);
    case RegionLabel::D2: return d2_clause(p, a, b);
    case RegionLabel::D3: return binary_capacity(a);
    default: return binary_capacity(b);
  }
}

double lower_envelope_dsbs(const DsbsSource& src, double alpha, double beta) {
  const RegionLabel label = classify_point(src, alpha, beta, Level::fine);
  alpha = std::clamp(alpha, 0.0, 1.0);
  beta = std::clamp(beta, 0.0, 1.0);
  switch (label) {
    case RegionLabel::OUTSIDE:
      throw OutsideRegionError("(alpha, beta) lies outside the projection region I0*");
    case RegionLabel::D3p: return alpha;
    case RegionLabel::D4p: return beta;
    case RegionLabel::D3pp: return double_prime_clause(src.p(), alpha, beta);
    case RegionLabel::D4pp: return double_prime_clause(src.p(), beta, alpha);
    default: return upsilon_star(src, alpha, beta);
  }
}

double upper_envelope_dsbs(const DsbsSource& src, double alpha, double beta) {
  alpha = check_unit(alpha, "alpha");
  beta = check_unit(beta, "beta");
  if (!in_projection_region(src, alpha, beta)) {
    throw OutsideRegionError("(alpha, beta) lies outside the projection region I0*");
  }
  return info::binary_entropy(src.p()) + std::min(alpha, beta);
}

double lossy_gw_rate_dsbs(const DsbsSource& src, double r1, double r2, double d1, double d2) {
  if (!(r1 >= 0.0) || !(r2 >= 0.0)) throw DomainError("private rates r1, r2 must be >= 0");
  d1 = check_unit(d1, "d1", 0.5);
  d2 = check_unit(d2, "d2", 0.5);
  const double alpha = std::max(0.0, binary_capacity(d1) - r1);
  const double beta = std::max(0.0, binary_capacity(d2) - r2);
  return upsilon_star(src, alpha, beta);
}

}  // namespace gwregion::dsbs
