#include "gwregion/ot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "gwregion/errors.hpp"
#include "gwregion/format.hpp"
#include "gwregion/optimize.hpp"

namespace gwregion::ot {
namespace {

using info::binary_capacity;
using info::binary_convolve;
using info::binary_entropy_inv;
using info::Joint2x2;

constexpr int kGoldenIterations = 300;
constexpr double kTie = 1e-12;

void check_p_hat(double p_hat) {
  if (!(p_hat > 0.0 && p_hat < 0.5)) {
    throw DomainError("reference parameter p_hat must satisfy 0 < p_hat < 1/2, got " +
                      format_number(p_hat));
  }
}

double check_unit(double v, const char* name) {
  if (!(v >= -kTie && v <= 1.0 + kTie)) {
    throw DomainError(std::string(name) + " must lie in [0, 1], got " + format_number(v));
  }
  return std::clamp(v, 0.0, 1.0);
}

std::array<double, 4> cells(double a, double b, double q) {
  return {std::max(0.0, 1.0 + q - a - b), std::max(0.0, b - q), std::max(0.0, a - q),
          std::max(0.0, q)};
}

double kl_bits(const std::array<double, 4>& q, const std::array<double, 4>& p) {
  return info::kl_divergence(std::span<const double>(q), std::span<const double>(p),
                             info::LogBase::bits);
}

double phi_lower_ab(double p_hat, double a, double b) {
  const double q = q_opt_closed_form(a, b, p_hat);
  const std::array<double, 4> ref{(1.0 - p_hat) / 2.0, p_hat / 2.0, p_hat / 2.0,
                                   (1.0 - p_hat) / 2.0};
  return kl_bits(cells(a, b, q), ref);
}

double kl_bern_bits(double t, double s) {
  const std::array<double, 2> q{1.0 - t, t};
  const std::array<double, 2> p{1.0 - s, s};
  return info::kl_divergence(std::span<const double>(q), std::span<const double>(p),
                             info::LogBase::bits);
}

// D-hat-4 cell, and D-hat-5 with the roles of X and Y swapped.
ConvResult time_share_corner(double p_hat, double alpha, double beta, bool swap) {
  const double t = binary_entropy_inv(1.0 - beta / alpha);
  ConvResult r;
  r.value = alpha + alpha * kl_bern_bits(t, p_hat);
  r.region = swap ? ConvRegion::H5 : ConvRegion::H4;
  const Joint2x2 corner = swap ? Joint2x2({1.0 - t, 0.0, t, 0.0}) : Joint2x2({1.0 - t, t, 0.0, 0.0});
  r.mixture.weights = {1.0 - alpha, alpha};
  r.mixture.components = {Joint2x2::dsbs(p_hat), corner};
  return r;
}

// D-hat-2 cell, and D-hat-3 with the roles swapped.
ConvResult time_share_origin(double p_hat, double alpha, double beta, bool swap) {
  const double a_prime = a_prime_root(p_hat, beta / alpha);
  const double theta = std::min(1.0, alpha / binary_capacity(a_prime));
  const double u = 1.0 - a_prime;
  const double v = a_prime;
  // X ~ Bern(a') passed through BSC(p_hat)
  std::array<double, 4> m{u * (1.0 - p_hat), u * p_hat, v * p_hat, v * (1.0 - p_hat)};
  if (swap) std::swap(m[1], m[2]);
  ConvResult r;
  r.value = alpha;
  r.region = swap ? ConvRegion::H3 : ConvRegion::H2;
  r.mixture.weights = {1.0 - theta, theta};
  r.mixture.components = {Joint2x2::dsbs(p_hat), Joint2x2(m)};
  return r;
}

}  // namespace

Joint2x2 coupling_from(double a, double b, double q) { return Joint2x2(cells(a, b, q)); }

OtResult ot_divergence_2x2(const info::Pmf& qx, const info::Pmf& qy, const Joint2x2& p_xy) {
  if (qx.size() != 2 || qy.size() != 2) throw DomainError("marginals must be binary pmfs");
  for (double c : p_xy.cells()) {
    if (!(c > 0.0)) throw DomainError("reference joint must be strictly positive");
  }
  const double a = qx[1];
  const double b = qy[1];
  const double lo = std::max(0.0, a + b - 1.0);
  const double hi = std::min(a, b);
  auto f = [&](double q) { return kl_bits(cells(a, b, q), p_xy.matrix()); };
  const auto best = optimize::golden_section_minimize(f, lo, hi, kGoldenIterations);
  return {best.value, coupling_from(a, b, best.x)};
}

double q_opt_closed_form(double a, double b, double p_hat) {
  check_p_hat(p_hat);
  const double k = (1.0 - p_hat) / p_hat;
  const double kappa = k * k;
  const double km1 = kappa - 1.0;
  // smaller root of (kappa-1) q^2 - ((kappa-1)(a+b)+1) q + kappa a b, in conjugate form
  const double disc = km1 * km1 * (a - b) * (a - b) + 2.0 * km1 * binary_convolve(a, b) + 1.0;
  const double lin = km1 * (a + b) + 1.0;
  return 2.0 * kappa * a * b / (lin + std::sqrt(std::max(disc, 0.0)));
}

double phi_lower_from_marginals(double p_hat, double a, double b) {
  check_p_hat(p_hat);
  return phi_lower_ab(p_hat, a, b);
}

double phi_lower(double p_hat, double alpha, double beta) {
  check_p_hat(p_hat);
  alpha = check_unit(alpha, "alpha");
  beta = check_unit(beta, "beta");
  return phi_lower_ab(p_hat, binary_entropy_inv(1.0 - alpha), binary_entropy_inv(1.0 - beta));
}

double phi_upper(double p_hat, double alpha, double beta) {
  check_p_hat(p_hat);
  alpha = check_unit(alpha, "alpha");
  beta = check_unit(beta, "beta");
  return phi_lower_ab(p_hat, binary_entropy_inv(1.0 - alpha),
                      1.0 - binary_entropy_inv(1.0 - beta));
}

double psi_lower_dsbs(double p_hat, double alpha, double beta) {
  check_p_hat(p_hat);
  alpha = check_unit(alpha, "alpha");
  beta = check_unit(beta, "beta");
  const double a = binary_entropy_inv(1.0 - alpha);
  const double b = binary_entropy_inv(1.0 - beta);
  const double ap = binary_convolve(a, p_hat);
  const double bp = binary_convolve(b, p_hat);
  if (ap >= b - kTie && bp >= a - kTie) return phi_lower_ab(p_hat, a, b);
  return ap < b ? alpha : beta;
}

std::string_view to_string(ConvRegion region) {
  switch (region) {
    case ConvRegion::H1: return "Dhat1";
    case ConvRegion::H2: return "Dhat2";
    case ConvRegion::H3: return "Dhat3";
    case ConvRegion::H4: return "Dhat4";
    case ConvRegion::H5: return "Dhat5";
  }
  return "?";
}

ConvResult conv_phi_lower(double p_hat, double alpha, double beta) {
  check_p_hat(p_hat);
  alpha = check_unit(alpha, "alpha");
  beta = check_unit(beta, "beta");
  const double a = binary_entropy_inv(1.0 - alpha);
  const double b = binary_entropy_inv(1.0 - beta);
  const double ap = binary_convolve(a, p_hat);
  const double bp = binary_convolve(b, p_hat);
  if (ap >= b - kTie && bp >= a - kTie) {
    const double q = q_opt_closed_form(a, b, p_hat);
    ConvResult r;
    r.value = kl_bits(cells(a, b, q), Joint2x2::dsbs(p_hat).matrix());
    r.region = ConvRegion::H1;
    r.mixture.weights = {1.0};
    r.mixture.components = {coupling_from(a, b, q)};
    return r;
  }
  const double cap = binary_capacity(p_hat);
  if (beta < cap * alpha) return time_share_corner(p_hat, alpha, beta, false);
  if (alpha < cap * beta) return time_share_corner(p_hat, beta, alpha, true);
  return ap < b ? time_share_origin(p_hat, alpha, beta, false)
                : time_share_origin(p_hat, beta, alpha, true);
}

double a_prime_ratio(double p_hat, double a_prime) {
  check_p_hat(p_hat);
  if (a_prime >= 0.5) return (1.0 - 2.0 * p_hat) * (1.0 - 2.0 * p_hat);
  return binary_capacity(binary_convolve(a_prime, p_hat)) / binary_capacity(a_prime);
}

double a_prime_root(double p_hat, double ratio) {
  check_p_hat(p_hat);
  const double lo_ratio = binary_capacity(p_hat);
  const double hi_ratio = (1.0 - 2.0 * p_hat) * (1.0 - 2.0 * p_hat);
  if (!(ratio >= lo_ratio - kTie && ratio < hi_ratio)) {
    throw DomainError("ratio " + format_number(ratio) + " outside the attainable range [" +
                      format_number(lo_ratio) + ", " + format_number(hi_ratio) + ")");
  }
  if (ratio <= lo_ratio) return 0.0;
  return optimize::bisect_increasing(
      [&](double x) { return a_prime_ratio(p_hat, x) - ratio; }, 0.0, 0.5);
}

double phi_q_dsbs(double p_hat, double q, double alpha) {
  check_p_hat(p_hat);
  if (!(q < 0.0)) throw DomainError("q must be < 0, got " + format_number(q));
  alpha = check_unit(alpha, "alpha");
  const double a = binary_entropy_inv(1.0 - alpha);
  auto f = [&](double beta) {
    return phi_lower_ab(p_hat, a, binary_entropy_inv(1.0 - beta)) - beta / q;
  };
  // coarse scan to locate the basin, then golden section around it
  constexpr int kScan = 64;
  int best = 0;
  double best_val = f(0.0);
  for (int i = 1; i <= kScan; ++i) {
    const double v = f(static_cast<double>(i) / kScan);
    if (v < best_val) {
      best_val = v;
      best = i;
    }
  }
  const double lo = static_cast<double>(std::max(best - 1, 0)) / kScan;
  const double hi = static_cast<double>(std::min(best + 1, kScan)) / kScan;
  const auto m = optimize::golden_section_minimize(f, lo, hi, kGoldenIterations);
  return std::max(0.0, std::min(m.value, best_val));
}

double shadow_measure(double p, double a, double b) {
  check_p_hat(p);
  if (a > b) std::swap(a, b);
  if (!(a >= 0.0 && b <= 0.5)) throw DomainError("shadow_measure needs 0 <= a <= b <= 1/2");
  const double target = (a + b - p) / 2.0;
  constexpr double kNudge = 1e-9;
  const double lo = (a == b ? 0.0 : (b - a) / (1.0 - 2.0 * a)) + kNudge;
  const double hi = 0.5 - kNudge;
  if (!(lo < hi)) throw NoRootError("shadow_measure: empty bracket");
  return optimize::false_position([&](double s) { return q_opt_closed_form(a, b, s) - target; },
                                  lo, hi, 1e-13);
}

Joint2x2 shadow_coupling(double p, double a, double b) {
  return Joint2x2({1.0 - (a + b + p) / 2.0, (-a + b + p) / 2.0, (a - b + p) / 2.0,
                   (a + b - p) / 2.0});
}

}  // namespace gwregion::ot
