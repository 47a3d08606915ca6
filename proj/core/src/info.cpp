#include "gwregion/info.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "gwregion/errors.hpp"
#include "gwregion/format.hpp"

namespace gwregion::info {
namespace {

constexpr double kUnitSlack = 1e-12;

double ln_to(LogBase base) { return base == LogBase::bits ? 1.0 / std::log(2.0) : 1.0; }

// Shared validation for every pmf-like container.
void normalize_in_place(std::span<double> v, const char* what) {
  if (v.empty()) throw DomainError(std::string(what) + ": empty probability vector");
  double sum = 0.0;
  for (double& x : v) {
    if (!std::isfinite(x)) throw DomainError(std::string(what) + ": non-finite probability");
    if (x < -kZeroProbability) throw DomainError(std::string(what) + ": negative probability");
    x = std::max(x, 0.0);
    sum += x;
  }
  if (std::abs(sum - 1.0) > kNormalizationSlack) {
    throw DomainError(std::string(what) + ": probabilities sum to " + format_number(sum));
  }
  for (double& x : v) x /= sum;
}

double xlogx_ratio(double q, double q_over) {
  // q * ln(q / q_over) with the 0 log 0 = 0 convention
  if (q <= kZeroProbability) return 0.0;
  return q * std::log(q / q_over);
}

}  // namespace

std::string_view unit_name(LogBase base) { return base == LogBase::bits ? "bits" : "nats"; }

Pmf::Pmf(std::vector<double> probs) : probs_(std::move(probs)) {
  normalize_in_place(probs_, "Pmf");
}

Pmf Pmf::bernoulli(double a) {
  if (!(a >= -kUnitSlack && a <= 1.0 + kUnitSlack)) throw DomainError("Bern(a): a outside [0,1]");
  a = std::clamp(a, 0.0, 1.0);
  return Pmf({1.0 - a, a});
}

Joint2x2::Joint2x2(std::array<double, 4> m) : m_(m) { normalize_in_place(m_, "Joint2x2"); }

Joint2x2 Joint2x2::dsbs(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("DSBS(p): p outside [0,1]");
  return Joint2x2({(1.0 - p) / 2.0, p / 2.0, p / 2.0, (1.0 - p) / 2.0});
}

Pmf Joint2x2::marginal_x() const { return Pmf({m_[0] + m_[1], m_[2] + m_[3]}); }
Pmf Joint2x2::marginal_y() const { return Pmf({m_[0] + m_[2], m_[1] + m_[3]}); }

AuxChannel::AuxChannel(int w_card, std::array<std::vector<double>, 4> cols)
    : w_card_(w_card), cols_(std::move(cols)) {
  if (w_card_ < 1 || w_card_ > kMaxCardinality) {
    throw DomainError("AuxChannel: |W| must be in [1, 6], got " + std::to_string(w_card_));
  }
  for (auto& col : cols_) {
    if (static_cast<int>(col.size()) != w_card_) {
      throw DomainError("AuxChannel: column length does not match |W|");
    }
    normalize_in_place(col, "AuxChannel column");
  }
}

AuxChannel AuxChannel::constant(const std::vector<double>& pmf) {
  return AuxChannel(static_cast<int>(pmf.size()), {pmf, pmf, pmf, pmf});
}

double binary_entropy(double t) {
  if (!(t >= -kUnitSlack && t <= 1.0 + kUnitSlack)) {
    throw DomainError("binary_entropy: argument " + format_number(t) + " outside [0,1]");
  }
  t = std::clamp(t, 0.0, 1.0);
  double h = 0.0;
  if (t > 0.0) h -= t * std::log2(t);
  if (t < 1.0) h -= (1.0 - t) * std::log2(1.0 - t);
  return h;
}

double binary_capacity(double t) {
  if (!(t >= -kUnitSlack && t <= 1.0 + kUnitSlack)) {
    throw DomainError("binary_capacity: argument outside [0,1]");
  }
  t = std::clamp(t, 0.0, 1.0);
  const double d = std::abs(t - 0.5);
  if (d >= 0.25) return 1.0 - binary_entropy(t);
  // 1 - h(1/2 - d) = [(1+2d) ln(1+2d) + (1-2d) ln(1-2d)] / (2 ln 2)
  const double u = 2.0 * d;
  return ((1.0 + u) * std::log1p(u) + (1.0 - u) * std::log1p(-u)) / (2.0 * std::log(2.0));
}

double binary_entropy_inv(double y) {
  if (std::isnan(y)) throw DomainError("binary_entropy_inv: NaN argument");
  y = std::clamp(y, 0.0, 1.0);
  if (y == 0.0) return 0.0;
  if (y == 1.0) return 0.5;
  double lo = 0.0;
  double hi = 0.5;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (binary_entropy(mid) < y) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return std::abs(binary_entropy(lo) - y) <= std::abs(binary_entropy(hi) - y) ? lo : hi;
}

double binary_convolve(double a, double b) { return a * (1.0 - b) + b * (1.0 - a); }

double kl_divergence(std::span<const double> q, std::span<const double> p, LogBase base) {
  if (q.size() != p.size()) throw DomainError("kl_divergence: shape mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (q[i] <= kZeroProbability) continue;
    if (p[i] <= kZeroProbability) return std::numeric_limits<double>::infinity();
    d += xlogx_ratio(q[i], p[i]);
  }
  return std::max(d, 0.0) * ln_to(base);
}

double kl_divergence(const Pmf& q, const Pmf& p, LogBase base) {
  return kl_divergence(q.probs(), p.probs(), base);
}

double kl_divergence(const Joint2x2& q, const Joint2x2& p, LogBase base) {
  return kl_divergence(q.cells(), p.cells(), base);
}

RegionPoint mutual_informations(const Joint2x2& p_xy, const AuxChannel& ch, LogBase base) {
  const int wc = ch.w_card();
  const double px[2] = {p_xy(0, 0) + p_xy(0, 1), p_xy(1, 0) + p_xy(1, 1)};
  const double py[2] = {p_xy(0, 0) + p_xy(1, 0), p_xy(0, 1) + p_xy(1, 1)};

  double alpha = 0.0, beta = 0.0, gamma = 0.0;
  for (int w = 0; w < wc; ++w) {
    double q[4];
    for (int xy = 0; xy < 4; ++xy) q[xy] = p_xy.cells()[xy] * ch(w, xy);
    const double qw = q[0] + q[1] + q[2] + q[3];
    if (qw <= kZeroProbability) continue;
    const double qwx[2] = {q[0] + q[1], q[2] + q[3]};
    const double qwy[2] = {q[0] + q[2], q[1] + q[3]};
    for (int i = 0; i < 2; ++i) {
      alpha += xlogx_ratio(qwx[i], qw * px[i]);
      beta += xlogx_ratio(qwy[i], qw * py[i]);
    }
    for (int xy = 0; xy < 4; ++xy) gamma += xlogx_ratio(q[xy], qw * p_xy.cells()[xy]);
  }
  const double s = ln_to(base);
  return {std::max(alpha, 0.0) * s, std::max(beta, 0.0) * s, std::max(gamma, 0.0) * s};
}

double mutual_information(const Joint2x2& p_xy, LogBase base) {
  const Pmf px = p_xy.marginal_x();
  const Pmf py = p_xy.marginal_y();
  double i = 0.0;
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) i += xlogx_ratio(p_xy(x, y), px[x] * py[y]);
  }
  return std::max(i, 0.0) * ln_to(base);
}

}  // namespace gwregion::info
