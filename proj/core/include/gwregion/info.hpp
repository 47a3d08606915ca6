#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace gwregion::info {

/// Logarithm base. DSBS quantities are reported in bits, Gaussian ones in nats.
enum class LogBase { bits, nats };

std::string_view unit_name(LogBase base);

/// Probabilities at or below this are treated as exact zeros inside log terms.
inline constexpr double kZeroProbability = 1e-15;

/// Inputs whose sum is within this of 1 are renormalized; larger drift is rejected.
inline constexpr double kNormalizationSlack = 1e-9;

/// Finite probability vector.
class Pmf {
 public:
  /// Validates and normalizes `probs`. Throws DomainError on negative entries,
  /// an empty vector, or a sum that is off by more than kNormalizationSlack.
  explicit Pmf(std::vector<double> probs);

  /// (1 - a, a): the pmf of Bern(a) over {0, 1}.
  static Pmf bernoulli(double a);

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::span<const double> probs() const { return probs_; }

 private:
  std::vector<double> probs_;
};

/// Joint distribution on {0,1}^2, stored row-major: m[2*x + y] = P(X=x, Y=y).
class Joint2x2 {
 public:
  explicit Joint2x2(std::array<double, 4> m);

  /// DSBS(p): uniform X, Y the output of BSC(p).
  static Joint2x2 dsbs(double p);

  double operator()(int x, int y) const { return m_[2 * x + y]; }
  std::span<const double> cells() const { return m_; }
  const std::array<double, 4>& matrix() const { return m_; }

  Pmf marginal_x() const;
  Pmf marginal_y() const;

 private:
  std::array<double, 4> m_;
};

/// Conditional distribution P_{W|XY}; one pmf over W for each (x, y), indexed 2*x + y.
class AuxChannel {
 public:
  static constexpr int kMaxCardinality = 6;

  AuxChannel(int w_card, std::array<std::vector<double>, 4> cols);

  /// Channel that ignores (x, y): every column equals `pmf`.
  static AuxChannel constant(const std::vector<double>& pmf);

  int w_card() const { return w_card_; }
  double operator()(int w, int xy) const { return cols_[xy][w]; }
  const std::vector<double>& column(int xy) const { return cols_[xy]; }

 private:
  int w_card_;
  std::array<std::vector<double>, 4> cols_;
};

/// Mutual-information (or divergence) coordinates (alpha, beta, gamma).
struct RegionPoint {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

/// h(t) = -t log2 t - (1-t) log2(1-t). Inputs within 1e-12 outside [0,1] are clamped.
double binary_entropy(double t);

/// 1 - h(t), computed without cancellation near t = 1/2.
double binary_capacity(double t);

/// Inverse of h restricted to [0, 1/2], by bisection. y is clamped to [0, 1].
double binary_entropy_inv(double y);

/// a * b = a(1-b) + b(1-a).
double binary_convolve(double a, double b);

/// D(q || p). Returns +infinity when q is not absolutely continuous w.r.t. p.
double kl_divergence(std::span<const double> q, std::span<const double> p, LogBase base);
double kl_divergence(const Pmf& q, const Pmf& p, LogBase base);
double kl_divergence(const Joint2x2& q, const Joint2x2& p, LogBase base);

/// (I(X;W), I(Y;W), I(X,Y;W)) for the joint P_XY * P_{W|XY}.
RegionPoint mutual_informations(const Joint2x2& p_xy, const AuxChannel& ch, LogBase base);

/// I(X;Y) of a 2x2 joint.
double mutual_information(const Joint2x2& p_xy, LogBase base);

}  // namespace gwregion::info
