#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "gwregion/dsbs.hpp"
#include "gwregion/info.hpp"

// Independent checks for the closed forms: explicit achievability constructions,
// a multistart brute-force search over auxiliary channels, and a time-sharing
// search for the convex envelope of phi_lower.
namespace gwregion::oracle {

struct OracleConfig {
  int restarts = 64;
  int w_card = 6;
  std::vector<double> penalty_schedule{10.0, 1e2, 1e3, 1e4};
  int max_iters = 2000;
  std::uint64_t seed = 0;
  /// Worker threads for independent restarts. Results do not depend on this.
  int threads = 1;
};

/// Throws DomainError when the config is unusable.
void validate(const OracleConfig& cfg);

enum class Mode { increasing, equality, maximize };

struct OracleResult {
  info::AuxChannel best_channel = info::AuxChannel::constant({1.0});
  /// Recomputed from best_channel by mutual_informations, in bits.
  info::RegionPoint achieved;
  double constraint_violation = 0.0;
  /// False when no restart reached violation <= 1e-4.
  bool converged = false;
};

// Constructions. Each returns P_{W|XY} for DSBS(p).

/// X -> BSC(a) -> U -> BSC(c) -> V -> BSC(b) -> Y with W = (U, V). Needs a*b <= p.
info::AuxChannel construct_w_cascade(double p, double a, double b);
/// W ~ Bern(1/2), W -> BSC(a) -> X -> BSC(p) -> Y.
info::AuxChannel construct_w_side(double p, double a);
/// Two-state coupling of BSC(a) and BSC(b). Needs the four cell masses in [0, 1].
info::AuxChannel construct_w_coupled(double p, double a, double b);
/// W = (W', Z) with Z = X xor Y and W' the output of BSC(a) on X.
info::AuxChannel construct_w_upper(double p, double a);

/// The same channel with the roles of X and Y exchanged.
info::AuxChannel mirror(const info::AuxChannel& ch);

/// Closed-form triple, in nats, of the jointly Gaussian W with conditional
/// variances n1, n2. Throws DomainError if the induced correlation is outside [0, 1).
info::RegionPoint construct_w_gaussian(double rho, double n1, double n2);

/// Triple, in nats, of a jointly Gaussian W whose conditional covariance is
/// Sigma^{1/2} M Sigma^{1/2} with M = R(angle) diag(l1, l2) R(angle)^T, 0 < l <= 1.
info::RegionPoint gaussian_w_triple(double rho, double l1, double l2, double angle);

/// Random channel: uniform |W| in [2, 6], softmax of scaled Gaussian logits.
info::AuxChannel random_aux_channel(std::mt19937_64& rng);

/// Multistart penalized simplex search over P_{W|XY} with |W| = cfg.w_card.
/// increasing: min gamma s.t. I(X;W) >= alpha, I(Y;W) >= beta.
/// equality: min gamma s.t. equalities. maximize: max gamma s.t. equalities.
OracleResult brute_force_lower(const dsbs::DsbsSource& src, double alpha, double beta,
                               const OracleConfig& cfg, Mode mode = Mode::increasing);

enum class ShareMode { equality, at_least };

struct TimeSharingResult {
  double value = 0.0;
  double constraint_violation = 0.0;
  bool converged = false;
  std::vector<double> weights;
  /// (s_i, t_i) divergence coordinates of each component.
  std::vector<std::pair<double, double>> points;
};

/// min sum q_i phi_lower(s_i, t_i) over 3-point mixtures with sum q_i (s_i, t_i)
/// equal to (at least, in at_least mode) (alpha, beta). Uses cfg.restarts,
/// cfg.max_iters and cfg.seed.
TimeSharingResult timesharing_conv_envelope(double p_hat, double alpha, double beta,
                                            const OracleConfig& cfg,
                                            ShareMode mode = ShareMode::equality);

}  // namespace gwregion::oracle
