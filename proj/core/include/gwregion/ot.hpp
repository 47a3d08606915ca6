#pragma once

#include <string_view>
#include <vector>

#include "gwregion/info.hpp"

// Optimal-transport divergence machinery for the DSBS reference measure.
//
// Marginal convention: a binary pmf is (P(0), P(1)), and the (a, b) arguments
// below are the probabilities of symbol 1 under Q_X and Q_Y. In the region
// coordinates a = h^{-1}(1 - alpha) and b = h^{-1}(1 - beta). Values are in bits.
namespace gwregion::ot {

struct OtResult {
  double value = 0.0;
  info::Joint2x2 coupling;
};

/// min D(Q_XY || P_XY) over couplings of (qx, qy), by golden section on Q_XY(1,1).
OtResult ot_divergence_2x2(const info::Pmf& qx, const info::Pmf& qy, const info::Joint2x2& p_xy);

/// The coupling [[1+q-a-b, b-q], [a-q, q]].
info::Joint2x2 coupling_from(double a, double b, double q);

/// Closed-form optimal Q_XY(1,1) for marginals Bern(a), Bern(b) against DSBS(p_hat).
double q_opt_closed_form(double a, double b, double p_hat);

double phi_lower(double p_hat, double alpha, double beta);
/// phi_lower evaluated directly at marginals Bern(a), Bern(b), with a, b in [0, 1/2].
double phi_lower_from_marginals(double p_hat, double a, double b);
double phi_upper(double p_hat, double alpha, double beta);
double psi_lower_dsbs(double p_hat, double alpha, double beta);

/// Cells of the five-case convex envelope formula.
enum class ConvRegion { H1, H2, H3, H4, H5 };
std::string_view to_string(ConvRegion region);

/// A time-sharing description: weights[i] is the mass of component i.
struct Mixture {
  std::vector<double> weights;
  std::vector<info::Joint2x2> components;
};

struct ConvResult {
  double value = 0.0;
  ConvRegion region = ConvRegion::H1;
  Mixture mixture;
};

/// Lower convex envelope of phi_lower together with an optimal mixture.
ConvResult conv_phi_lower(double p_hat, double alpha, double beta);

/// (1 - h(a' * p_hat)) / (1 - h(a')), increasing in a' on [0, 1/2).
double a_prime_ratio(double p_hat, double a_prime);

/// Root a' of a_prime_ratio(p_hat, a') = ratio. The attainable range is
/// [1 - h(p_hat), (1 - 2 p_hat)^2); DomainError outside it.
double a_prime_root(double p_hat, double ratio);

/// min over beta in [0,1] of phi_lower(alpha, beta) - beta / q, for q < 0.
double phi_q_dsbs(double p_hat, double q, double alpha);

/// p_hat* with q_opt_closed_form(a, b, p_hat*) = (a + b - p) / 2.
/// Throws NoRootError when the bracket does not straddle a root.
double shadow_measure(double p, double a, double b);

/// [[1-(a+b+p)/2, (-a+b+p)/2], [(a-b+p)/2, (a+b-p)/2]].
info::Joint2x2 shadow_coupling(double p, double a, double b);

}  // namespace gwregion::ot
