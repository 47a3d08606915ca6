#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gwregion/info.hpp"
#include "gwregion/ot.hpp"

// Point evaluation and grid sweeps shared by the CLI and the verification suite.
namespace gwregion::surface {

enum class SourceKind { dsbs, gaussian };

enum class Quantity { increasing, lower, upper, rd, psi_lower, phi_upper, phi_q, conv_phi, lossy };

std::string_view to_string(SourceKind kind);
std::string_view to_string(Quantity which);
/// Throws DomainError for unknown names.
SourceKind parse_source(std::string_view name);
Quantity parse_quantity(std::string_view name);

info::LogBase units(SourceKind kind);

struct Query {
  SourceKind source = SourceKind::dsbs;
  /// p for the DSBS, rho for the Gaussian source.
  double param = 0.05;
  Quantity which = Quantity::increasing;
  double q = -1.0;
  double r1 = 0.0, r2 = 0.0;
  double d1 = 0.1, d2 = 0.1;
};

struct EnvelopeSample {
  double alpha = 0.0;
  double beta = 0.0;
  /// Empty when the point lies outside the region where the quantity is defined.
  std::optional<double> value;
  std::string region;
  /// Optimal coupling, when the quantity has one.
  std::optional<info::Joint2x2> coupling;
  std::optional<ot::Mixture> mixture;
};

/// Evaluates the quantity at one point. The meaning of (x, y) depends on the quantity:
/// region coordinates (alpha, beta) for most quantities, distortions (d1, d2) for rd,
/// and private rates (r1, r2) for lossy. For phi_q only x is used.
/// Throws DomainError on invalid inputs. Points outside I0* yield an empty value
/// for lower and upper instead of throwing.
EnvelopeSample evaluate(const Query& query, double x, double y);

/// Largest grid coordinate for a quantity: 1/2 for distortions, 1 for DSBS
/// coordinates, 2 for Gaussian ones.
double axis_max(const Query& query);

/// steps x steps grid over [0, axis_max]^2 in row-major order (alpha outer).
std::vector<EnvelopeSample> sample_surface(const Query& query, int steps);

}  // namespace gwregion::surface
