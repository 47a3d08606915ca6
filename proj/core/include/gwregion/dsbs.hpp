#pragma once

#include <string_view>

// Closed forms for the doubly symmetric binary source. All values are in bits.
namespace gwregion::dsbs {

class DsbsSource {
 public:
  /// Throws DomainError unless 0 < p < 1/2.
  explicit DsbsSource(double p);
  double p() const { return p_; }

 private:
  double p_;
};

enum class RegionLabel { D1, D2, D3, D4, D3p, D3pp, D4p, D4pp, OUTSIDE };

std::string_view to_string(RegionLabel label);

/// coarse: one of D1..D4. fine: D1, D2, D3p, D3pp, D4p, D4pp or OUTSIDE.
enum class Level { coarse, fine };

/// Equalities within this tolerance resolve to the D1 clause.
inline constexpr double kTieTolerance = 1e-12;

/// Joint Hamming rate-distortion function R(d1, d2) of the source.
double rate_distortion_dsbs(const DsbsSource& src, double d1, double d2);

RegionLabel classify_point(const DsbsSource& src, double alpha, double beta,
                           Level level = Level::coarse);

/// Lower edge of the projection region: alpha - alpha*h(p/alpha), or 0 when alpha <= 2p.
double projection_boundary(const DsbsSource& src, double alpha);

/// Membership in I0*, with `slack` added to both boundary comparisons.
bool in_projection_region(const DsbsSource& src, double alpha, double beta,
                          double slack = kTieTolerance);

/// Lower increasing envelope of the mutual information region.
double upsilon_star(const DsbsSource& src, double alpha, double beta);

/// Lower envelope on I0*. Throws OutsideRegionError outside I0*.
double lower_envelope_dsbs(const DsbsSource& src, double alpha, double beta);

/// Upper envelope h(p) + min(alpha, beta) on I0*. Throws OutsideRegionError outside I0*.
double upper_envelope_dsbs(const DsbsSource& src, double alpha, double beta);

/// Minimal common rate for private rates (r1, r2) and Hamming distortions (d1, d2).
double lossy_gw_rate_dsbs(const DsbsSource& src, double r1, double r2, double d1, double d2);

}  // namespace gwregion::dsbs
