#include <doctest.h>

#include <cmath>
#include <random>

#include "gwregion/dsbs.hpp"
#include "gwregion/errors.hpp"
#include "gwregion/info.hpp"
#include "gwregion/oracle.hpp"

using namespace gwregion;
using namespace gwregion::dsbs;
using info::binary_convolve;
using info::binary_entropy;
using info::binary_entropy_inv;

namespace {
// mpmath, 40 digits (tests/oracles/compute_expected.py)
constexpr double kH005 = 0.28639695711595613;
constexpr double kOnePlusH005 = 1.2863969571159561;
constexpr double kCap01 = 0.53100440641071878;
constexpr double kBoundary03 = 0.10499327350549373;
constexpr double kLowerOnBoundary03 = 0.39139023062144986;
constexpr double kLossyArg = 0.33100440641071878;
constexpr double kLossyValue = 0.35223508941722681;

std::vector<double> grid(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
  return v;
}

double ab_to_alpha(double a) { return 1.0 - binary_entropy(a); }
}  // namespace

TEST_CASE("DsbsSource rejects p outside (0, 1/2)") {
  CHECK_THROWS_AS(DsbsSource(0.0), DomainError);
  CHECK_THROWS_AS(DsbsSource(0.5), DomainError);
  CHECK_THROWS_AS(DsbsSource(-0.1), DomainError);
  CHECK(DsbsSource(0.2).p() == 0.2);
}

TEST_CASE("rate_distortion_dsbs examples") {
  const DsbsSource s(0.05);
  CHECK(rate_distortion_dsbs(s, 0.5, 0.5) == 0.0);
  CHECK(std::abs(rate_distortion_dsbs(s, 0.0, 0.0) - kOnePlusH005) <= 1e-12);
  CHECK(std::abs(rate_distortion_dsbs(s, 0.1, 0.3) - kCap01) <= 1e-12);
  CHECK(std::abs(rate_distortion_dsbs(s, 0.3, 0.1) - kCap01) <= 1e-12);
  CHECK_THROWS_AS(rate_distortion_dsbs(s, 0.6, 0.1), DomainError);
  CHECK_THROWS_AS(rate_distortion_dsbs(s, 0.1, -0.1), DomainError);
}

TEST_CASE("classify_point examples") {
  const DsbsSource s(0.05);
  CHECK(classify_point(s, 0.0, 0.0) == RegionLabel::D1);
  CHECK(classify_point(s, 1.0, 1.0) == RegionLabel::D2);
  CHECK(classify_point(s, 0.3, 0.10, Level::fine) == RegionLabel::OUTSIDE);
  CHECK(classify_point(s, 0.3, 0.2) == RegionLabel::D3);
  CHECK(classify_point(s, 0.2, 0.3) == RegionLabel::D4);
  CHECK(to_string(RegionLabel::D3pp) == "D3pp");
}

TEST_CASE("fine labels refine coarse labels") {
  for (double p : {0.05, 0.1, 0.25}) {
    const DsbsSource s(p);
    for (double al : grid(0.0, 1.0, 41)) {
      for (double be : grid(0.0, 1.0, 41)) {
        const auto c = classify_point(s, al, be, Level::coarse);
        const auto f = classify_point(s, al, be, Level::fine);
        CHECK(c != RegionLabel::OUTSIDE);
        if (f == RegionLabel::OUTSIDE) {
          CHECK_FALSE(in_projection_region(s, al, be));
        } else if (c == RegionLabel::D1 || c == RegionLabel::D2) {
          CHECK(f == c);
        } else if (c == RegionLabel::D3) {
          CHECK((f == RegionLabel::D3p || f == RegionLabel::D3pp));
        } else {
          CHECK((f == RegionLabel::D4p || f == RegionLabel::D4pp));
        }
      }
    }
  }
}

TEST_CASE("projection boundary") {
  const DsbsSource s(0.05);
  CHECK(std::abs(projection_boundary(s, 0.3) - kBoundary03) <= 1e-12);
  CHECK(projection_boundary(s, 0.05) == 0.0);
  CHECK(projection_boundary(s, 0.1) == 0.0);
  CHECK(in_projection_region(s, 0.3, kBoundary03));
  CHECK_FALSE(in_projection_region(s, 0.3, 0.10));
  CHECK_FALSE(in_projection_region(s, 0.10, 0.3));
}

TEST_CASE("upsilon_star examples") {
  for (double p : {0.01, 0.05, 0.25, 0.45}) CHECK(upsilon_star(DsbsSource(p), 0.0, 0.0) == 0.0);
  const DsbsSource s(0.05);
  CHECK(std::abs(upsilon_star(s, 1.0, 1.0) - kOnePlusH005) <= 1e-12);
  // (0.3, 0.2) lies in D3, where the envelope is alpha
  CHECK(upsilon_star(s, 0.3, 0.2) == doctest::Approx(0.3).epsilon(1e-15));
  CHECK_THROWS_AS(upsilon_star(s, 1.2, 0.5), DomainError);
}

TEST_CASE("lower and upper envelope examples") {
  const DsbsSource s(0.05);
  CHECK(std::abs(lower_envelope_dsbs(s, 1.0, 1.0) - kOnePlusH005) <= 1e-12);
  CHECK(std::abs(lower_envelope_dsbs(s, 0.3, kBoundary03) - kLowerOnBoundary03) <= 1e-9);
  CHECK(std::abs(upper_envelope_dsbs(s, 0.3, 0.2) - (kH005 + 0.2)) <= 1e-12);
  CHECK(upper_envelope_dsbs(s, 0.0, 0.0) == doctest::Approx(kH005).epsilon(1e-14));
  CHECK_THROWS_AS(lower_envelope_dsbs(s, 0.3, 0.10), OutsideRegionError);
  CHECK_THROWS_AS(upper_envelope_dsbs(s, 0.3, 0.10), OutsideRegionError);
}

TEST_CASE("lossy_gw_rate_dsbs examples") {
  const DsbsSource s(0.05);
  CHECK(lossy_gw_rate_dsbs(s, 0.6, 0.6, 0.1, 0.1) == 0.0);
  CHECK(std::abs(lossy_gw_rate_dsbs(s, 0.0, 0.0, 0.0, 0.0) - kOnePlusH005) <= 1e-12);
  const double v = lossy_gw_rate_dsbs(s, 0.2, 0.2, 0.1, 0.1);
  CHECK(v == doctest::Approx(upsilon_star(s, kLossyArg, kLossyArg)).epsilon(1e-14));
  CHECK(std::abs(v - kLossyValue) <= 1e-12);
  CHECK_THROWS_AS(lossy_gw_rate_dsbs(s, -0.1, 0.0, 0.1, 0.1), DomainError);
  CHECK_THROWS_AS(lossy_gw_rate_dsbs(s, 0.0, 0.0, 0.7, 0.1), DomainError);
}

TEST_CASE("property: upsilon_star equals R(h^-1(1-alpha), h^-1(1-beta))") {
  for (double p : {0.05, 0.1, 0.25, 0.4}) {
    const DsbsSource s(p);
    for (double al : grid(0.0, 1.0, 50)) {
      for (double be : grid(0.0, 1.0, 50)) {
        const double r =
            rate_distortion_dsbs(s, binary_entropy_inv(1.0 - al), binary_entropy_inv(1.0 - be));
        CHECK(std::abs(upsilon_star(s, al, be) - r) <= 1e-12);
      }
    }
  }
}

TEST_CASE("property: upsilon_star is nondecreasing in each argument") {
  for (double p : {0.05, 0.25}) {
    const DsbsSource s(p);
    const auto g = grid(0.0, 1.0, 60);
    for (std::size_t i = 0; i + 1 < g.size(); ++i) {
      for (std::size_t j = 0; j + 1 < g.size(); ++j) {
        const double v = upsilon_star(s, g[i], g[j]);
        CHECK(upsilon_star(s, g[i + 1], g[j]) >= v - 1e-12);
        CHECK(upsilon_star(s, g[i], g[j + 1]) >= v - 1e-12);
      }
    }
  }
}

TEST_CASE("property: upsilon_star is continuous across clause boundaries") {
  constexpr double kStep = 1e-10;
  for (double p : {0.05, 0.1, 0.25, 0.4}) {
    const DsbsSource s(p);
    for (double a : grid(0.001, p - 0.001, 25)) {
      // a*b = p
      const double b = (p - a) / (1.0 - 2.0 * a);
      const double al = ab_to_alpha(a), be = ab_to_alpha(b);
      CHECK(std::abs(upsilon_star(s, al, be + kStep) - upsilon_star(s, al, be - kStep)) <= 1e-8);
    }
    for (double a : grid(0.0, 0.499, 25)) {
      // a*p = b and its mirror
      const double al = ab_to_alpha(a), be = ab_to_alpha(binary_convolve(a, p));
      CHECK(std::abs(upsilon_star(s, al, be + kStep) - upsilon_star(s, al, be - kStep)) <= 1e-8);
      CHECK(std::abs(upsilon_star(s, be + kStep, al) - upsilon_star(s, be - kStep, al)) <= 1e-8);
    }
  }
}

TEST_CASE("property: lower envelope versus upsilon_star and the upper envelope") {
  for (double p : {0.05, 0.1, 0.25}) {
    const DsbsSource s(p);
    for (double al : grid(0.0, 1.0, 41)) {
      for (double be : grid(0.0, 1.0, 41)) {
        if (!in_projection_region(s, al, be)) continue;
        const double lo = lower_envelope_dsbs(s, al, be);
        const double up = upper_envelope_dsbs(s, al, be);
        const double ups = upsilon_star(s, al, be);
        const auto c = classify_point(s, al, be);
        if (c == RegionLabel::D1 || c == RegionLabel::D2) {
          CHECK(lo == ups);
        } else {
          CHECK(lo >= ups - 1e-12);
        }
        CHECK(up >= lo - 1e-12);
      }
    }
  }
}

TEST_CASE("property: upper and lower envelopes coincide on the I0* boundary") {
  for (double p : {0.05, 0.1, 0.2}) {
    const DsbsSource s(p);
    for (double al : grid(2.0 * p, 1.0, 80)) {
      const double be = projection_boundary(s, al);
      CHECK(std::abs(upper_envelope_dsbs(s, al, be) - lower_envelope_dsbs(s, al, be)) <= 1e-9);
      CHECK(std::abs(upper_envelope_dsbs(s, be, al) - lower_envelope_dsbs(s, be, al)) <= 1e-9);
    }
  }
}

TEST_CASE("property: random channels lie in the sandwich") {
  std::mt19937_64 rng(2024);
  for (double p : {0.05, 0.25}) {
    const DsbsSource s(p);
    const auto pxy = info::Joint2x2::dsbs(p);
    for (int i = 0; i < 20000; ++i) {
      const auto t =
          info::mutual_informations(pxy, oracle::random_aux_channel(rng), info::LogBase::bits);
      const double al = std::min(t.alpha, 1.0), be = std::min(t.beta, 1.0);
      REQUIRE(in_projection_region(s, al, be, 1e-9));
      CHECK(t.gamma >= upsilon_star(s, al, be) - 1e-9);
      // equality constraints hold trivially at the channel's own point
      CHECK(t.gamma >= lower_envelope_dsbs(s, al, be) - 1e-9);
      CHECK(t.gamma <= binary_entropy(p) + std::min(al, be) + 1e-9);
    }
  }
}
