#include <doctest.h>

#include <cmath>
#include <random>

#include "gwregion/dsbs.hpp"
#include "gwregion/errors.hpp"
#include "gwregion/info.hpp"
#include "gwregion/ot.hpp"

using namespace gwregion;
using namespace gwregion::ot;
using info::binary_capacity;
using info::binary_convolve;
using info::binary_entropy;
using info::binary_entropy_inv;
using info::Joint2x2;
using info::Pmf;

namespace {
// mpmath, 40 digits (tests/oracles/compute_expected.py)
constexpr double kKlPointDsbs = 1.0740005814437769;
constexpr double kQopt0202 = 0.1802613368113262;
constexpr double kQopt0103 = 0.099045588011069332;
constexpr double kPhiLower0302 = 0.3071332893567187;
constexpr double kConvD4 = 0.6877624856392423;
constexpr double kCapP = 0.71360304288404387;

std::vector<double> grid(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
  return v;
}

double divergence(const Joint2x2& q, double p) {
  return info::kl_divergence(q, Joint2x2::dsbs(p), info::LogBase::bits);
}

void check_marginals(const Joint2x2& q, double a, double b, double tol) {
  CHECK(std::abs(q.marginal_x()[1] - a) <= tol);
  CHECK(std::abs(q.marginal_y()[1] - b) <= tol);
}
}  // namespace

TEST_CASE("ot_divergence_2x2 examples") {
  const auto p = Joint2x2::dsbs(0.05);
  const auto same = ot_divergence_2x2(p.marginal_x(), p.marginal_y(), p);
  CHECK(same.value <= 1e-15);
  for (int i = 0; i < 4; ++i) CHECK(same.coupling.cells()[i] == doctest::Approx(p.cells()[i]));

  const auto point = ot_divergence_2x2(Pmf({1.0, 0.0}), Pmf({1.0, 0.0}), p);
  CHECK(std::abs(point.value - kKlPointDsbs) <= 1e-12);
  CHECK(point.coupling(0, 0) == 1.0);

  const auto r = ot_divergence_2x2(Pmf::bernoulli(0.2), Pmf::bernoulli(0.2), p);
  CHECK(std::abs(r.coupling(1, 1) - q_opt_closed_form(0.2, 0.2, 0.05)) <= 1e-8);
  const auto flipped = ot_divergence_2x2(Pmf::bernoulli(0.8), Pmf::bernoulli(0.8), p);
  CHECK(std::abs(flipped.coupling(0, 0) - q_opt_closed_form(0.2, 0.2, 0.05)) <= 1e-8);
  CHECK(flipped.value == doctest::Approx(r.value).epsilon(1e-10));

  CHECK_THROWS_AS(ot_divergence_2x2(Pmf({0.2, 0.3, 0.5}), Pmf::bernoulli(0.2), p), DomainError);
  CHECK_THROWS_AS(
      ot_divergence_2x2(Pmf::bernoulli(0.2), Pmf::bernoulli(0.2), Joint2x2({0.5, 0, 0, 0.5})),
      DomainError);
}

TEST_CASE("ot value dominates the marginal divergences") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto p = Joint2x2::dsbs(0.1);
  for (int i = 0; i < 500; ++i) {
    const double a = u(rng), b = u(rng);
    const auto r = ot_divergence_2x2(Pmf::bernoulli(a), Pmf::bernoulli(b), p);
    check_marginals(r.coupling, a, b, 1e-10);
    const double dx = info::kl_divergence(Pmf::bernoulli(a), p.marginal_x(), info::LogBase::bits);
    const double dy = info::kl_divergence(Pmf::bernoulli(b), p.marginal_y(), info::LogBase::bits);
    CHECK(r.value >= std::max(dx, dy) - 1e-12);
  }
}

TEST_CASE("q_opt_closed_form examples") {
  CHECK(q_opt_closed_form(0.3, 0.0, 0.05) == 0.0);
  CHECK(q_opt_closed_form(0.5, 0.5, 0.05) == doctest::Approx(0.475).epsilon(1e-14));
  CHECK(std::abs(q_opt_closed_form(0.2, 0.2, 0.05) - kQopt0202) <= 1e-14);
  CHECK(std::abs(q_opt_closed_form(0.1, 0.3, 0.05) - kQopt0103) <= 1e-14);
  // independent reference gives the product coupling
  CHECK(q_opt_closed_form(0.2, 0.3, 0.5 - 1e-12) == doctest::Approx(0.06).epsilon(1e-8));
  CHECK_THROWS_AS(q_opt_closed_form(0.2, 0.2, 0.5), DomainError);
}

TEST_CASE("property: closed-form q matches the convex scan") {
  for (double p : {0.05, 0.1, 0.25}) {
    const auto pxy = Joint2x2::dsbs(p);
    for (double a : grid(0.0, 0.5, 20)) {
      for (double b : grid(0.0, 0.5, 20)) {
        const auto r = ot_divergence_2x2(Pmf::bernoulli(a), Pmf::bernoulli(b), pxy);
        const double q = q_opt_closed_form(a, b, p);
        CHECK(std::abs(r.coupling(1, 1) - q) <= 1e-7);
        CHECK(q >= std::max(0.0, a + b - 1.0));
        CHECK(q <= std::min(a, b));
        check_marginals(coupling_from(a, b, q), a, b, 1e-12);
      }
    }
  }
}

TEST_CASE("phi_lower and phi_upper examples") {
  CHECK(phi_lower(0.05, 0.0, 0.0) <= 1e-15);
  CHECK(std::abs(phi_lower(0.05, 0.3, 0.2) - kPhiLower0302) <= 1e-12);
  for (double alpha : {0.1, 0.4, 0.8}) {
    const double a = binary_entropy_inv(1.0 - alpha);
    const double beta_star = binary_capacity(binary_convolve(a, 0.05));
    CHECK(phi_lower(0.05, alpha, beta_star) == doctest::Approx(alpha).epsilon(1e-10));
  }
  CHECK_THROWS_AS(phi_lower(0.05, 1.5, 0.0), DomainError);
  CHECK_THROWS_AS(phi_lower(0.0, 0.5, 0.5), DomainError);
}

TEST_CASE("property: phi_upper dominates phi_lower") {
  for (double p : {0.05, 0.25}) {
    for (double al : grid(0.0, 1.0, 25)) {
      for (double be : grid(0.0, 1.0, 25)) {
        CHECK(phi_upper(p, al, be) >= phi_lower(p, al, be) - 1e-12);
      }
    }
  }
}

TEST_CASE("property: phi_lower(alpha, .) falls then rises, bottoming out at alpha") {
  for (double p : {0.05, 0.2}) {
    for (double alpha : {0.2, 0.5, 0.9}) {
      const double a = binary_entropy_inv(1.0 - alpha);
      const double b_star = binary_convolve(a, p);
      double prev = phi_lower_from_marginals(p, a, 0.0), prev_b = 0.0;
      for (double b : grid(0.0, 0.5, 201)) {
        const double v = phi_lower_from_marginals(p, a, b);
        CHECK(v >= alpha - 1e-12);
        // b < b_star moves toward the minimum, b > b_star away from it
        if (b <= b_star) CHECK(v <= prev + 1e-12);
        if (prev_b >= b_star) CHECK(v >= prev - 1e-12);
        prev = v;
        prev_b = b;
      }
      CHECK(phi_lower_from_marginals(p, a, b_star) == doctest::Approx(alpha).epsilon(1e-10));
    }
  }
}

TEST_CASE("property: divergence sandwich for random joints") {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (double p : {0.05, 0.25}) {
    const auto pxy = Joint2x2::dsbs(p);
    for (int i = 0; i < 5000; ++i) {
      std::array<double, 4> m;
      double s = 0.0;
      for (auto& c : m) s += (c = std::pow(u(rng), 3.0));
      for (auto& c : m) c /= s;
      const Joint2x2 q(m);
      const double al = binary_capacity(q.marginal_x()[1]);
      const double be = binary_capacity(q.marginal_y()[1]);
      const double d = divergence(q, p);
      CHECK(d >= ot_divergence_2x2(q.marginal_x(), q.marginal_y(), pxy).value - 1e-9);
      CHECK(d >= phi_lower(p, al, be) - 1e-9);
    }
  }
}

TEST_CASE("psi_lower examples") {
  const double p = 0.05;
  CHECK(psi_lower_dsbs(p, 0.3, 0.25) == phi_lower(p, 0.3, 0.25));
  for (double alpha : {0.2, 0.6, 1.0}) CHECK(psi_lower_dsbs(p, alpha, 0.0) == alpha);
  CHECK(psi_lower_dsbs(p, 0.0, 0.7) == 0.7);
}

TEST_CASE("property: psi_lower convex, phi_upper concave") {
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (double p : {0.05, 0.25}) {
    for (int i = 0; i < 1000; ++i) {
      const double a1 = u(rng), b1 = u(rng), a2 = u(rng), b2 = u(rng);
      const double am = 0.5 * (a1 + a2), bm = 0.5 * (b1 + b2);
      CHECK(psi_lower_dsbs(p, am, bm) <=
            0.5 * (psi_lower_dsbs(p, a1, b1) + psi_lower_dsbs(p, a2, b2)) + 1e-10);
      CHECK(phi_upper(p, am, bm) >= 0.5 * (phi_upper(p, a1, b1) + phi_upper(p, a2, b2)) - 1e-10);
    }
  }
}

TEST_CASE("conv_phi_lower examples") {
  const auto d1 = conv_phi_lower(0.05, 0.3, 0.25);
  CHECK(d1.region == ConvRegion::H1);
  CHECK(d1.value == phi_lower(0.05, 0.3, 0.25));
  const auto d4 = conv_phi_lower(0.05, 0.6, 0.2);
  CHECK(std::abs(d4.value - kConvD4) <= 1e-10);
  CHECK(d4.mixture.weights.size() == 2);
  CHECK(d4.mixture.weights[1] == doctest::Approx(0.6).epsilon(1e-14));
  CHECK(to_string(ConvRegion::H4) == "Dhat4");
  CHECK(conv_phi_lower(0.05, 0.0, 0.0).value <= 1e-15);
}

TEST_CASE("property: conv_phi_lower sits between psi_lower and phi_lower") {
  for (double p : {0.05, 0.1, 0.25}) {
    for (double al : grid(0.0, 1.0, 31)) {
      for (double be : grid(0.0, 1.0, 31)) {
        const auto r = conv_phi_lower(p, al, be);
        CHECK(r.value <= phi_lower(p, al, be) + 1e-12);
        CHECK(r.value >= psi_lower_dsbs(p, al, be) - 1e-9);
      }
    }
  }
}

TEST_CASE("property: conv_phi_lower mixtures realize the value") {
  for (double p : {0.05, 0.25}) {
    for (double al : grid(0.0, 1.0, 21)) {
      for (double be : grid(0.0, 1.0, 21)) {
        const auto r = conv_phi_lower(p, al, be);
        const auto& m = r.mixture;
        REQUIRE(m.weights.size() == m.components.size());
        double w = 0.0, sa = 0.0, sb = 0.0, sd = 0.0;
        for (std::size_t i = 0; i < m.weights.size(); ++i) {
          CHECK(m.weights[i] >= 0.0);
          w += m.weights[i];
          const auto& c = m.components[i];
          sa += m.weights[i] * binary_capacity(c.marginal_x()[1]);
          sb += m.weights[i] * binary_capacity(c.marginal_y()[1]);
          sd += m.weights[i] * divergence(c, p);
        }
        CHECK(w == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(sa - al) <= 1e-9);
        CHECK(std::abs(sb - be) <= 1e-9);
        CHECK(std::abs(sd - r.value) <= 1e-9);
      }
    }
  }
}

TEST_CASE("a_prime_root") {
  const double p = 0.05;
  CHECK(a_prime_root(p, binary_capacity(p)) == 0.0);
  CHECK(a_prime_root(p, kCapP) <= 1e-12);
  CHECK(std::abs(a_prime_ratio(p, 0.0) - kCapP) <= 1e-15);
  const double r = a_prime_root(p, 0.75);
  CHECK(std::abs(a_prime_ratio(p, r) - 0.75) <= 1e-10);
  CHECK_THROWS_AS(a_prime_root(p, 1.0), DomainError);
  CHECK_THROWS_AS(a_prime_root(p, 0.9), DomainError);
  CHECK_THROWS_AS(a_prime_root(p, 0.5), DomainError);
  for (double x : grid(0.0, 0.49, 50)) {
    CHECK(a_prime_ratio(p, x) < 0.81);
    CHECK(a_prime_ratio(p, x + 0.01) > a_prime_ratio(p, x));
  }
}

TEST_CASE("phi_q_dsbs") {
  const double p = 0.05;
  CHECK(std::abs(phi_q_dsbs(p, -1.0, 0.0)) <= 1e-15);
  CHECK_THROWS_AS(phi_q_dsbs(p, 0.0, 0.5), DomainError);
  for (double q : {-0.5, -1.0, -4.0}) {
    // dense independent scan
    for (double alpha : {0.25, 0.5, 0.9}) {
      double best = 1e300;
      for (int i = 0; i <= 20000; ++i) {
        const double be = i / 20000.0;
        best = std::min(best, phi_lower(p, alpha, be) - be / q);
      }
      const double v = phi_q_dsbs(p, q, alpha);
      CHECK(v <= best + 1e-12);
      CHECK(v >= best - 1e-6);
    }
  }
}

TEST_CASE("property: phi_q_dsbs is increasing and concave") {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (double q : {-0.5, -2.0}) {
    const auto g = grid(0.0, 1.0, 50);
    for (std::size_t i = 0; i + 1 < g.size(); ++i) {
      CHECK(phi_q_dsbs(0.05, q, g[i + 1]) > phi_q_dsbs(0.05, q, g[i]));
    }
    for (int i = 0; i < 200; ++i) {
      const double a1 = u(rng), a2 = u(rng);
      CHECK(phi_q_dsbs(0.05, q, 0.5 * (a1 + a2)) >=
            0.5 * (phi_q_dsbs(0.05, q, a1) + phi_q_dsbs(0.05, q, a2)) - 1e-9);
    }
  }
}

TEST_CASE("shadow measure") {
  std::mt19937_64 rng(59);
  std::uniform_real_distribution<double> half(0.0, 0.5);
  int tested = 0;
  for (double p : {0.05, 0.1, 0.25}) {
    const dsbs::DsbsSource src(p);
    for (int i = 0; i < 60; ++i) {
      double a, b;
      do {
        a = half(rng);
        b = half(rng);
      } while (!(binary_convolve(a, p) > b + 1e-3 && binary_convolve(b, p) > a + 1e-3 &&
                 binary_convolve(a, b) > p + 1e-3));
      const double s = shadow_measure(p, a, b);
      CHECK(s > 0.0);
      CHECK(s < 0.5);
      CHECK(std::abs(q_opt_closed_form(a, b, s) - (a + b - p) / 2.0) <= 1e-10);
      const auto q = shadow_coupling(p, a, b);
      check_marginals(q, a, b, 1e-12);
      const double lhs = divergence(q, s) - info::kl_divergence(Joint2x2::dsbs(p),
                                                                Joint2x2::dsbs(s),
                                                                info::LogBase::bits);
      CHECK(std::abs(lhs - dsbs::upsilon_star(src, binary_capacity(a), binary_capacity(b))) <=
            1e-8);
      ++tested;
    }
  }
  CHECK(tested == 180);
  CHECK_THROWS_AS(shadow_measure(0.05, 0.3, 0.35), NoRootError);
}
