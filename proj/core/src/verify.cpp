#include "gwregion/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "gwregion/dsbs.hpp"
#include "gwregion/errors.hpp"
#include "gwregion/format.hpp"
#include "gwregion/gaussian.hpp"
#include "gwregion/oracle.hpp"
#include "gwregion/ot.hpp"
#include "gwregion/surface.hpp"

namespace gwregion::verify {
namespace {

using info::binary_capacity;
using info::binary_convolve;
using info::binary_entropy;
using info::binary_entropy_inv;

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = 3.14159265358979323846;

// One RNG stream per criterion so that running a subset gives the same numbers.
std::mt19937_64 stream(const SuiteOptions& o, int criterion) {
  std::seed_seq seq{static_cast<std::uint32_t>(o.seed), static_cast<std::uint32_t>(o.seed >> 32),
                    static_cast<std::uint32_t>(criterion)};
  return std::mt19937_64(seq);
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
  return v;
}

CheckResult make(int criterion, std::string name, double dev, double tol) {
  // NaN deviations fail
  return {criterion, std::move(name), dev, tol, dev <= tol, 0.0};
}

double bump(double& acc, double v) {
  if (std::isnan(v)) v = kInf;
  acc = std::max(acc, v);
  return acc;
}

// ---- 1: identity --------------------------------------------------------------

std::vector<CheckResult> identity(const SuiteOptions& o) {
  double dev = 0.0;
  for (double p : {0.05, 0.1, 0.25, 0.4}) {
    const dsbs::DsbsSource src(p);
    const dsbs::DsbsSource ref(o.inject_fault ? p * (1.0 + 1e-6) : p);
    for (double alpha : linspace(0.0, 1.0, 50)) {
      for (double beta : linspace(0.0, 1.0, 50)) {
        const double r = dsbs::rate_distortion_dsbs(ref, binary_entropy_inv(1.0 - alpha),
                                                    binary_entropy_inv(1.0 - beta));
        bump(dev, std::abs(dsbs::upsilon_star(src, alpha, beta) - r));
      }
    }
  }
  return {make(1, "upsilon_star equals R(h^-1(1-alpha), h^-1(1-beta))", dev, 1e-12)};
}

// ---- 2: achievability constructions -------------------------------------------

std::vector<CheckResult> achievability(const SuiteOptions& o) {
  auto rng = stream(o, 2);
  std::uniform_real_distribution<double> half(0.0, 0.5);
  std::uniform_int_distribution<int> pick(0, 3);
  const double ps[] = {0.05, 0.1, 0.25, 0.4};
  constexpr int kPoints = 100;
  double dev_coupled = 0.0, dev_cascade = 0.0, dev_side = 0.0;
  for (int i = 0; i < kPoints; ++i) {
    const double p = ps[pick(rng)];
    const dsbs::DsbsSource src(p);
    const auto pxy = info::Joint2x2::dsbs(p);
    auto check = [&](const info::AuxChannel& ch, double alpha, double beta, double gamma) {
      const auto t = info::mutual_informations(pxy, ch, info::LogBase::bits);
      return std::max({std::abs(t.alpha - alpha), std::abs(t.beta - beta),
                       std::abs(t.gamma - gamma),
                       std::abs(t.gamma - dsbs::upsilon_star(src, t.alpha, t.beta))});
    };
    double a, b;
    do {
      a = half(rng);
      b = half(rng);
    } while (!(binary_convolve(a, p) >= b && binary_convolve(b, p) >= a &&
               binary_convolve(a, b) >= p));
    bump(dev_coupled, check(oracle::construct_w_coupled(p, a, b), binary_capacity(a),
                            binary_capacity(b), dsbs::rate_distortion_dsbs(src, a, b)));
    do {
      a = half(rng);
      b = half(rng);
    } while (!(binary_convolve(a, b) <= p));
    bump(dev_cascade, check(oracle::construct_w_cascade(p, a, b), binary_capacity(a),
                            binary_capacity(b), 1.0 + binary_entropy(p) - binary_entropy(a) -
                                                    binary_entropy(b)));
    a = half(rng);
    bump(dev_side, check(oracle::construct_w_side(p, a), binary_capacity(a),
                         binary_capacity(binary_convolve(a, p)), binary_capacity(a)));
  }
  return {make(2, "coupled construction attains the D1 clause", dev_coupled, 1e-9),
          make(2, "cascade construction attains the D2 clause", dev_cascade, 1e-9),
          make(2, "side construction attains the D3 clause", dev_side, 1e-9)};
}

// ---- 3: soundness sampling ----------------------------------------------------

std::vector<CheckResult> soundness(const SuiteOptions& o) {
  auto rng = stream(o, 3);
  const int n = o.quick ? 10000 : 100000;
  std::vector<CheckResult> out;
  for (double p : {0.05, 0.25}) {
    const dsbs::DsbsSource src(p);
    const auto pxy = info::Joint2x2::dsbs(p);
    const double hp = binary_entropy(p);
    double below = 0.0, above = 0.0, outside = 0.0;
    for (int i = 0; i < n; ++i) {
      const auto t = info::mutual_informations(pxy, oracle::random_aux_channel(rng),
                                               info::LogBase::bits);
      const double al = std::min(t.alpha, 1.0), be = std::min(t.beta, 1.0);
      bump(below, dsbs::upsilon_star(src, al, be) - t.gamma);
      bump(above, t.gamma - hp - std::min(al, be));
      bump(outside, std::max(dsbs::projection_boundary(src, al) - be,
                             dsbs::projection_boundary(src, be) - al));
    }
    const std::string tag = " (p=" + format_number(p) + ")";
    out.push_back(make(3, "random channels satisfy gamma >= upsilon_star" + tag, below, 1e-9));
    out.push_back(make(3, "random channels satisfy gamma <= h(p)+min" + tag, above, 1e-9));
    out.push_back(make(3, "random channels stay inside I0*" + tag, outside, 1e-9));
  }
  return out;
}

// ---- 4: brute-force oracle ----------------------------------------------------

std::vector<CheckResult> oracle_attainment(const SuiteOptions& o) {
  const dsbs::DsbsSource src(0.05);
  oracle::OracleConfig cfg;
  cfg.seed = o.seed;
  cfg.threads = o.threads;
  cfg.restarts = o.quick ? 16 : 64;
  const auto grid = linspace(0.0, 1.0, o.quick ? 3 : 9);
  double reach = 0.0, sound = 0.0;
  for (double alpha : grid) {
    for (double beta : grid) {
      const auto r = oracle::brute_force_lower(src, alpha, beta, cfg);
      if (!r.converged) {
        reach = kInf;
        continue;
      }
      const auto& t = r.achieved;
      bump(reach, std::abs(t.gamma - dsbs::upsilon_star(src, alpha, beta)));
      bump(sound, dsbs::upsilon_star(src, std::min(t.alpha, 1.0), std::min(t.beta, 1.0)) - t.gamma);
    }
  }
  return {make(4, "brute-force oracle reaches upsilon_star", reach, 5e-3),
          make(4, "brute-force oracle never beats upsilon_star at its own constraints", sound,
               1e-9)};
}

// ---- 5: optimal-transport machinery -------------------------------------------

std::vector<CheckResult> ot_machinery(const SuiteOptions& o) {
  double scan = 0.0;
  for (double ph : {0.05, 0.1, 0.25}) {
    const auto ref = info::Joint2x2::dsbs(ph);
    for (double a : linspace(0.0, 0.5, 20)) {
      for (double b : linspace(0.0, 0.5, 20)) {
        const auto r =
            ot::ot_divergence_2x2(info::Pmf::bernoulli(a), info::Pmf::bernoulli(b), ref);
        bump(scan, std::abs(r.coupling(1, 1) - ot::q_opt_closed_form(a, b, ph)));
      }
    }
  }
  auto rng = stream(o, 5);
  std::uniform_real_distribution<double> half(0.0, 0.5);
  const double ps[] = {0.05, 0.1, 0.25};
  double residual = 0.0, ident = 0.0;
  constexpr double kMargin = 1e-6;
  for (int i = 0; i < 50; ++i) {
    const double p = ps[i % 3];
    double a, b;
    do {
      a = half(rng);
      b = half(rng);
      if (a > b) std::swap(a, b);
    } while (!(binary_convolve(a, p) > b + kMargin && binary_convolve(a, b) > p + kMargin &&
               b < 0.5 - kMargin));
    try {
      const double ph = ot::shadow_measure(p, a, b);
      bump(residual, std::abs(ot::q_opt_closed_form(a, b, ph) - (a + b - p) / 2.0));
      const auto r = info::Joint2x2::dsbs(ph);
      const double lhs = info::kl_divergence(ot::shadow_coupling(p, a, b), r, info::LogBase::bits) -
                         info::kl_divergence(info::Joint2x2::dsbs(p), r, info::LogBase::bits);
      bump(ident, std::abs(lhs - dsbs::upsilon_star(dsbs::DsbsSource(p), binary_capacity(a),
                                                         binary_capacity(b))));
    } catch (const NoRootError&) {
      residual = ident = kInf;
    }
  }
  return {make(5, "q_opt closed form matches the 1-D convex scan", scan, 1e-7),
          make(5, "shadow measure residual", residual, 1e-10),
          make(5, "shadow measure divergence identity", ident, 1e-8)};
}

// ---- 6: convex envelope -------------------------------------------------------

std::vector<CheckResult> convex_envelope(const SuiteOptions& o) {
  const double ph = 0.05;
  oracle::OracleConfig cfg;
  cfg.seed = o.seed;
  cfg.restarts = o.quick ? 6 : 12;
  double dev = 0.0;
  for (double alpha : linspace(0.0, 1.0, o.quick ? 5 : 15)) {
    for (double beta : linspace(0.0, 1.0, o.quick ? 5 : 15)) {
      const auto ts = oracle::timesharing_conv_envelope(ph, alpha, beta, cfg);
      if (!ts.converged) {
        dev = kInf;
        continue;
      }
      bump(dev, std::abs(ts.value - ot::conv_phi_lower(ph, alpha, beta).value));
    }
  }
  return {make(6, "five-case convex envelope matches the time-sharing oracle", dev, 5e-4)};
}

// ---- 7: Gaussian closed forms -------------------------------------------------

double rate_of_cosine(double c) { return -0.5 * std::log1p(-c * c); }

std::vector<CheckResult> gaussian_checks(const SuiteOptions& o) {
  auto rng = stream(o, 7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double rhos[] = {0.3, 0.6, 0.9};
  double jump = 0.0, mono = 0.0, hyper = 0.0, sandwich = 0.0;
  constexpr double kStep = 1e-10;
  for (double rho : rhos) {
    const gaussian::GaussianSource src(rho);
    auto ups = [&](double a, double b) { return gaussian::upsilon_g_star(src, a, b); };
    for (int i = 0; i < 100; ++i) {
      // G1/G2: rho = ca*cb with ca in (rho, 1)
      const double ca = rho + (1.0 - rho) * (0.02 + 0.96 * unit(rng));
      double al = rate_of_cosine(ca), be = rate_of_cosine(rho / ca);
      bump(jump, std::abs(ups(al, be + kStep) - ups(al, be - kStep)));
      // G1/G3: cb = rho*ca, and the mirror G1/G4
      const double c = 0.02 + 0.96 * unit(rng);
      al = rate_of_cosine(c);
      be = rate_of_cosine(rho * c);
      bump(jump, std::abs(ups(al, be + kStep) - ups(al, std::max(be - kStep, 0.0))));
      bump(jump, std::abs(ups(be + kStep, al) - ups(std::max(be - kStep, 0.0), al)));
    }
    const auto g = linspace(0.0, 3.0, 50);
    for (std::size_t i = 0; i < g.size(); ++i) {
      for (std::size_t j = 0; j < g.size(); ++j) {
        const double v = ups(g[i], g[j]);
        if (i + 1 < g.size()) bump(mono, v - ups(g[i + 1], g[j]));
        if (j + 1 < g.size()) bump(mono, v - ups(g[i], g[j + 1]));
      }
    }
    const auto h = linspace(0.0, 2.0, 20);
    for (double a : h) {
      for (double b : h) {
        bump(hyper, std::abs(gaussian::hyper_sup_psi(src, a, b) -
                             gaussian::psi_lower_gaussian(src, a, b)));
        bump(hyper, std::abs(gaussian::hyper_inf_phibar(src, a, b) -
                             gaussian::phi_upper_gaussian(src, a, b)));
      }
      for (double q : linspace(-4.0, -0.2, 20)) {
        bump(hyper, std::abs(gaussian::hyper_inf_phiq(src, q, a) -
                             gaussian::phi_q_gaussian(src, q, a)));
      }
    }
  }
  const int n = o.quick ? 10000 : 100000;
  std::uniform_int_distribution<int> pick(0, 2), comps(1, 3);
  for (int i = 0; i < n; ++i) {
    const double rho = rhos[pick(rng)];
    const int k = comps(rng);
    double w[3], sum = 0.0;
    for (int c = 0; c < k; ++c) sum += (w[c] = unit(rng) + 1e-3);
    info::RegionPoint mix;
    for (int c = 0; c < k; ++c) {
      const double l1 = std::exp(-4.0 * unit(rng)), l2 = std::exp(-4.0 * unit(rng));
      const auto t = oracle::gaussian_w_triple(rho, l1, l2, kPi * unit(rng));
      mix.alpha += w[c] / sum * t.alpha;
      mix.beta += w[c] / sum * t.beta;
      mix.gamma += w[c] / sum * t.gamma;
    }
    bump(sandwich, gaussian::upsilon_g_star(gaussian::GaussianSource(rho), mix.alpha, mix.beta) -
                       mix.gamma);
  }
  return {make(7, "Gaussian envelope continuous across region boundaries", jump, 1e-8),
          make(7, "Gaussian envelope nondecreasing on the grid", mono, 1e-12),
          make(7, "hypercontractivity optimizations match the closed forms", hyper, 1e-8),
          make(7, "jointly Gaussian W never beats the Gaussian envelope", sandwich, 1e-9)};
}

// ---- 8: surfaces ---------------------------------------------------------------

std::vector<CheckResult> surfaces(const SuiteOptions& o) {
  const int steps = o.quick ? 21 : 101;
  surface::Query dq;
  dq.source = surface::SourceKind::dsbs;
  dq.param = 0.05;
  const auto rows = surface::sample_surface(dq, steps);
  const double corner = rows.back().value.value_or(kInf);
  const double expected_corner = 1.0 + binary_entropy(0.05);

  const dsbs::DsbsSource src(0.05);
  double curve = 0.0;
  // the curve is nondegenerate from alpha = 2p on
  for (double alpha : linspace(2.0 * src.p(), 1.0, 101)) {
    const double beta = dsbs::projection_boundary(src, alpha);
    bump(curve, std::abs(dsbs::upper_envelope_dsbs(src, alpha, beta) -
                         dsbs::lower_envelope_dsbs(src, alpha, beta)));
    bump(curve, std::abs(dsbs::upper_envelope_dsbs(src, beta, alpha) -
                         dsbs::lower_envelope_dsbs(src, beta, alpha)));
  }

  surface::Query gq;
  gq.source = surface::SourceKind::gaussian;
  gq.param = 0.9;
  double g_spot = kInf;
  for (const auto& r : surface::sample_surface(gq, steps)) {
    if (r.alpha == 0.5 && r.beta == 0.0) g_spot = std::abs(r.value.value_or(kInf) - 0.5);
  }
  gq.which = surface::Quantity::upper;
  double not_inf = 0.0;
  for (const auto& r : surface::sample_surface(gq, o.quick ? 5 : 11)) {
    if (!(r.value && std::isinf(*r.value))) not_inf = kInf;
  }
  return {make(8, "DSBS surface corner equals 1+h(p)", std::abs(corner - expected_corner), 1e-6),
          make(8, "upper and lower envelopes coincide on the I0* boundary", curve, 1e-9),
          make(8, "Gaussian surface at (0.5, 0) equals 0.5", g_spot, 1e-12),
          make(8, "Gaussian upper surface is infinite", not_inf, 0.0)};
}

}  // namespace

std::vector<CheckResult> run_criterion(int criterion, const SuiteOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<CheckResult> out;
  switch (criterion) {
    case 1: out = identity(options); break;
    case 2: out = achievability(options); break;
    case 3: out = soundness(options); break;
    case 4: out = oracle_attainment(options); break;
    case 5: out = ot_machinery(options); break;
    case 6: out = convex_envelope(options); break;
    case 7: out = gaussian_checks(options); break;
    case 8: out = surfaces(options); break;
    default: throw DomainError("unknown criterion " + std::to_string(criterion));
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  for (auto& r : out) r.seconds = secs;
  return out;
}

std::vector<CheckResult> run_suite(const SuiteOptions& options,
                                   const std::function<void(const CheckResult&)>& on_result) {
  std::vector<CheckResult> all;
  for (int c = 1; c <= kCriteria; ++c) {
    for (auto& r : run_criterion(c, options)) {
      if (on_result) on_result(r);
      all.push_back(std::move(r));
    }
  }
  return all;
}

std::string format_line(const CheckResult& r, bool with_timings) {
  std::string line = std::string(r.passed ? "PASS" : "FAIL") + "  [" +
                     std::to_string(r.criterion) + "] " + r.name +
                     "  max_dev=" + format_scientific(r.max_dev) +
                     " tol=" + format_scientific(r.tol);
  if (with_timings) line += " time=" + format_number(r.seconds, 3) + "s";
  return line;
}

std::string format_report(const std::vector<CheckResult>& results, bool with_timings) {
  std::string out;
  int failed = 0;
  for (const auto& r : results) {
    out += format_line(r, with_timings) + "\n";
    failed += r.passed ? 0 : 1;
  }
  out += std::to_string(results.size() - failed) + "/" + std::to_string(results.size()) +
         " checks passed\n";
  return out;
}

}  // namespace gwregion::verify
