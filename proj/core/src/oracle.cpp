#include "gwregion/oracle.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <limits>
#include <string>
#include <thread>

#include "gwregion/errors.hpp"
#include "gwregion/format.hpp"
#include "gwregion/optimize.hpp"
#include "gwregion/ot.hpp"

namespace gwregion::oracle {
namespace {

using info::AuxChannel;
using info::binary_convolve;
using info::binary_entropy_inv;
using info::RegionPoint;

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kFeasible = 1e-6;
constexpr double kLoose = 1e-4;
constexpr double kZero = info::kZeroProbability;
constexpr int kMaxW = AuxChannel::kMaxCardinality;

void check_half(double v, const char* name) {
  if (!(v >= 0.0 && v <= 0.5)) {
    throw DomainError(std::string(name) + " must lie in [0, 1/2], got " + format_number(v));
  }
}

void check_p(double p) {
  if (!(p > 0.0 && p < 0.5)) throw DomainError("p must satisfy 0 < p < 1/2");
}

double bsc(double e, int in, int out) { return in == out ? 1.0 - e : e; }

std::array<double, 4> dsbs_cells(double p) {
  return {(1.0 - p) / 2.0, p / 2.0, p / 2.0, (1.0 - p) / 2.0};
}

// Channel from an unnormalized joint table joint[w][xy] = P(w, x, y).
AuxChannel channel_from_joint(const std::vector<std::array<double, 4>>& joint,
                              const std::array<double, 4>& pxy) {
  const int k = static_cast<int>(joint.size());
  std::array<std::vector<double>, 4> cols;
  for (int xy = 0; xy < 4; ++xy) {
    cols[xy].resize(k);
    for (int w = 0; w < k; ++w) cols[xy][w] = joint[w][xy] / pxy[xy];
  }
  return AuxChannel(k, std::move(cols));
}

// ---- fast evaluation of the triple from softmax parameters -------------------

struct Triple {
  double alpha, beta, gamma;
};

double xlog(double num, double den) { return num > kZero ? num * std::log(num / den) : 0.0; }

// Column xy of the channel is softmax(x[xy*(k-1) .. xy*(k-1)+k-2], 0).
void decode(std::span<const double> x, int k, std::array<std::array<double, kMaxW>, 4>& ch) {
  for (int xy = 0; xy < 4; ++xy) {
    const double* z = x.data() + xy * (k - 1);
    double m = 0.0;
    for (int w = 0; w < k - 1; ++w) m = std::max(m, z[w]);
    double sum = 0.0;
    for (int w = 0; w < k; ++w) {
      const double e = std::exp((w < k - 1 ? z[w] : 0.0) - m);
      ch[xy][w] = e;
      sum += e;
    }
    for (int w = 0; w < k; ++w) ch[xy][w] /= sum;
  }
}

Triple evaluate(const std::array<double, 4>& pxy, const std::array<std::array<double, kMaxW>, 4>& ch,
                int k) {
  const double px[2] = {pxy[0] + pxy[1], pxy[2] + pxy[3]};
  const double py[2] = {pxy[0] + pxy[2], pxy[1] + pxy[3]};
  double a = 0.0, b = 0.0, g = 0.0;
  for (int w = 0; w < k; ++w) {
    double q[4];
    for (int xy = 0; xy < 4; ++xy) q[xy] = pxy[xy] * ch[xy][w];
    const double qw = q[0] + q[1] + q[2] + q[3];
    if (qw <= kZero) continue;
    for (int xy = 0; xy < 4; ++xy) g += xlog(q[xy], qw * pxy[xy]);
    a += xlog(q[0] + q[1], qw * px[0]) + xlog(q[2] + q[3], qw * px[1]);
    b += xlog(q[0] + q[2], qw * py[0]) + xlog(q[1] + q[3], qw * py[1]);
  }
  const double inv_ln2 = 1.0 / std::log(2.0);
  return {std::max(0.0, a * inv_ln2), std::max(0.0, b * inv_ln2), std::max(0.0, g * inv_ln2)};
}

// Parameters reproducing `ch` (padded with empty states up to k).
std::vector<double> encode(const AuxChannel& ch, int k) {
  std::vector<double> x(4 * (k - 1));
  for (int xy = 0; xy < 4; ++xy) {
    auto prob = [&](int w) { return w < ch.w_card() ? ch(w, xy) : 0.0; };
    // the reference state is the last one; put the channel's states at the end
    const int shift = k - ch.w_card();
    auto shifted = [&](int w) { return w < shift ? 0.0 : prob(w - shift); };
    const double ref = std::log(std::max(shifted(k - 1), 1e-16));
    for (int w = 0; w < k - 1; ++w) x[xy * (k - 1) + w] = std::log(std::max(shifted(w), 1e-16)) - ref;
  }
  return x;
}

AuxChannel channel_from_params(std::span<const double> x, int k) {
  std::array<std::array<double, kMaxW>, 4> ch{};
  decode(x, k, ch);
  std::array<std::vector<double>, 4> cols;
  for (int xy = 0; xy < 4; ++xy) cols[xy].assign(ch[xy].begin(), ch[xy].begin() + k);
  return AuxChannel(k, std::move(cols));
}

double violation_of(Mode mode, double alpha, double beta, double ah, double bh) {
  if (mode == Mode::increasing) return std::max(0.0, alpha - ah) + std::max(0.0, beta - bh);
  return std::abs(alpha - ah) + std::abs(beta - bh);
}

double penalty_of(Mode mode, double alpha, double beta, double ah, double bh) {
  if (mode == Mode::increasing) {
    const double u = std::max(0.0, alpha - ah), v = std::max(0.0, beta - bh);
    return u * u + v * v;
  }
  return (alpha - ah) * (alpha - ah) + (beta - bh) * (beta - bh);
}

struct Outcome {
  std::vector<double> x;
  double objective = kInf;  // sign * gamma
  double violation = kInf;
};

std::mt19937_64 restart_rng(std::uint64_t seed, int index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), 0x9e3779b9u};
  return std::mt19937_64(seq);
}

std::vector<AuxChannel> seeds_for(const dsbs::DsbsSource& src, double alpha, double beta,
                                  Mode mode) {
  const double p = src.p();
  std::vector<AuxChannel> out;
  auto add = [&](auto&& make) {
    try {
      out.push_back(make());
    } catch (const DomainError&) {
    }
  };
  if (mode == Mode::maximize) {
    const double a = binary_entropy_inv(1.0 - std::min(alpha, beta));
    add([&] { return construct_w_upper(p, a); });
    return out;
  }
  const double a = binary_entropy_inv(1.0 - alpha);
  const double b = binary_entropy_inv(1.0 - beta);
  switch (dsbs::classify_point(src, alpha, beta)) {
    case dsbs::RegionLabel::D1: add([&] { return construct_w_coupled(p, a, b); }); break;
    case dsbs::RegionLabel::D2: add([&] { return construct_w_cascade(p, a, b); }); break;
    case dsbs::RegionLabel::D3: add([&] { return construct_w_side(p, a); }); break;
    default: add([&] { return mirror(construct_w_side(p, b)); }); break;
  }
  return out;
}

Outcome run_restart(const std::array<double, 4>& pxy, double alpha, double beta, Mode mode,
                    const OracleConfig& cfg, std::vector<double> x) {
  const int k = cfg.w_card;
  const double sign = mode == Mode::maximize ? -1.0 : 1.0;
  Outcome feasible;   // best objective among violation <= kFeasible
  Outcome loose;      // best objective among violation <= kLoose
  Outcome closest;    // least violation
  std::array<std::array<double, kMaxW>, 4> ch{};
  double mu = 0.0;
  double last_violation = kInf;
  auto f = [&](std::span<const double> z) {
    decode(z, k, ch);
    const Triple t = evaluate(pxy, ch, k);
    const double viol = violation_of(mode, alpha, beta, t.alpha, t.beta);
    const double obj = sign * t.gamma;
    auto keep = [&](Outcome& o, bool better) {
      if (better) o = {std::vector<double>(z.begin(), z.end()), obj, viol};
    };
    keep(feasible, viol <= kFeasible && obj < feasible.objective);
    keep(loose, viol <= kLoose && obj < loose.objective);
    keep(closest, viol < closest.violation);
    return obj + mu * penalty_of(mode, alpha, beta, t.alpha, t.beta);
  };

  std::vector<double> schedule = cfg.penalty_schedule;
  const std::array<double, 3> extension{1e6, 1e8, 1e10};
  optimize::SimplexOptions opts;
  opts.max_iterations = cfg.max_iters;
  for (std::size_t stage = 0; stage < schedule.size() + extension.size(); ++stage) {
    if (stage >= schedule.size()) {
      if (last_violation <= kFeasible) break;
      mu = extension[stage - schedule.size()];
    } else {
      mu = schedule[stage];
    }
    opts.initial_step = stage == 0 ? 1.0 : 0.25;
    auto res = optimize::nelder_mead(f, x, opts);
    x = std::move(res.x);
    decode(x, k, ch);
    const Triple t = evaluate(pxy, ch, k);
    last_violation = violation_of(mode, alpha, beta, t.alpha, t.beta);
  }
  if (!feasible.x.empty()) return feasible;
  if (!loose.x.empty()) return loose;
  return closest;
}

int tier(double violation) {
  if (violation <= kFeasible) return 0;
  if (violation <= kLoose) return 1;
  return 2;
}

}  // namespace

void validate(const OracleConfig& cfg) {
  if (cfg.restarts < 1) throw DomainError("restarts must be >= 1");
  if (cfg.w_card < 2 || cfg.w_card > kMaxW) throw DomainError("w_card must lie in [2, 6]");
  if (cfg.max_iters < 1) throw DomainError("max_iters must be >= 1");
  if (cfg.penalty_schedule.empty()) throw DomainError("penalty schedule is empty");
  for (std::size_t i = 0; i < cfg.penalty_schedule.size(); ++i) {
    if (!(cfg.penalty_schedule[i] > 0.0) ||
        (i > 0 && !(cfg.penalty_schedule[i] > cfg.penalty_schedule[i - 1]))) {
      throw DomainError("penalty schedule must be positive and increasing");
    }
  }
}

AuxChannel construct_w_cascade(double p, double a, double b) {
  check_p(p);
  check_half(a, "a");
  check_half(b, "b");
  const double ab = binary_convolve(a, b);
  if (ab > p + 1e-12) throw DomainError("cascade construction needs a*b <= p");
  const double c = std::clamp((p - ab) / (1.0 - 2.0 * ab), 0.0, 0.5);
  const auto pxy = dsbs_cells(p);
  std::vector<std::array<double, 4>> joint(4);
  for (int u = 0; u < 2; ++u)
    for (int v = 0; v < 2; ++v)
      for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
          joint[2 * u + v][2 * x + y] = 0.5 * bsc(a, x, u) * bsc(c, u, v) * bsc(b, v, y);
  return channel_from_joint(joint, pxy);
}

AuxChannel construct_w_side(double p, double a) {
  check_p(p);
  check_half(a, "a");
  std::array<std::vector<double>, 4> cols;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) cols[2 * x + y] = {bsc(a, x, 0), bsc(a, x, 1)};
  return AuxChannel(2, std::move(cols));
}

AuxChannel construct_w_coupled(double p, double a, double b) {
  check_p(p);
  check_half(a, "a");
  check_half(b, "b");
  const std::array<double, 4> w0{1.0 - (a + b + p) / 2.0, (-a + b + p) / 2.0, (a - b + p) / 2.0,
                                 (a + b - p) / 2.0};
  for (double c : w0) {
    if (c < -1e-12 || c > 1.0 + 1e-12) {
      throw DomainError("coupled construction infeasible: (a, b) outside D1");
    }
  }
  std::vector<std::array<double, 4>> joint(2);
  for (int xy = 0; xy < 4; ++xy) {
    joint[0][xy] = 0.5 * std::max(0.0, w0[xy]);
    joint[1][xy] = 0.5 * std::max(0.0, w0[3 - xy]);
  }
  return channel_from_joint(joint, dsbs_cells(p));
}

AuxChannel construct_w_upper(double p, double a) {
  check_p(p);
  check_half(a, "a");
  std::array<std::vector<double>, 4> cols;
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      std::vector<double> col(4, 0.0);
      const int z = x ^ y;
      for (int wp = 0; wp < 2; ++wp) col[2 * wp + z] = bsc(a, x, wp);
      cols[2 * x + y] = std::move(col);
    }
  }
  return AuxChannel(4, std::move(cols));
}

AuxChannel mirror(const AuxChannel& ch) {
  return AuxChannel(ch.w_card(), {ch.column(0), ch.column(2), ch.column(1), ch.column(3)});
}

RegionPoint construct_w_gaussian(double rho, double n1, double n2) {
  if (!(rho > 0.0 && rho < 1.0)) throw DomainError("rho must satisfy 0 < rho < 1");
  if (!(n1 > 0.0 && n1 <= 1.0 && n2 > 0.0 && n2 <= 1.0)) {
    throw DomainError("N1, N2 must lie in (0, 1]");
  }
  const double rh = (rho - std::sqrt((1.0 - n1) * (1.0 - n2))) / std::sqrt(n1 * n2);
  if (!(rh >= -1e-12 && rh < 1.0)) {
    throw DomainError("induced correlation " + format_number(rh) + " outside [0, 1)");
  }
  return {-0.5 * std::log(n1), -0.5 * std::log(n2),
          0.5 * (std::log1p(-rho * rho) - std::log(n1 * n2) - std::log1p(-rh * rh))};
}

RegionPoint gaussian_w_triple(double rho, double l1, double l2, double angle) {
  if (!(rho > 0.0 && rho < 1.0)) throw DomainError("rho must satisfy 0 < rho < 1");
  if (!(l1 > 0.0 && l1 <= 1.0 && l2 > 0.0 && l2 <= 1.0)) {
    throw DomainError("eigenvalues must lie in (0, 1]");
  }
  const double sp = std::sqrt(1.0 + rho), sm = std::sqrt(1.0 - rho);
  const double s_d = 0.5 * (sp + sm), s_o = 0.5 * (sp - sm);  // Sigma^{1/2}
  const double c = std::cos(angle), s = std::sin(angle);
  const double m00 = l1 * c * c + l2 * s * s;
  const double m11 = l1 * s * s + l2 * c * c;
  const double m01 = (l1 - l2) * c * s;
  // K = S M S with S = [[s_d, s_o], [s_o, s_d]]
  const double k00 = s_d * s_d * m00 + 2.0 * s_d * s_o * m01 + s_o * s_o * m11;
  const double k11 = s_o * s_o * m00 + 2.0 * s_d * s_o * m01 + s_d * s_d * m11;
  return {-0.5 * std::log(k00), -0.5 * std::log(k11), -0.5 * std::log(l1 * l2)};
}

AuxChannel random_aux_channel(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> card(2, kMaxW);
  std::uniform_real_distribution<double> scale_dist(0.1, 6.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  const int k = card(rng);
  const double scale = scale_dist(rng);
  std::array<std::vector<double>, 4> cols;
  for (auto& col : cols) {
    col.resize(k);
    double sum = 0.0;
    for (double& v : col) {
      v = std::exp(scale * normal(rng));
      sum += v;
    }
    for (double& v : col) v /= sum;
  }
  return AuxChannel(k, std::move(cols));
}

OracleResult brute_force_lower(const dsbs::DsbsSource& src, double alpha, double beta,
                               const OracleConfig& cfg, Mode mode) {
  validate(cfg);
  if (!(alpha >= 0.0 && alpha <= 1.0 && beta >= 0.0 && beta <= 1.0)) {
    throw DomainError("(alpha, beta) must lie in [0, 1]^2");
  }
  if (mode != Mode::increasing && !dsbs::in_projection_region(src, alpha, beta)) {
    throw OutsideRegionError("(alpha, beta) lies outside the projection region I0*");
  }
  const int k = cfg.w_card;
  const auto pxy = dsbs_cells(src.p());
  const auto seeds = seeds_for(src, alpha, beta, mode);
  const int n_seeded = seeds.empty() ? 0 : (cfg.restarts + 1) / 2;

  auto start_point = [&](int index) {
    auto rng = restart_rng(cfg.seed, index);
    if (index < n_seeded) {
      const AuxChannel& base = seeds[index % seeds.size()];
      if (index < static_cast<int>(seeds.size())) return encode(base, k);
      // mix 5% of a random channel into the construction
      const AuxChannel noise = random_aux_channel(rng);
      std::array<std::vector<double>, 4> cols;
      for (int xy = 0; xy < 4; ++xy) {
        cols[xy].assign(k, 0.0);
        for (int w = 0; w < base.w_card(); ++w) cols[xy][k - base.w_card() + w] += 0.95 * base(w, xy);
        for (int w = 0; w < std::min(k, noise.w_card()); ++w) cols[xy][w] += 0.05 * noise(w, xy);
        double sum = 0.0;
        for (double v : cols[xy]) sum += v;
        for (double& v : cols[xy]) v /= sum;
      }
      return encode(AuxChannel(k, std::move(cols)), k);
    }
    std::normal_distribution<double> normal(0.0, 1.5);
    std::vector<double> x(4 * (k - 1));
    for (double& v : x) v = normal(rng);
    return x;
  };

  std::vector<Outcome> outcomes(cfg.restarts);
  auto work = [&](int index) {
    outcomes[index] = run_restart(pxy, alpha, beta, mode, cfg, start_point(index));
  };
  const int threads = std::clamp(cfg.threads, 1, cfg.restarts);
  if (threads == 1) {
    for (int i = 0; i < cfg.restarts; ++i) work(i);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (int i = next++; i < cfg.restarts; i = next++) work(i);
      });
    }
    for (auto& th : pool) th.join();
  }

  int best = 0;
  for (int i = 1; i < cfg.restarts; ++i) {
    const Outcome& o = outcomes[i];
    const Outcome& b = outcomes[best];
    const int ti = tier(o.violation), tb = tier(b.violation);
    if (ti < tb || (ti == tb && (ti < 2 ? o.objective < b.objective : o.violation < b.violation))) {
      best = i;
    }
  }
  OracleResult result;
  result.best_channel = channel_from_params(outcomes[best].x, k);
  result.achieved =
      info::mutual_informations(info::Joint2x2(pxy), result.best_channel, info::LogBase::bits);
  result.constraint_violation =
      violation_of(mode, alpha, beta, result.achieved.alpha, result.achieved.beta);
  result.converged = result.constraint_violation <= kLoose;
  return result;
}

// ---- time-sharing oracle ------------------------------------------------------

TimeSharingResult timesharing_conv_envelope(double p_hat, double alpha, double beta,
                                            const OracleConfig& cfg, ShareMode mode) {
  validate(cfg);
  if (!(p_hat > 0.0 && p_hat < 0.5)) throw DomainError("p_hat must satisfy 0 < p_hat < 1/2");
  if (!(alpha >= 0.0 && alpha <= 1.0 && beta >= 0.0 && beta <= 1.0)) {
    throw DomainError("(alpha, beta) must lie in [0, 1]^2");
  }
  constexpr int kPoints = 3;
  constexpr double kExactPenalty = 1e6;
  const bool eq = mode == ShareMode::equality;
  // params: two weight logits, then (a_i, b_i) for the free points
  const int free_points = eq ? kPoints - 1 : kPoints;
  const int dim = (kPoints - 1) + 2 * free_points;

  struct Decoded {
    std::array<double, kPoints> q, s, t, a, b;
    double violation;
  };
  auto decode_ts = [&](std::span<const double> z) {
    Decoded d{};
    const double m = std::max({z[0], z[1], 0.0});
    double sum = 0.0;
    for (int i = 0; i < kPoints; ++i) {
      d.q[i] = std::exp((i < kPoints - 1 ? z[i] : 0.0) - m);
      sum += d.q[i];
    }
    for (double& v : d.q) v /= sum;
    for (int i = 0; i < free_points; ++i) {
      d.a[i] = std::clamp(z[kPoints - 1 + 2 * i], 0.0, 0.5);
      d.b[i] = std::clamp(z[kPoints + 2 * i], 0.0, 0.5);
      d.s[i] = info::binary_capacity(d.a[i]);
      d.t[i] = info::binary_capacity(d.b[i]);
    }
    if (eq) {
      const int l = kPoints - 1;
      double rs = alpha, rt = beta;
      for (int i = 0; i < l; ++i) {
        rs -= d.q[i] * d.s[i];
        rt -= d.q[i] * d.t[i];
      }
      const double s3 = rs / d.q[l], t3 = rt / d.q[l];
      d.s[l] = std::clamp(s3, 0.0, 1.0);
      d.t[l] = std::clamp(t3, 0.0, 1.0);
      d.violation = d.q[l] * (std::abs(s3 - d.s[l]) + std::abs(t3 - d.t[l]));
      d.a[l] = binary_entropy_inv(1.0 - d.s[l]);
      d.b[l] = binary_entropy_inv(1.0 - d.t[l]);
    } else {
      double ss = 0.0, tt = 0.0;
      for (int i = 0; i < kPoints; ++i) {
        ss += d.q[i] * d.s[i];
        tt += d.q[i] * d.t[i];
      }
      d.violation = std::max(0.0, alpha - ss) + std::max(0.0, beta - tt);
    }
    return d;
  };
  auto value_of = [&](const Decoded& d) {
    double v = 0.0;
    for (int i = 0; i < kPoints; ++i) {
      v += d.q[i] * ot::phi_lower_from_marginals(p_hat, d.a[i], d.b[i]);
    }
    return v;
  };
  auto f = [&](std::span<const double> z) {
    const Decoded d = decode_ts(z);
    return value_of(d) + kExactPenalty * d.violation;
  };

  const double a0 = binary_entropy_inv(1.0 - alpha);
  const double b0 = binary_entropy_inv(1.0 - beta);
  double best_value = kInf, best_viol = kInf;
  std::vector<double> best_z;
  for (int r = 0; r < cfg.restarts; ++r) {
    auto rng = restart_rng(cfg.seed, r);
    std::vector<double> z(dim);
    if (r == 0) {
      // no time sharing: every component at the target point
      for (int i = 0; i < free_points; ++i) {
        z[kPoints - 1 + 2 * i] = a0;
        z[kPoints + 2 * i] = b0;
      }
    } else {
      std::normal_distribution<double> normal(0.0, 1.5);
      std::uniform_real_distribution<double> unit(-0.05, 0.55);
      z[0] = normal(rng);
      z[1] = normal(rng);
      for (int i = kPoints - 1; i < dim; ++i) z[i] = unit(rng);
    }
    optimize::SimplexOptions opts;
    opts.max_iterations = cfg.max_iters;
    for (double step : {0.2, 0.05, 0.01}) {
      opts.initial_step = step;
      z = optimize::nelder_mead(f, z, opts).x;
    }
    const Decoded d = decode_ts(z);
    const double v = value_of(d);
    const int tr = tier(d.violation), tb = tier(best_viol);
    if (tr < tb || (tr == tb && v < best_value)) {
      best_value = v;
      best_viol = d.violation;
      best_z = z;
    }
  }
  const Decoded d = decode_ts(best_z);
  TimeSharingResult out;
  out.value = best_value;
  out.constraint_violation = best_viol;
  out.converged = best_viol <= kLoose;
  out.weights.assign(d.q.begin(), d.q.end());
  for (int i = 0; i < kPoints; ++i) out.points.emplace_back(d.s[i], d.t[i]);
  return out;
}

}  // namespace gwregion::oracle
