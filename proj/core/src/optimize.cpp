#include "gwregion/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "gwregion/errors.hpp"

namespace gwregion::optimize {
namespace {

bool better(double a, double b) {
  // NaN never wins
  return !std::isnan(a) && (std::isnan(b) || a < b);
}

}  // namespace

ScalarMinimum golden_section_minimize(const std::function<double(double)>& f, double lo, double hi,
                                      int iterations) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < iterations && b - a > 0.0; ++it) {
    if (better(fc, fd) || fc == fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      if (c <= a || c >= d) break;
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      if (d >= b || d <= c) break;
      fd = f(d);
    }
  }
  ScalarMinimum best = better(fc, fd) || fc == fd ? ScalarMinimum{c, fc} : ScalarMinimum{d, fd};
  for (double x : {lo, hi}) {
    const double fx = f(x);
    if (better(fx, best.value)) best = {x, fx};
  }
  return best;
}

double bisect_increasing(const std::function<double(double)>& f, double lo, double hi,
                         int max_iterations) {
  for (int it = 0; it < max_iterations; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (f(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return std::abs(f(lo)) <= std::abs(f(hi)) ? lo : hi;
}

double false_position(const std::function<double(double)>& f, double lo, double hi,
                      double residual_tol, int max_iterations) {
  double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (std::signbit(flo) == std::signbit(fhi)) {
    throw NoRootError("false_position: bracket endpoints do not straddle a root");
  }
  double x = lo, fx = flo;
  int side = 0;
  for (int it = 0; it < max_iterations; ++it) {
    x = (lo * fhi - hi * flo) / (fhi - flo);
    if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
    fx = f(x);
    if (std::abs(fx) <= residual_tol || hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(x)) {
      break;
    }
    if (std::signbit(fx) == std::signbit(fhi)) {
      hi = x;
      fhi = fx;
      if (side == -1) flo /= 2.0;
      side = -1;
    } else {
      lo = x;
      flo = fx;
      if (side == +1) fhi /= 2.0;
      side = +1;
    }
  }
  return x;
}

SimplexResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                          std::vector<double> x0, const SimplexOptions& options) {
  const std::size_t n = x0.size();
  const double dn = static_cast<double>(std::max<std::size_t>(n, 2));
  const double reflect = 1.0;
  const double expand = 1.0 + 2.0 / dn;
  const double contract = 0.75 - 1.0 / (2.0 * dn);
  const double shrink = 1.0 - 1.0 / dn;

  std::vector<std::vector<double>> pts(n + 1, x0);
  for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += options.initial_step;
  std::vector<double> vals(n + 1);
  for (std::size_t i = 0; i <= n; ++i) vals[i] = f(pts[i]);

  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), trial(n), trial2(n);
  auto point_along = [&](double coef, const std::vector<double>& from, std::vector<double>& out) {
    for (std::size_t j = 0; j < n; ++j) out[j] = centroid[j] + coef * (centroid[j] - from[j]);
  };

  int it = 0;
  for (; it < options.max_iterations; ++it) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return better(vals[a], vals[b]); });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[n - 1];
    if (std::abs(vals[worst] - vals[best]) <= options.value_tolerance) break;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t j = 0; j < n; ++j) centroid[j] += pts[order[k]][j];
    }
    for (double& c : centroid) c /= static_cast<double>(n);

    point_along(reflect, pts[worst], trial);
    const double fr = f(trial);
    if (better(fr, vals[best])) {
      point_along(expand, pts[worst], trial2);
      const double fe = f(trial2);
      if (better(fe, fr)) {
        pts[worst] = trial2;
        vals[worst] = fe;
      } else {
        pts[worst] = trial;
        vals[worst] = fr;
      }
      continue;
    }
    if (better(fr, vals[second])) {
      pts[worst] = trial;
      vals[worst] = fr;
      continue;
    }
    // contraction: outside if the reflection improved on the worst point, inside otherwise
    const bool outside = better(fr, vals[worst]);
    point_along(outside ? contract : -contract, pts[worst], trial2);
    const double fc = f(trial2);
    if (better(fc, outside ? fr : vals[worst])) {
      pts[worst] = trial2;
      vals[worst] = fc;
      continue;
    }
    for (std::size_t k = 1; k <= n; ++k) {
      auto& p = pts[order[k]];
      for (std::size_t j = 0; j < n; ++j) p[j] = pts[best][j] + shrink * (p[j] - pts[best][j]);
      vals[order[k]] = f(p);
    }
  }
  const auto best_it = std::min_element(vals.begin(), vals.end(),
                                        [](double a, double b) { return better(a, b); });
  const std::size_t b = static_cast<std::size_t>(best_it - vals.begin());
  return {pts[b], vals[b], it};
}

}  // namespace gwregion::optimize
