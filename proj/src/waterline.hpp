#pragma once

// Internal water-level machinery shared by the EE and SE solvers.
//
// Every KKT point of the per-player problems is a water-filling allocation
// p_k = [w - c_k]+ with c_k = (i_agg[k] + N_0) / g_k, so the whole solution
// space is one-dimensional in the level w. Rate and sum power are both
// continuous and nondecreasing in w, which makes the active-set logic exact.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

#include "d2dee/ee_solver.hpp"

namespace d2dee::detail {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Per-channel water-level floors; channels with nonpositive gain are unusable.
inline std::vector<double> level_floors(const InterferenceView& view,
                                        std::span<const double> gains) {
  std::vector<double> c(gains.size());
  for (std::size_t k = 0; k < gains.size(); ++k) {
    c[k] = gains[k] > 0.0 ? (view.i_agg[k] + view.noise) / gains[k] : kInf;
  }
  return c;
}

inline std::vector<double> powers_at_level(const std::vector<double>& c, double w) {
  std::vector<double> p(c.size());
  for (std::size_t k = 0; k < c.size(); ++k) {
    p[k] = (c[k] < kInf && w > c[k]) ? w - c[k] : 0.0;
  }
  return p;
}

inline double sum_at_level(const std::vector<double>& c, double w) {
  double s = 0.0;
  for (double ck : c) {
    if (ck < kInf && w > ck) s += w - ck;
  }
  return s;
}

inline double rate_at_level(const std::vector<double>& c, double w) {
  double r = 0.0;
  for (double ck : c) {
    if (ck < kInf && w > ck) r += std::log(w / ck) / std::numbers::ln2;
  }
  return r;
}

inline double rate_of_powers(const std::vector<double>& c, std::span<const double> p) {
  double r = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k] < kInf && p[k] > 0.0) r += std::log1p(p[k] / c[k]) / std::numbers::ln2;
  }
  return r;
}

inline bool any_usable(const std::vector<double>& c) {
  return std::any_of(c.begin(), c.end(), [](double v) { return v < kInf; });
}

// Level at which the sum power equals target exactly (closed form over the
// sorted floors). Requires at least one usable channel and target >= 0.
inline double level_for_sum(const std::vector<double>& c, double target) {
  std::vector<double> sorted;
  sorted.reserve(c.size());
  for (double v : c) {
    if (v < kInf) sorted.push_back(v);
  }
  std::sort(sorted.begin(), sorted.end());
  double prefix = 0.0;
  const int m = static_cast<int>(sorted.size());
  for (int n = 1; n <= m; ++n) {
    prefix += sorted[n - 1];
    double w = (target + prefix) / n;
    if (w >= sorted[n - 1] && (n == m || w <= sorted[n])) return w;
  }
  return (target + prefix) / m;  // all channels active
}

// Level at which the rate equals target (bisection; rate is continuous and
// strictly increasing above the smallest floor).
inline double level_for_rate(const std::vector<double>& c, double target, double w_hi) {
  double lo = *std::min_element(c.begin(), c.end());
  double hi = w_hi;
  if (rate_at_level(c, hi) < target) return hi;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (rate_at_level(c, mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 1e-15 * std::max(1.0, hi)) break;
  }
  return hi;
}

}  // namespace d2dee::detail
