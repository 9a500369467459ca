#pragma once

// Shared instance builders and brute-force oracles for the test suites. The
// oracles here are independent of the solver code paths they check: plain
// grid scans over the feasible set.

#include <cmath>
#include <limits>
#include <vector>

#include "d2dee/game.hpp"
#include "d2dee/net_model.hpp"
#include "d2dee/rng.hpp"

namespace testutil {

using namespace d2dee;

// N=1, K=1 instance with all cross gains zero (decoupled links).
inline NetworkInstance single_links(double g_d, double g_c, double noise, UEParams d2d,
                                    UEParams cell) {
  NetworkInstance inst;
  inst.n_d2d = 1;
  inst.n_cell = 1;
  inst.noise = noise;
  inst.g_d2d = {{g_d}};
  inst.g_cell = {g_c};
  inst.g_c2d = {{0.0}};
  inst.g_d2d_x = {{{0.0}}};
  inst.g_d2b = {{0.0}};
  inst.ue_d2d = {d2d};
  inst.ue_cell = {cell};
  return inst;
}

// Random coupled instance with n pairs and k channels; gains drawn from a
// wide positive range so interference regimes vary.
inline NetworkInstance random_instance(Rng& rng, int n, int k, UEParams d2d, UEParams cell,
                                       double noise = 1e-7) {
  auto g = [&]() { return std::pow(10.0, rng.uniform(-6.0, 0.0)); };
  NetworkInstance inst;
  inst.n_d2d = n;
  inst.n_cell = k;
  inst.noise = noise;
  inst.g_d2d.assign(n, std::vector<double>(k));
  inst.g_cell.resize(k);
  inst.g_c2d.assign(k, std::vector<double>(n));
  inst.g_d2d_x.assign(n, std::vector<std::vector<double>>(n, std::vector<double>(k, 0.0)));
  inst.g_d2b.assign(n, std::vector<double>(k));
  for (int i = 0; i < n; ++i)
    for (int c = 0; c < k; ++c) inst.g_d2d[i][c] = g();
  for (int c = 0; c < k; ++c) inst.g_cell[c] = g();
  for (int c = 0; c < k; ++c)
    for (int i = 0; i < n; ++i) inst.g_c2d[c][i] = g() * 0.1;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      if (i != j)
        for (int c = 0; c < k; ++c) inst.g_d2d_x[j][i][c] = g() * 0.1;
  for (int i = 0; i < n; ++i)
    for (int c = 0; c < k; ++c) inst.g_d2b[i][c] = g() * 0.1;
  inst.ue_d2d.assign(n, d2d);
  inst.ue_cell.assign(k, cell);
  return inst;
}

// Brute-force EE maximizer over a per-channel power grid for one player
// (K <= 2 channels) against fixed aggregate interference.
struct GridBest {
  std::vector<double> powers;
  double value = -std::numeric_limits<double>::infinity();
};

inline GridBest grid_max_ee(const std::vector<double>& i_agg, double noise,
                            const std::vector<double>& gains, const UEParams& params,
                            double circuit, double step) {
  const int k = static_cast<int>(gains.size());
  const int steps = static_cast<int>(std::floor(params.p_max / step + 1e-9));
  auto rate1 = [&](int ch, double p) {
    return std::log2(1.0 + p * gains[ch] / (i_agg[ch] + noise));
  };
  GridBest best;
  best.powers.assign(k, 0.0);
  auto consider = [&](const std::vector<double>& p, double rate, double sum) {
    if (rate < params.r_min - 1e-12) return;
    double value = rate / (sum / params.eta + circuit);
    if (value > best.value) {
      best.value = value;
      best.powers = p;
    }
  };
  if (k == 1) {
    for (int a = 0; a <= steps; ++a) {
      double p = a * step;
      consider({p}, rate1(0, p), p);
    }
  } else {
    for (int a = 0; a <= steps; ++a) {
      double pa = a * step;
      double ra = rate1(0, pa);
      for (int b = 0; a + b <= steps; ++b) {
        double pb = b * step;
        consider({pa, pb}, ra + rate1(1, pb), pa + pb);
      }
    }
  }
  return best;
}

// Same scan maximizing the rate instead of the EE ratio.
inline GridBest grid_max_rate(const std::vector<double>& i_agg, double noise,
                              const std::vector<double>& gains, const UEParams& params,
                              double step) {
  const int k = static_cast<int>(gains.size());
  const int steps = static_cast<int>(std::floor(params.p_max / step + 1e-9));
  auto rate1 = [&](int ch, double p) {
    return std::log2(1.0 + p * gains[ch] / (i_agg[ch] + noise));
  };
  GridBest best;
  best.powers.assign(k, 0.0);
  if (k == 1) {
    for (int a = 0; a <= steps; ++a) {
      double p = a * step;
      double r = rate1(0, p);
      if (r > best.value) {
        best.value = r;
        best.powers = {p};
      }
    }
  } else {
    for (int a = 0; a <= steps; ++a) {
      double pa = a * step;
      double ra = rate1(0, pa);
      for (int b = 0; a + b <= steps; ++b) {
        double pb = b * step;
        double r = ra + rate1(1, pb);
        if (r > best.value) {
          best.value = r;
          best.powers = {pa, pb};
        }
      }
    }
  }
  return best;
}

}  // namespace testutil
