#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "d2dee/game.hpp"
#include "d2dee/net_model.hpp"

namespace d2dee {

// Symmetric-channel model: every signal channel has gain g and every
// interference channel has gain ghat = i_level * g.
struct SymmetricModel {
  double g = 1.0;
  double i_level = 0.0;  // I = ghat / g (linear)
  int n = 1;             // D2D pairs
  int k = 1;             // cellular UEs / channels
  UEParams d2d;
  UEParams cell;
  double noise = 1e-7;
};

struct TradeoffPoint {
  double se = 0.0;     // bits/s/Hz
  double ee = 0.0;     // bits/Hz/J
  double power = 0.0;  // watts
  bool feasible = true;
};

struct SymmetricGaps {
  double ee_d2d = 0.0;
  double se_d2d = 0.0;
  double ee_cell = 0.0;
  double se_cell = 0.0;
};

struct GapPoint {
  double i_db = 0.0;
  double ee_gap_cell = 0.0;
  double se_gap_cell = 0.0;
};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

// Golden-section maximizer for a unimodal function on [lo, hi].
double golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                          double tol = 1e-9);

// EE gap between the two policies' profiles for one D2D pair:
// EE(prof_ee) - EE(prof_se).
double ee_gap_d2d(const NetworkInstance& inst, const PowerProfile& prof_ee,
                  const PowerProfile& prof_se, int i);
// SE gap: SE(prof_se) - SE(prof_ee).
double se_gap_d2d(const NetworkInstance& inst, const PowerProfile& prof_ee,
                  const PowerProfile& prof_se, int i);
double ee_gap_cellular(const NetworkInstance& inst, const PowerProfile& prof_ee,
                       const PowerProfile& prof_se, int k);
double se_gap_cellular(const NetworkInstance& inst, const PowerProfile& prof_ee,
                       const PowerProfile& prof_se, int k);

// Closed-form gaps for the symmetric model. D2D powers are per channel.
SymmetricGaps symmetric_gaps(const SymmetricModel& model, double p_ee_d, double p_ee_c,
                             double p_se_d, double p_se_c);

// EE/SE tradeoff sweep for the cellular link: invert the rate to
// the required power per SE target, mark infeasible points beyond p_max.
std::vector<TradeoffPoint> tradeoff_curve(const SymmetricModel& model,
                                          const std::vector<double>& se_grid,
                                          double interferer_power);

// Centralized grid-search optimum of the network EE over the equilibrium EE.
// Requires n_d2d*n_cell + n_cell <= 4 power dimensions; throws otherwise.
double price_of_anarchy(const NetworkInstance& inst, const GameConfig& cfg,
                        int grid_resolution);

// Cellular EE and SE gaps across an interference-level sweep (dB). EE-optimal
// powers come from a fixed point of per-class 1-D golden-section solves;
// SE-optimal powers sit at the budget.
std::vector<GapPoint> gap_vs_interference(const SymmetricModel& model,
                                          const std::vector<double>& i_grid_db);

}  // namespace d2dee
