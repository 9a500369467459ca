#pragma once

#include <span>
#include <vector>

#include "d2dee/net_model.hpp"

namespace d2dee {

// Aggregate interference seen by one player, one entry per channel it may
// use (K entries for a D2D pair, one for a cellular UE). This is all a best
// response needs to know about the other players.
struct InterferenceView {
  std::vector<double> i_agg;  // [W] per channel
  double noise = 1e-7;        // N_0 [W]
};

struct DualConfig {
  double mu0_alpha = 0.1;  // initial step size for the rate multiplier
  double mu0_beta = 0.1;   // initial step size for the power multiplier
  int tau_max = 500;
  double eps_dual = 1e-6;  // stop when multiplier change drops below this
};

struct DinkelbachConfig {
  double q_init = 0.0;
  int l_max = 10;
  double delta = 1e-3;  // tolerance on the subtractive objective
  DualConfig inner;
};

struct SolverReport {
  std::vector<double> powers;        // per-channel [W]
  double q_star = 0.0;               // achieved EE (or SE for the SE solver)
  double subtractive_residual = 0.0; // r - q * p_total at exit
  int outer_iters = 0;
  int inner_iters = 0;
  bool feasible = true;              // QoS constraint satisfiable
  std::vector<double> q_trace;
};

struct DualResult {
  std::vector<double> powers;
  double alpha = 0.0;
  double beta = 0.0;
  int iters = 0;
  bool feasible = true;
};

// Circuit power differs per link class: both ends of a D2D pair draw it,
// only the transmitter side of a cellular link does.
enum class LinkKind { d2d, cellular };

double circuit_power(const UEParams& params, LinkKind kind);

// r(p) - q * p_total(p) for the player's channels; concave in the powers.
double transformed_objective(const InterferenceView& view, std::span<const double> powers,
                             double q, const UEParams& params, std::span<const double> gains,
                             LinkKind kind);

// Water-filling step for one D2D pair at fixed multipliers. Throws
// std::domain_error when q + eta*beta == 0 (infinite water level).
std::vector<double> waterfill_ee_d2d(const InterferenceView& view, double q, double alpha,
                                     double beta, const UEParams& params,
                                     std::span<const double> gains);

// Single-channel analogue for a cellular UE with multipliers delta_m, theta.
double waterfill_ee_cellular(const InterferenceView& view, double q, double delta_m,
                             double theta, const UEParams& params, double g_c);

// Inner solve of the transformed problem at fixed q: gradient multiplier
// updates with diminishing steps mu0/sqrt(tau), then an exact KKT projection
// of the water level so the returned powers satisfy the constraints and
// complementary slackness tightly.
DualResult dual_ascent(const InterferenceView& view, double q, const UEParams& params,
                       std::span<const double> gains, const DualConfig& cfg, LinkKind kind);

// Dinkelbach outer loop: q <- r/p_total until the subtractive residual drops
// below delta or l_max is reached. q_trace is strictly increasing on
// feasible instances.
SolverReport dinkelbach_solve(const InterferenceView& view, const UEParams& params,
                              std::span<const double> gains, const DinkelbachConfig& cfg,
                              LinkKind kind);

// F(q) = max_p r(p) - q * p_total(p) over the feasible set; monotone
// decreasing with a unique zero at the optimal EE.
double f_of_q(const InterferenceView& view, const UEParams& params,
              std::span<const double> gains, double q, LinkKind kind,
              const DualConfig& cfg = {});

}  // namespace d2dee
