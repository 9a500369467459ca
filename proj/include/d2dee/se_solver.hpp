#pragma once

#include <span>
#include <vector>

#include "d2dee/ee_solver.hpp"

namespace d2dee {

// Spectral-efficiency baseline: per-player rate maximization with the same
// water-filling structure and no Dinkelbach loop. SolverReport.q_star holds
// the achieved SE.

// Water-filling step at fixed multipliers. Throws std::domain_error when
// beta == 0 (infinite water level).
std::vector<double> waterfill_se_d2d(const InterferenceView& view, double alpha, double beta,
                                     const UEParams& params, std::span<const double> gains);

double waterfill_se_cellular(const InterferenceView& view, double delta_m, double theta,
                             const UEParams& params, double g_c);

// Rate maximization subject to the QoS and sum-power constraints. The rate
// is strictly increasing in power, so the power budget is exhausted whenever
// any channel is usable.
SolverReport solve_se(const InterferenceView& view, const UEParams& params,
                      std::span<const double> gains, const DualConfig& cfg, LinkKind kind);

}  // namespace d2dee
