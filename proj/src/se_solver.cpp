#include "d2dee/se_solver.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "waterline.hpp"

namespace d2dee {

namespace {

constexpr double kLog2e = std::numbers::log2e;

}  // namespace

std::vector<double> waterfill_se_d2d(const InterferenceView& view, double alpha, double beta,
                                     const UEParams& params, std::span<const double> gains) {
  (void)params;
  if (beta <= 0.0) throw std::domain_error("waterfill: infinite water level (beta == 0)");
  double level = (1.0 + alpha) * kLog2e / beta;
  std::vector<double> p(gains.size());
  for (std::size_t k = 0; k < gains.size(); ++k) {
    double floor = gains[k] > 0.0 ? (view.i_agg[k] + view.noise) / gains[k] : detail::kInf;
    p[k] = std::max(0.0, level - floor);
  }
  return p;
}

double waterfill_se_cellular(const InterferenceView& view, double delta_m, double theta,
                             const UEParams& params, double g_c) {
  InterferenceView single{{view.i_agg.at(0)}, view.noise};
  return waterfill_se_d2d(single, delta_m, theta, params, std::vector<double>{g_c})[0];
}

SolverReport solve_se(const InterferenceView& view, const UEParams& params,
                      std::span<const double> gains, const DualConfig& cfg, LinkKind kind) {
  (void)cfg;
  (void)kind;
  const auto floors = detail::level_floors(view, gains);
  SolverReport report;
  if (!detail::any_usable(floors)) {
    report.powers.assign(gains.size(), 0.0);
    report.feasible = params.r_min <= 0.0;
    return report;
  }

  // K = 1 short-circuit and the general case coincide here: the rate is
  // strictly increasing in every power, so the sum constraint is active and
  // the split is the common-level water-filling at the budget.
  double w_star = gains.size() == 1
                      ? floors[0] + params.p_max
                      : detail::level_for_sum(floors, params.p_max);
  report.powers = detail::powers_at_level(floors, w_star);
  report.q_star = detail::rate_of_powers(floors, report.powers);
  report.outer_iters = 1;
  report.inner_iters = 1;
  report.feasible = report.q_star >= params.r_min - 1e-9;
  report.subtractive_residual = 0.0;
  if (!report.feasible) {
    // Max-power fallback, flagged; mirrors the EE solver's infeasible path.
    report.subtractive_residual = report.q_star - params.r_min;
  }
  return report;
}

}  // namespace d2dee
