#include "d2dee/ee_solver.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "waterline.hpp"

namespace d2dee {

namespace {

constexpr double kLog2e = std::numbers::log2e;

// Multiplier reported for an unsatisfiable rate constraint.
constexpr double kAlphaCap = 1e6;

// Multiplier bootstrap so the water level is finite on the first outer
// iteration, where q = 0.
constexpr double kBetaInit = 1e-3;

double sum_powers(std::span<const double> p) {
  return std::accumulate(p.begin(), p.end(), 0.0);
}

}  // namespace

double circuit_power(const UEParams& params, LinkKind kind) {
  return kind == LinkKind::d2d ? 2.0 * params.p_cir : params.p_cir;
}

double transformed_objective(const InterferenceView& view, std::span<const double> powers,
                             double q, const UEParams& params, std::span<const double> gains,
                             LinkKind kind) {
  double rate = 0.0;
  for (std::size_t k = 0; k < gains.size(); ++k) {
    rate += std::log1p(powers[k] * gains[k] / (view.i_agg[k] + view.noise)) / std::numbers::ln2;
  }
  double p_total = sum_powers(powers) / params.eta + circuit_power(params, kind);
  return rate - q * p_total;
}

std::vector<double> waterfill_ee_d2d(const InterferenceView& view, double q, double alpha,
                                     double beta, const UEParams& params,
                                     std::span<const double> gains) {
  double denom = q + params.eta * beta;
  if (denom <= 0.0) throw std::domain_error("waterfill: infinite water level (q + eta*beta == 0)");
  double level = params.eta * (1.0 + alpha) * kLog2e / denom;
  std::vector<double> p(gains.size());
  for (std::size_t k = 0; k < gains.size(); ++k) {
    double floor = gains[k] > 0.0 ? (view.i_agg[k] + view.noise) / gains[k] : detail::kInf;
    p[k] = std::max(0.0, level - floor);
  }
  return p;
}

double waterfill_ee_cellular(const InterferenceView& view, double q, double delta_m,
                             double theta, const UEParams& params, double g_c) {
  InterferenceView single{{view.i_agg.at(0)}, view.noise};
  return waterfill_ee_d2d(single, q, delta_m, theta, params, std::vector<double>{g_c})[0];
}

DualResult dual_ascent(const InterferenceView& view, double q, const UEParams& params,
                       std::span<const double> gains, const DualConfig& cfg, LinkKind kind) {
  const auto floors = detail::level_floors(view, gains);
  DualResult out;
  if (!detail::any_usable(floors)) {
    out.powers.assign(gains.size(), 0.0);
    out.feasible = params.r_min <= 0.0;
    if (!out.feasible) out.alpha = kAlphaCap;
    return out;
  }

  // Finite surrogate level for the q = 0, beta = 0 corner during iteration.
  double w_cap = 0.0;
  for (double c : floors) {
    if (c < detail::kInf) w_cap = std::max(w_cap, c);
  }
  w_cap += params.p_max + 1.0;

  double alpha = 0.0;
  double beta = kBetaInit;
  int tau = 0;
  for (tau = 1; tau <= cfg.tau_max; ++tau) {
    double denom = q + params.eta * beta;
    double level = denom > 0.0 ? params.eta * (1.0 + alpha) * kLog2e / denom : w_cap;
    level = std::min(level, w_cap);
    double rate = detail::rate_at_level(floors, level);
    double sum = detail::sum_at_level(floors, level);
    double mu_a = cfg.mu0_alpha / std::sqrt(static_cast<double>(tau));
    double mu_b = cfg.mu0_beta / std::sqrt(static_cast<double>(tau));
    double alpha_next = std::max(0.0, alpha - mu_a * (rate - params.r_min));
    double beta_next = std::max(0.0, beta + mu_b * (sum - params.p_max));
    double change = std::max(std::abs(alpha_next - alpha), std::abs(beta_next - beta));
    alpha = alpha_next;
    beta = beta_next;
    if (change < cfg.eps_dual) break;
  }
  out.iters = std::min(tau, cfg.tau_max);

  // Exact KKT projection of the water level. The gradient iterates approach
  // this point; the projection pins the constraint and complementary
  // slackness residuals to the contract tolerances.
  double w_pmax = detail::level_for_sum(floors, params.p_max);
  double r_pmax = detail::rate_at_level(floors, w_pmax);
  if (r_pmax < params.r_min - 1e-9) {
    out.powers = detail::powers_at_level(floors, w_pmax);
    out.alpha = kAlphaCap;
    out.beta = std::max(0.0, kLog2e / w_pmax - q / params.eta);
    out.feasible = false;
    return out;
  }

  double w0 = q > 0.0 ? params.eta * kLog2e / q : detail::kInf;
  double w_star;
  if (w0 > w_pmax) {
    // Sum-power constraint active.
    w_star = w_pmax;
    out.alpha = 0.0;
    out.beta = std::max(0.0, kLog2e / w_star - q / params.eta);
  } else if (detail::rate_at_level(floors, w0) >= params.r_min) {
    // Interior optimum.
    w_star = w0;
    out.alpha = 0.0;
    out.beta = 0.0;
  } else {
    // Rate constraint active.
    w_star = detail::level_for_rate(floors, params.r_min, w_pmax);
    out.alpha = std::max(0.0, w_star * q / (params.eta * kLog2e) - 1.0);
    out.beta = 0.0;
  }
  out.powers = detail::powers_at_level(floors, w_star);
  out.feasible = true;
  return out;
}

SolverReport dinkelbach_solve(const InterferenceView& view, const UEParams& params,
                              std::span<const double> gains, const DinkelbachConfig& cfg,
                              LinkKind kind) {
  const auto floors = detail::level_floors(view, gains);
  const double circuit = circuit_power(params, kind);
  SolverReport report;
  double q = cfg.q_init;
  for (int n = 1; n <= cfg.l_max; ++n) {
    DualResult dual = dual_ascent(view, q, params, gains, cfg.inner, kind);
    report.outer_iters = n;
    report.inner_iters += dual.iters;
    report.powers = dual.powers;
    report.feasible = dual.feasible;

    double rate = detail::rate_of_powers(floors, dual.powers);
    double p_total = sum_powers(dual.powers) / params.eta + circuit;
    report.subtractive_residual = rate - q * p_total;
    double q_new = p_total > 0.0 ? rate / p_total : 0.0;
    if (p_total <= 0.0) throw std::domain_error("dinkelbach: total power is zero");

    if (!dual.feasible) {
      report.q_star = q_new;
      break;
    }
    if (report.subtractive_residual <= cfg.delta) {
      report.q_star = q_new;
      if (report.q_trace.empty() || q_new > report.q_trace.back()) {
        report.q_trace.push_back(q_new);
      }
      break;
    }
    q = q_new;
    report.q_star = q_new;
    report.q_trace.push_back(q);
  }
  return report;
}

double f_of_q(const InterferenceView& view, const UEParams& params,
              std::span<const double> gains, double q, LinkKind kind, const DualConfig& cfg) {
  DualResult dual = dual_ascent(view, q, params, gains, cfg, kind);
  return transformed_objective(view, dual.powers, q, params, gains, kind);
}

}  // namespace d2dee
