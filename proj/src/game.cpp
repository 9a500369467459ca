#include "d2dee/game.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "waterline.hpp"

namespace d2dee {

namespace {

std::vector<PlayerId> default_order(const NetworkInstance& inst) {
  std::vector<PlayerId> order;
  order.reserve(inst.n_d2d + inst.n_cell);
  for (int i = 0; i < inst.n_d2d; ++i) order.push_back({PlayerId::Kind::d2d, i});
  for (int k = 0; k < inst.n_cell; ++k) order.push_back({PlayerId::Kind::cellular, k});
  return order;
}

double max_profile_change(const PowerProfile& a, const PowerProfile& b) {
  double diff = 0.0;
  for (std::size_t i = 0; i < a.p_d2d.size(); ++i) {
    for (std::size_t k = 0; k < a.p_d2d[i].size(); ++k) {
      diff = std::max(diff, std::abs(a.p_d2d[i][k] - b.p_d2d[i][k]));
    }
  }
  for (std::size_t k = 0; k < a.p_cell.size(); ++k) {
    diff = std::max(diff, std::abs(a.p_cell[k] - b.p_cell[k]));
  }
  return diff;
}

}  // namespace

InterferenceView interference_view(const NetworkInstance& inst, const PowerProfile& prof,
                                   PlayerId player) {
  InterferenceView view;
  view.noise = inst.noise;
  if (player.kind == PlayerId::Kind::d2d) {
    int i = player.index;
    view.i_agg.resize(inst.n_cell);
    for (int k = 0; k < inst.n_cell; ++k) {
      double agg = prof.p_cell[k] * inst.g_c2d[k][i];
      for (int j = 0; j < inst.n_d2d; ++j) {
        if (j == i) continue;
        agg += prof.p_d2d[j][k] * inst.g_d2d_x[j][i][k];
      }
      view.i_agg[k] = agg;
    }
  } else {
    int k = player.index;
    double agg = 0.0;
    for (int i = 0; i < inst.n_d2d; ++i) {
      agg += prof.p_d2d[i][k] * inst.g_d2b[i][k];
    }
    view.i_agg = {agg};
  }
  return view;
}

std::vector<double> random_allocation(const NetworkInstance& inst, PlayerId player, Rng& rng) {
  if (player.kind == PlayerId::Kind::cellular) {
    return {rng.uniform(0.0, inst.ue_cell[player.index].p_max)};
  }
  const UEParams& params = inst.ue_d2d[player.index];
  std::vector<double> u(inst.n_cell);
  double total = 0.0;
  for (double& v : u) {
    v = rng.uniform();
    total += v;
  }
  double scale = rng.uniform();
  std::vector<double> p(inst.n_cell, 0.0);
  if (total > 0.0) {
    for (int k = 0; k < inst.n_cell; ++k) {
      p[k] = scale * params.p_max * u[k] / total;
    }
  }
  return p;
}

PowerProfile play_round(const NetworkInstance& inst, const PowerProfile& prof,
                        const GameConfig& cfg, Rng& rng) {
  PowerProfile next = prof;
  const auto order = cfg.update_order.empty() ? default_order(inst) : cfg.update_order;
  for (PlayerId player : order) {
    InterferenceView view = interference_view(inst, next, player);
    std::vector<double> powers;
    if (cfg.policy == Policy::random) {
      powers = random_allocation(inst, player, rng);
    } else if (player.kind == PlayerId::Kind::d2d) {
      const UEParams& params = inst.ue_d2d[player.index];
      const auto& gains = inst.g_d2d[player.index];
      powers = cfg.policy == Policy::energy_efficient
                   ? dinkelbach_solve(view, params, gains, cfg.solver, LinkKind::d2d).powers
                   : solve_se(view, params, gains, cfg.solver.inner, LinkKind::d2d).powers;
    } else {
      const UEParams& params = inst.ue_cell[player.index];
      std::vector<double> gains{inst.g_cell[player.index]};
      powers = cfg.policy == Policy::energy_efficient
                   ? dinkelbach_solve(view, params, gains, cfg.solver, LinkKind::cellular).powers
                   : solve_se(view, params, gains, cfg.solver.inner, LinkKind::cellular).powers;
    }
    if (player.kind == PlayerId::Kind::d2d) {
      next.p_d2d[player.index] = std::move(powers);
    } else {
      next.p_cell[player.index] = powers[0];
    }
  }
  return next;
}

GameTrace run_to_equilibrium(const NetworkInstance& inst, const GameConfig& cfg) {
  if (cfg.max_rounds < 1) throw std::invalid_argument("max_rounds must be >= 1");
  if (cfg.eps_eq <= 0.0) throw std::invalid_argument("eps_eq must be > 0");
  GameTrace trace;
  PowerProfile prof = PowerProfile::zeros(inst);
  Rng rng(cfg.rng_seed);
  for (int round = 1; round <= cfg.max_rounds; ++round) {
    PowerProfile next = play_round(inst, prof, cfg, rng);
    double diff = max_profile_change(prof, next);
    prof = next;

    std::vector<double> ee_d(inst.n_d2d), se_d(inst.n_d2d);
    std::vector<double> ee_c(inst.n_cell), se_c(inst.n_cell);
    for (int i = 0; i < inst.n_d2d; ++i) {
      ee_d[i] = ee_utility_d2d(inst, prof, i);
      se_d[i] = se_utility_d2d(inst, prof, i);
    }
    for (int k = 0; k < inst.n_cell; ++k) {
      ee_c[k] = ee_utility_cellular(inst, prof, k);
      se_c[k] = se_utility_cellular(inst, prof, k);
    }
    trace.profiles.push_back(prof);
    trace.ee_d2d.push_back(std::move(ee_d));
    trace.se_d2d.push_back(std::move(se_d));
    trace.ee_cell.push_back(std::move(ee_c));
    trace.se_cell.push_back(std::move(se_c));

    if (cfg.policy != Policy::random && diff < cfg.eps_eq) {
      trace.converged = true;
      trace.rounds_to_converge = round;
      break;
    }
  }
  return trace;
}

namespace {

// Utility of one player's candidate powers against fixed interference.
struct DeviationScan {
  const std::vector<double>* floors;  // (i_agg + N_0) / g per channel
  double eta;
  double circuit;
  double r_min;
  bool enforce_qos;
  bool use_ee;

  double best = 0.0;

  void consider(double rate, double sum_power) {
    if (enforce_qos && rate < r_min - 1e-9) return;
    double value = use_ee ? rate / (sum_power / eta + circuit) : rate;
    best = std::max(best, value);
  }
};

}  // namespace

double verify_equilibrium(const NetworkInstance& inst, const PowerProfile& prof,
                          Policy policy, double grid_step) {
  if (grid_step <= 0.0) throw std::invalid_argument("grid_step must be > 0");
  const bool use_ee = policy != Policy::spectral_efficient;
  double worst_gain = 0.0;

  for (int i = 0; i < inst.n_d2d; ++i) {
    const UEParams& params = inst.ue_d2d[i];
    InterferenceView view = interference_view(inst, prof, {PlayerId::Kind::d2d, i});
    std::vector<double> floors(inst.n_cell);
    for (int k = 0; k < inst.n_cell; ++k) {
      floors[k] = (view.i_agg[k] + view.noise) / inst.g_d2d[i][k];
    }
    // A player whose QoS is unachievable even at full power is pinned to the
    // solvers' max-power fallback; it has no admissible deviation to scan.
    double w_budget = detail::level_for_sum(floors, params.p_max);
    if (detail::rate_at_level(floors, w_budget) < params.r_min - 1e-9) continue;
    const int steps = std::max(1, static_cast<int>(std::floor(params.p_max / grid_step + 1e-9)));
    // Per-channel rate tables; the simplex walk then only adds table entries.
    std::vector<std::vector<double>> table(inst.n_cell, std::vector<double>(steps + 1));
    for (int k = 0; k < inst.n_cell; ++k) {
      for (int j = 0; j <= steps; ++j) {
        table[k][j] = std::log1p(j * grid_step / floors[k]) / std::numbers::ln2;
      }
    }
    double cur_rate = rate_d2d(inst, prof, i);
    DeviationScan scan{&floors, params.eta, 2.0 * params.p_cir, params.r_min,
                       cur_rate >= params.r_min - 1e-9, use_ee};
    // Enumerate all allocations with total steps <= budget.
    auto walk = [&](auto&& self, int k, int budget, double rate) -> void {
      if (k == inst.n_cell - 1) {
        for (int j = 0; j <= budget; ++j) {
          scan.consider(rate + table[k][j], (steps - budget + j) * grid_step);
        }
        return;
      }
      for (int j = 0; j <= budget; ++j) {
        self(self, k + 1, budget - j, rate + table[k][j]);
      }
    };
    walk(walk, 0, steps, 0.0);

    double cur = use_ee ? ee_utility_d2d(inst, prof, i) : cur_rate;
    worst_gain = std::max(worst_gain, (scan.best - cur) / std::max(cur, 1e-12));
  }

  for (int k = 0; k < inst.n_cell; ++k) {
    const UEParams& params = inst.ue_cell[k];
    InterferenceView view = interference_view(inst, prof, {PlayerId::Kind::cellular, k});
    double floor = (view.i_agg[0] + view.noise) / inst.g_cell[k];
    if (std::log1p(params.p_max / floor) / std::numbers::ln2 < params.r_min - 1e-9) continue;
    double cur_rate = rate_cellular(inst, prof, k);
    double best = 0.0;
    const int steps = std::max(1, static_cast<int>(std::floor(params.p_max / grid_step + 1e-9)));
    for (int j = 0; j <= steps; ++j) {
      double p = j * grid_step;
      double rate = std::log1p(p / floor) / std::numbers::ln2;
      if (cur_rate >= params.r_min - 1e-9 && rate < params.r_min - 1e-9) continue;
      double value = use_ee ? rate / (p / params.eta + params.p_cir) : rate;
      best = std::max(best, value);
    }
    double cur = use_ee ? ee_utility_cellular(inst, prof, k) : cur_rate;
    worst_gain = std::max(worst_gain, (best - cur) / std::max(cur, 1e-12));
  }
  return worst_gain;
}

}  // namespace d2dee
