#pragma once

#include <cstdint>
#include <vector>

#include "d2dee/ee_solver.hpp"
#include "d2dee/net_model.hpp"
#include "d2dee/rng.hpp"
#include "d2dee/se_solver.hpp"

namespace d2dee {

enum class Policy { energy_efficient, spectral_efficient, random };

struct PlayerId {
  enum class Kind { d2d, cellular };
  Kind kind = Kind::d2d;
  int index = 0;
};

struct GameConfig {
  Policy policy = Policy::energy_efficient;
  int max_rounds = 20;
  double eps_eq = 1e-4;  // absolute watts, max over profile entries
  // Empty means the default order: D2D pairs 0..N-1, then cellular 0..K-1.
  std::vector<PlayerId> update_order;
  std::uint64_t rng_seed = 0;  // for the random policy
  DinkelbachConfig solver;     // EE policy; solver.inner also drives the SE policy
};

struct GameTrace {
  std::vector<PowerProfile> profiles;          // snapshot after each round
  std::vector<std::vector<double>> ee_d2d;     // [round][pair]
  std::vector<std::vector<double>> se_d2d;     // [round][pair]
  std::vector<std::vector<double>> ee_cell;    // [round][ue]
  std::vector<std::vector<double>> se_cell;    // [round][ue]
  int rounds_to_converge = -1;
  bool converged = false;
};

// Aggregate interference the given player sees under the profile, excluding
// its own transmissions: the denominator terms of its SINR per channel.
InterferenceView interference_view(const NetworkInstance& inst, const PowerProfile& prof,
                                   PlayerId player);

// Feasible random strategy: cellular power uniform in [0, p_max]; D2D powers
// a uniform direction scaled by s * p_max with s uniform in [0, 1].
std::vector<double> random_allocation(const NetworkInstance& inst, PlayerId player, Rng& rng);

// One sequential sweep: every player in order is replaced by its best
// response against the profile as updated so far this round.
PowerProfile play_round(const NetworkInstance& inst, const PowerProfile& prof,
                        const GameConfig& cfg, Rng& rng);

// Iterates play_round until the max-entry profile change drops below eps_eq
// or max_rounds. The random policy always runs the full max_rounds.
GameTrace run_to_equilibrium(const NetworkInstance& inst, const GameConfig& cfg);

// Grid-samples feasible unilateral deviations for every player and returns
// the largest relative utility improvement found. Near zero certifies a Nash
// equilibrium at the grid resolution. Throws on grid_step <= 0.
double verify_equilibrium(const NetworkInstance& inst, const PowerProfile& prof,
                          Policy policy, double grid_step);

}  // namespace d2dee
