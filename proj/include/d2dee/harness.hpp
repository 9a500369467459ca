#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "d2dee/game.hpp"
#include "d2dee/net_model.hpp"
#include "d2dee/rng.hpp"

namespace d2dee {

struct ScenarioConfig {
  double cell_radius = 500.0;   // m
  double d2d_max_dist = 25.0;   // m
  int n_d2d = 5;
  int n_cell = 3;
  double p_max_dbm = 23.0;      // ~200 mW
  double p_cir_dbm = 10.0;      // 10 mW
  double noise_w = 1e-7;
  double eta = 0.35;
  double r_min_c = 0.1;         // bits/s/Hz
  double r_min_d = 0.5;         // bits/s/Hz
  int trials = 1000;
  std::uint64_t seed = 0;
  int max_rounds = 20;
};

inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double watts_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }

// UE positions of one generated topology (BS at the origin).
struct Topology {
  struct Point {
    double x = 0.0;
    double y = 0.0;
  };
  std::vector<Point> cell_ue;
  std::vector<Point> d2d_tx;
  std::vector<Point> d2d_rx;
};

// Random placement in the cell disk with d^-2 * |h|^2 gains, |h|^2
// exponential with unit mean, independent per link and channel. Distances
// are floored at 1 m.
NetworkInstance generate_topology(const ScenarioConfig& cfg, Rng& rng,
                                  Topology* positions = nullptr);

struct CampaignRow {
  std::string policy;
  int round = 0;
  std::string metric;  // d2d_ee | d2d_se | cell_ee | cell_se
  double mean = 0.0;
  double normalized_mean = 0.0;
  int trials = 0;
};

struct CampaignResult {
  std::vector<CampaignRow> table;
  // Per policy (same order as the request): rounds to converge per trial,
  // -1 when the game did not converge within max_rounds.
  std::vector<std::vector<int>> convergence_rounds;
  // Per policy: mean converged (final-round) utilities across trials.
  std::vector<double> final_d2d_ee;
  std::vector<double> final_cell_ee;
};

std::string to_string(Policy policy);

// Monte Carlo campaign: per trial one topology shared by every policy, games
// run to max_rounds, per-round means aggregated across trials and
// max-normalized per metric. Deterministic for a fixed (config, seed)
// regardless of thread count.
CampaignResult run_campaign(const ScenarioConfig& cfg, const std::vector<Policy>& policies,
                            int n_threads = 0);

enum class OutputFormat { csv, json };

// Deterministic emission: fixed column order, shortest round-trip decimals,
// '\n' newlines, UTF-8.
void emit_results(const std::vector<CampaignRow>& table, OutputFormat format,
                  const std::string& path);

std::string format_results(const std::vector<CampaignRow>& table, OutputFormat format);

}  // namespace d2dee
