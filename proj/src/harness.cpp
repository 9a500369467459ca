#include "d2dee/harness.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

namespace d2dee {

namespace {

constexpr double kMinDistance = 1.0;  // m; avoids unbounded d^-2 gains

struct Point {
  double x, y;
};

Point uniform_in_disk(Rng& rng, Point center, double radius) {
  double r = radius * std::sqrt(rng.uniform());
  double theta = 2.0 * std::numbers::pi * rng.uniform();
  return {center.x + r * std::cos(theta), center.y + r * std::sin(theta)};
}

double distance(Point a, Point b) {
  return std::max(kMinDistance, std::hypot(a.x - b.x, a.y - b.y));
}

double pathloss(Point a, Point b) {
  double d = distance(a, b);
  return 1.0 / (d * d);
}

}  // namespace

NetworkInstance generate_topology(const ScenarioConfig& cfg, Rng& rng, Topology* positions) {
  if (cfg.d2d_max_dist >= cfg.cell_radius) {
    throw std::invalid_argument("d2d_max_dist must be smaller than cell_radius");
  }
  const Point bs{0.0, 0.0};
  std::vector<Point> cell_ue(cfg.n_cell), d2d_tx(cfg.n_d2d), d2d_rx(cfg.n_d2d);
  for (auto& p : cell_ue) p = uniform_in_disk(rng, bs, cfg.cell_radius);
  for (int i = 0; i < cfg.n_d2d; ++i) {
    d2d_tx[i] = uniform_in_disk(rng, bs, cfg.cell_radius);
    for (int attempt = 0; attempt < 1000; ++attempt) {
      d2d_rx[i] = uniform_in_disk(rng, d2d_tx[i], cfg.d2d_max_dist);
      if (std::hypot(d2d_rx[i].x, d2d_rx[i].y) <= cfg.cell_radius) break;
    }
  }

  NetworkInstance inst;
  inst.n_d2d = cfg.n_d2d;
  inst.n_cell = cfg.n_cell;
  inst.noise = cfg.noise_w;

  const double p_max = dbm_to_watts(cfg.p_max_dbm);
  const double p_cir = dbm_to_watts(cfg.p_cir_dbm);
  inst.ue_d2d.assign(cfg.n_d2d, {p_max, cfg.r_min_d, p_cir, cfg.eta});
  inst.ue_cell.assign(cfg.n_cell, {p_max, cfg.r_min_c, p_cir, cfg.eta});

  auto gain = [&](Point a, Point b) { return pathloss(a, b) * rng.exponential(); };

  inst.g_d2d.assign(cfg.n_d2d, std::vector<double>(cfg.n_cell));
  for (int i = 0; i < cfg.n_d2d; ++i) {
    for (int k = 0; k < cfg.n_cell; ++k) inst.g_d2d[i][k] = gain(d2d_tx[i], d2d_rx[i]);
  }
  inst.g_cell.resize(cfg.n_cell);
  for (int k = 0; k < cfg.n_cell; ++k) inst.g_cell[k] = gain(cell_ue[k], bs);
  inst.g_c2d.assign(cfg.n_cell, std::vector<double>(cfg.n_d2d));
  for (int k = 0; k < cfg.n_cell; ++k) {
    for (int i = 0; i < cfg.n_d2d; ++i) inst.g_c2d[k][i] = gain(cell_ue[k], d2d_rx[i]);
  }
  inst.g_d2d_x.assign(cfg.n_d2d,
                      std::vector<std::vector<double>>(cfg.n_d2d, std::vector<double>(cfg.n_cell, 0.0)));
  for (int j = 0; j < cfg.n_d2d; ++j) {
    for (int i = 0; i < cfg.n_d2d; ++i) {
      if (i == j) continue;
      for (int k = 0; k < cfg.n_cell; ++k) inst.g_d2d_x[j][i][k] = gain(d2d_tx[j], d2d_rx[i]);
    }
  }
  inst.g_d2b.assign(cfg.n_d2d, std::vector<double>(cfg.n_cell));
  for (int i = 0; i < cfg.n_d2d; ++i) {
    for (int k = 0; k < cfg.n_cell; ++k) inst.g_d2b[i][k] = gain(d2d_tx[i], bs);
  }

  if (positions) {
    positions->cell_ue.clear();
    positions->d2d_tx.clear();
    positions->d2d_rx.clear();
    for (auto p : cell_ue) positions->cell_ue.push_back({p.x, p.y});
    for (auto p : d2d_tx) positions->d2d_tx.push_back({p.x, p.y});
    for (auto p : d2d_rx) positions->d2d_rx.push_back({p.x, p.y});
  }
  return inst;
}

std::string to_string(Policy policy) {
  switch (policy) {
    case Policy::energy_efficient: return "energy-efficient";
    case Policy::spectral_efficient: return "spectral-efficient";
    case Policy::random: return "random";
  }
  return "unknown";
}

namespace {

struct TrialData {
  // [policy][round][metric]
  std::vector<std::vector<std::array<double, 4>>> per_round;
  std::vector<int> convergence_rounds;
  std::vector<double> final_d2d_ee;
  std::vector<double> final_cell_ee;
};

double mean_of(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

TrialData run_trial(const ScenarioConfig& cfg, const std::vector<Policy>& policies,
                    std::uint64_t trial) {
  Rng rng = Rng::substream(cfg.seed, trial);
  NetworkInstance inst = generate_topology(cfg, rng);

  TrialData data;
  data.per_round.resize(policies.size());
  for (std::size_t pi = 0; pi < policies.size(); ++pi) {
    GameConfig gc;
    gc.policy = policies[pi];
    gc.max_rounds = cfg.max_rounds;
    gc.rng_seed = splitmix64(splitmix64(cfg.seed) ^ (trial * 8 + pi + 1));
    GameTrace trace = run_to_equilibrium(inst, gc);

    auto& rounds = data.per_round[pi];
    rounds.resize(cfg.max_rounds);
    int played = static_cast<int>(trace.ee_d2d.size());
    for (int r = 0; r < cfg.max_rounds; ++r) {
      int src = std::min(r, played - 1);  // converged games hold their values
      rounds[r] = {mean_of(trace.ee_d2d[src]), mean_of(trace.se_d2d[src]),
                   mean_of(trace.ee_cell[src]), mean_of(trace.se_cell[src])};
    }
    data.convergence_rounds.push_back(trace.converged ? trace.rounds_to_converge : -1);
    data.final_d2d_ee.push_back(rounds.back()[0]);
    data.final_cell_ee.push_back(rounds.back()[2]);
  }
  return data;
}

}  // namespace

CampaignResult run_campaign(const ScenarioConfig& cfg, const std::vector<Policy>& policies,
                            int n_threads) {
  if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
  std::vector<TrialData> trials(cfg.trials);

  int workers = n_threads > 0 ? n_threads
                              : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  workers = std::min(workers, cfg.trials);
  {
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&]() {
        for (int t = next.fetch_add(1); t < cfg.trials; t = next.fetch_add(1)) {
          trials[t] = run_trial(cfg, policies, static_cast<std::uint64_t>(t));
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  static const char* kMetrics[4] = {"d2d_ee", "d2d_se", "cell_ee", "cell_se"};
  CampaignResult result;
  result.convergence_rounds.resize(policies.size());
  result.final_d2d_ee.assign(policies.size(), 0.0);
  result.final_cell_ee.assign(policies.size(), 0.0);

  // Ordered reduction by trial index.
  std::vector<std::vector<std::array<double, 4>>> sums(
      policies.size(), std::vector<std::array<double, 4>>(cfg.max_rounds, {0, 0, 0, 0}));
  for (int t = 0; t < cfg.trials; ++t) {
    const TrialData& data = trials[t];
    for (std::size_t pi = 0; pi < policies.size(); ++pi) {
      for (int r = 0; r < cfg.max_rounds; ++r) {
        for (int m = 0; m < 4; ++m) sums[pi][r][m] += data.per_round[pi][r][m];
      }
      result.convergence_rounds[pi].push_back(data.convergence_rounds[pi]);
      result.final_d2d_ee[pi] += data.final_d2d_ee[pi];
      result.final_cell_ee[pi] += data.final_cell_ee[pi];
    }
  }
  for (std::size_t pi = 0; pi < policies.size(); ++pi) {
    result.final_d2d_ee[pi] /= cfg.trials;
    result.final_cell_ee[pi] /= cfg.trials;
  }

  double metric_max[4] = {0, 0, 0, 0};
  for (std::size_t pi = 0; pi < policies.size(); ++pi) {
    for (int r = 0; r < cfg.max_rounds; ++r) {
      for (int m = 0; m < 4; ++m) metric_max[m] = std::max(metric_max[m], sums[pi][r][m]);
    }
  }

  for (std::size_t pi = 0; pi < policies.size(); ++pi) {
    for (int m = 0; m < 4; ++m) {
      for (int r = 0; r < cfg.max_rounds; ++r) {
        double mean = sums[pi][r][m] / cfg.trials;
        double norm = metric_max[m] > 0.0 ? sums[pi][r][m] / metric_max[m] : 0.0;
        result.table.push_back({to_string(policies[pi]), r + 1, kMetrics[m], mean, norm,
                                cfg.trials});
      }
    }
  }
  return result;
}

namespace {

std::string shortest_decimal(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace

std::string format_results(const std::vector<CampaignRow>& table, OutputFormat format) {
  if (format == OutputFormat::csv) {
    std::string out = "policy,round,metric,mean,normalized_mean,trials\n";
    for (const auto& row : table) {
      out += row.policy;
      out += ',';
      out += std::to_string(row.round);
      out += ',';
      out += row.metric;
      out += ',';
      out += shortest_decimal(row.mean);
      out += ',';
      out += shortest_decimal(row.normalized_mean);
      out += ',';
      out += std::to_string(row.trials);
      out += '\n';
    }
    return out;
  }
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& row : table) {
    arr.push_back({{"policy", row.policy},
                   {"round", row.round},
                   {"metric", row.metric},
                   {"mean", row.mean},
                   {"normalized_mean", row.normalized_mean},
                   {"trials", row.trials}});
  }
  return arr.dump(2) + "\n";
}

void emit_results(const std::vector<CampaignRow>& table, OutputFormat format,
                  const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << format_results(table, format);
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace d2dee
