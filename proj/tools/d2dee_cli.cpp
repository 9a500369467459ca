#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "d2dee/analysis.hpp"
#include "d2dee/game.hpp"
#include "d2dee/harness.hpp"
#include "d2dee/net_model.hpp"

namespace {

using d2dee::OutputFormat;

std::string shortest_decimal(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

// Generic plot-ready table: fixed column order, deterministic formatting.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::initializer_list<std::string> cells) { rows.emplace_back(cells); }

  std::string format(OutputFormat fmt) const {
    if (fmt == OutputFormat::csv) {
      std::string out;
      for (std::size_t c = 0; c < columns.size(); ++c) {
        out += columns[c];
        out += c + 1 < columns.size() ? "," : "\n";
      }
      for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
          out += row[c];
          out += c + 1 < row.size() ? "," : "\n";
        }
      }
      return out;
    }
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& row : rows) {
      nlohmann::ordered_json obj;
      for (std::size_t c = 0; c < columns.size(); ++c) {
        double num;
        auto [ptr, ec] = std::from_chars(row[c].data(), row[c].data() + row[c].size(), num);
        if (ec == std::errc{} && ptr == row[c].data() + row[c].size()) {
          obj[columns[c]] = num;
        } else {
          obj[columns[c]] = row[c];
        }
      }
      arr.push_back(obj);
    }
    return arr.dump(2) + "\n";
  }
};

std::string resolve_out_path(const std::string& out) {
  std::filesystem::path p(out);
  if (const char* dir = std::getenv("D2DEE_OUT_DIR"); dir && *dir && p.is_relative()) {
    p = std::filesystem::path(dir) / p;
  }
  return p.string();
}

void write_file(const std::string& path, const std::string& content) {
  std::string resolved = resolve_out_path(path);
  std::ofstream out(resolved, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open output file: " + resolved);
  }
  out << content;
}

OutputFormat parse_format(const std::string& name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  throw CLI::ValidationError("--format must be csv or json");
}

d2dee::Policy parse_policy(const std::string& name) {
  if (name == "energy-efficient" || name == "ee") return d2dee::Policy::energy_efficient;
  if (name == "spectral-efficient" || name == "se") return d2dee::Policy::spectral_efficient;
  if (name == "random") return d2dee::Policy::random;
  throw CLI::ValidationError("unknown policy: " + name);
}

// Symmetric single-pair model at the reference simulation parameters.
d2dee::SymmetricModel reference_model(const d2dee::ScenarioConfig& cfg) {
  d2dee::SymmetricModel model;
  model.g = 1.0;
  model.n = 1;
  model.k = 1;
  model.noise = cfg.noise_w;
  double p_max = d2dee::dbm_to_watts(cfg.p_max_dbm);
  double p_cir = d2dee::dbm_to_watts(cfg.p_cir_dbm);
  model.d2d = {p_max, cfg.r_min_d, p_cir, cfg.eta};
  model.cell = {p_max, cfg.r_min_c, p_cir, cfg.eta};
  return model;
}

void add_scenario_options(CLI::App* cmd, d2dee::ScenarioConfig& cfg) {
  cmd->add_option("--cell_radius", cfg.cell_radius, "Cell radius [m]");
  cmd->add_option("--d2d_max_dist", cfg.d2d_max_dist, "Max D2D pair distance [m]");
  cmd->add_option("--n_d2d", cfg.n_d2d, "Number of D2D pairs");
  cmd->add_option("--n_cell", cfg.n_cell, "Number of cellular UEs (= channels)");
  cmd->add_option("--p_max_dbm", cfg.p_max_dbm, "Max transmit power [dBm]");
  cmd->add_option("--p_cir_dbm", cfg.p_cir_dbm, "Circuit power [dBm]");
  cmd->add_option("--noise_w", cfg.noise_w, "Noise power [W]");
  cmd->add_option("--eta", cfg.eta, "PA efficiency in (0,1)");
  cmd->add_option("--r_min_c", cfg.r_min_c, "Cellular QoS [bits/s/Hz]");
  cmd->add_option("--r_min_d", cfg.r_min_d, "D2D QoS [bits/s/Hz]");
  cmd->add_option("--max_rounds", cfg.max_rounds, "Game rounds cap");
  cmd->set_config("--config", "", "Flat key=value scenario file; CLI flags override");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Noncooperative energy-efficiency game simulator for D2D underlay networks"};
  app.require_subcommand(1);

  d2dee::ScenarioConfig cfg;
  std::string out_path;
  std::string format_name = "csv";
  std::vector<std::string> policy_names = {"energy-efficient", "spectral-efficient", "random"};

  auto add_io = [&](CLI::App* cmd) {
    cmd->add_option("--seed", cfg.seed, "Master RNG seed")->required();
    cmd->add_option("--trials", cfg.trials, "Monte Carlo trials")->required();
    cmd->add_option("--policy", policy_names,
                    "Policies (repeatable): ee, se, random")
        ->required();
    cmd->add_option("--out", out_path, "Output path (D2DEE_OUT_DIR prefixes relative paths)")
        ->required();
    cmd->add_option("--format", format_name, "csv or json")
        ->required()
        ->check(CLI::IsMember({"csv", "json"}));
  };

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo EE/SE campaign across policies");
  add_scenario_options(simulate, cfg);
  add_io(simulate);
  int n_threads = 0;
  simulate->add_option("--threads", n_threads, "Worker threads (0 = hardware)");

  auto* tradeoff = app.add_subcommand("tradeoff", "EE/SE tradeoff sweep for the cellular link");
  add_scenario_options(tradeoff, cfg);
  add_io(tradeoff);
  std::vector<double> i_db_list = {-20.0, -15.0, -10.0};
  double se_max = 7.0, se_step = 0.2;
  tradeoff->add_option("--i-db", i_db_list, "Interference levels [dB]");
  tradeoff->add_option("--se-max", se_max, "Sweep upper bound [bits/s/Hz]");
  tradeoff->add_option("--se-step", se_step, "Sweep step [bits/s/Hz]");

  auto* gaps = app.add_subcommand("gaps", "Cellular EE/SE gaps vs interference level");
  add_scenario_options(gaps, cfg);
  add_io(gaps);
  double i_min = -30.0, i_max = -5.0, i_step = 1.0;
  gaps->add_option("--i-min", i_min, "Sweep start [dB]");
  gaps->add_option("--i-max", i_max, "Sweep end [dB]");
  gaps->add_option("--i-step", i_step, "Sweep step [dB]");

  auto* poa = app.add_subcommand("poa", "Price of anarchy vs QoS requirement");
  add_scenario_options(poa, cfg);
  add_io(poa);
  double rmin_max = 1.0, rmin_step = 0.1;
  int grid = 50;
  poa->add_option("--rmin-max", rmin_max, "D2D QoS sweep upper bound [bits/s/Hz]");
  poa->add_option("--rmin-step", rmin_step, "D2D QoS sweep step");
  poa->add_option("--grid", grid, "Grid subdivisions per power dimension");

  auto* topology = app.add_subcommand("topology", "Scatter data for one generated topology");
  add_scenario_options(topology, cfg);
  add_io(topology);

  CLI11_PARSE(app, argc, argv);

  try {
    OutputFormat fmt = parse_format(format_name);

    if (simulate->parsed()) {
      std::vector<d2dee::Policy> policies;
      for (const auto& name : policy_names) policies.push_back(parse_policy(name));
      d2dee::CampaignResult result = d2dee::run_campaign(cfg, policies, n_threads);
      write_file(out_path, d2dee::format_results(result.table, fmt));
    } else if (tradeoff->parsed()) {
      d2dee::SymmetricModel model = reference_model(cfg);
      std::vector<double> se_grid;
      for (double se = 0.0; se <= se_max + 1e-9; se += se_step) se_grid.push_back(se);
      Table table;
      table.columns = {"i_db", "se", "power_w", "ee", "feasible"};
      for (double i_db : i_db_list) {
        model.i_level = d2dee::db_to_linear(i_db);
        auto curve = d2dee::tradeoff_curve(model, se_grid, model.d2d.p_max);
        for (const auto& pt : curve) {
          table.add_row({shortest_decimal(i_db), shortest_decimal(pt.se),
                         shortest_decimal(pt.power), shortest_decimal(pt.ee),
                         pt.feasible ? "1" : "0"});
        }
      }
      write_file(out_path, table.format(fmt));
    } else if (gaps->parsed()) {
      d2dee::SymmetricModel model = reference_model(cfg);
      std::vector<double> i_grid;
      for (double v = i_min; v <= i_max + 1e-9; v += i_step) i_grid.push_back(v);
      auto points = d2dee::gap_vs_interference(model, i_grid);
      Table table;
      table.columns = {"i_db", "ee_gap_cell", "se_gap_cell"};
      for (const auto& pt : points) {
        table.add_row({shortest_decimal(pt.i_db), shortest_decimal(pt.ee_gap_cell),
                       shortest_decimal(pt.se_gap_cell)});
      }
      write_file(out_path, table.format(fmt));
    } else if (poa->parsed()) {
      Table table;
      table.columns = {"r_min_d", "r_min_c", "mean_poa", "trials"};
      for (double r = 0.0; r <= rmin_max + 1e-9; r += rmin_step) {
        double sum = 0.0;
        for (int t = 0; t < cfg.trials; ++t) {
          d2dee::ScenarioConfig one = cfg;
          one.n_d2d = 1;
          one.n_cell = 1;
          one.r_min_d = r;
          one.r_min_c = r / 5.0;
          d2dee::Rng rng = d2dee::Rng::substream(cfg.seed, static_cast<std::uint64_t>(t));
          d2dee::NetworkInstance inst = d2dee::generate_topology(one, rng);
          d2dee::GameConfig gc;
          gc.policy = parse_policy(policy_names.front());
          sum += d2dee::price_of_anarchy(inst, gc, grid);
        }
        table.add_row({shortest_decimal(r), shortest_decimal(r / 5.0),
                       shortest_decimal(sum / cfg.trials), std::to_string(cfg.trials)});
      }
      write_file(out_path, table.format(fmt));
    } else if (topology->parsed()) {
      d2dee::Rng rng = d2dee::Rng::substream(cfg.seed, 0);
      d2dee::Topology pos;
      d2dee::generate_topology(cfg, rng, &pos);
      Table table;
      table.columns = {"role", "index", "x", "y"};
      for (std::size_t k = 0; k < pos.cell_ue.size(); ++k) {
        table.add_row({"cell_ue", std::to_string(k), shortest_decimal(pos.cell_ue[k].x),
                       shortest_decimal(pos.cell_ue[k].y)});
      }
      for (std::size_t i = 0; i < pos.d2d_tx.size(); ++i) {
        table.add_row({"d2d_tx", std::to_string(i), shortest_decimal(pos.d2d_tx[i].x),
                       shortest_decimal(pos.d2d_tx[i].y)});
      }
      for (std::size_t i = 0; i < pos.d2d_rx.size(); ++i) {
        table.add_row({"d2d_rx", std::to_string(i), shortest_decimal(pos.d2d_rx[i].x),
                       shortest_decimal(pos.d2d_rx[i].y)});
      }
      write_file(out_path, table.format(fmt));
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return 0;
}
