#include "d2dee/analysis.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace d2dee {

namespace {

double log2_1p(double x) { return std::log1p(x) / std::numbers::ln2; }

}  // namespace

double golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                          double tol) {
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - gr * (b - a);
  double d = a + gr * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

double ee_gap_d2d(const NetworkInstance& inst, const PowerProfile& prof_ee,
                  const PowerProfile& prof_se, int i) {
  return ee_utility_d2d(inst, prof_ee, i) - ee_utility_d2d(inst, prof_se, i);
}

double se_gap_d2d(const NetworkInstance& inst, const PowerProfile& prof_ee,
                  const PowerProfile& prof_se, int i) {
  return se_utility_d2d(inst, prof_se, i) - se_utility_d2d(inst, prof_ee, i);
}

double ee_gap_cellular(const NetworkInstance& inst, const PowerProfile& prof_ee,
                       const PowerProfile& prof_se, int k) {
  return ee_utility_cellular(inst, prof_ee, k) - ee_utility_cellular(inst, prof_se, k);
}

double se_gap_cellular(const NetworkInstance& inst, const PowerProfile& prof_ee,
                       const PowerProfile& prof_se, int k) {
  return se_utility_cellular(inst, prof_se, k) - se_utility_cellular(inst, prof_ee, k);
}

SymmetricGaps symmetric_gaps(const SymmetricModel& model, double p_ee_d, double p_ee_c,
                             double p_se_d, double p_se_c) {
  const double I = model.i_level;
  const double n0g = model.noise / model.g;
  const double n = model.n;
  const double kch = model.k;

  // A D2D receiver hears the cellular UE and the other N-1 pairs.
  auto d2d_sinr = [&](double own, double cell, double peers) {
    return own / (cell * I + (n - 1.0) * peers * I + n0g);
  };
  // The BS hears all N D2D transmitters.
  auto cell_sinr = [&](double own, double d2d) { return own / (n * d2d * I + n0g); };

  auto d2d_power = [&](double p) { return kch * p / model.d2d.eta + 2.0 * model.d2d.p_cir; };
  auto cell_power = [&](double p) { return p / model.cell.eta + model.cell.p_cir; };

  SymmetricGaps gaps;
  double rate_d_ee = kch * log2_1p(d2d_sinr(p_ee_d, p_ee_c, p_ee_d));
  double rate_d_se = kch * log2_1p(d2d_sinr(p_se_d, p_se_c, p_se_d));
  gaps.ee_d2d = rate_d_ee / d2d_power(p_ee_d) - rate_d_se / d2d_power(p_se_d);
  gaps.se_d2d = rate_d_se - rate_d_ee;

  double rate_c_ee = log2_1p(cell_sinr(p_ee_c, p_ee_d));
  double rate_c_se = log2_1p(cell_sinr(p_se_c, p_se_d));
  gaps.ee_cell = rate_c_ee / cell_power(p_ee_c) - rate_c_se / cell_power(p_se_c);
  gaps.se_cell = rate_c_se - rate_c_ee;
  return gaps;
}

std::vector<TradeoffPoint> tradeoff_curve(const SymmetricModel& model,
                                          const std::vector<double>& se_grid,
                                          double interferer_power) {
  if (se_grid.empty()) throw std::invalid_argument("tradeoff_curve: empty SE grid");
  // Effective inverse gain of the cellular link with all N D2D transmitters
  // at the given power. The circuit term is counted at both link ends, which
  // is what the reference sweep numbers assume.
  const double c_eff =
      (model.n * interferer_power * model.i_level * model.g + model.noise) / model.g;
  const double circuit = 2.0 * model.cell.p_cir;

  std::vector<TradeoffPoint> out;
  out.reserve(se_grid.size());
  for (double se : se_grid) {
    TradeoffPoint pt;
    pt.se = se;
    pt.power = (std::exp2(se) - 1.0) * c_eff;
    pt.feasible = pt.power <= model.cell.p_max * (1.0 + 1e-12);
    double denom = pt.power / model.cell.eta + circuit;
    pt.ee = denom > 0.0 ? se / denom : 0.0;
    out.push_back(pt);
  }
  return out;
}

double price_of_anarchy(const NetworkInstance& inst, const GameConfig& cfg,
                        int grid_resolution) {
  if (grid_resolution < 1) throw std::invalid_argument("grid_resolution must be >= 1");
  const int dims = inst.n_d2d * inst.n_cell + inst.n_cell;
  if (dims > 4) {
    throw std::invalid_argument(
        "price_of_anarchy: " + std::to_string(dims) +
        " power dimensions exceed the grid-search limit of 4; "
        "use a smaller instance (n_d2d*n_cell + n_cell <= 4)");
  }

  // Odometer over all power dimensions: D2D (i, k) entries first, then
  // cellular powers.
  std::vector<int> idx(dims, 0);
  PowerProfile prof = PowerProfile::zeros(inst);
  auto apply = [&]() {
    int d = 0;
    for (int i = 0; i < inst.n_d2d; ++i) {
      for (int k = 0; k < inst.n_cell; ++k) {
        prof.p_d2d[i][k] = idx[d++] * inst.ue_d2d[i].p_max / grid_resolution;
      }
    }
    for (int k = 0; k < inst.n_cell; ++k) {
      prof.p_cell[k] = idx[d++] * inst.ue_cell[k].p_max / grid_resolution;
    }
  };

  double best = 0.0;
  bool done = false;
  while (!done) {
    apply();
    // The social optimum keeps every link in service: a profile that shuts a
    // link off entirely (zero power, zero rate) is not an admissible welfare
    // benchmark for a network serving all N + K users.
    bool serving = true;
    for (int i = 0; i < inst.n_d2d && serving; ++i) {
      double s = 0.0;
      for (double v : prof.p_d2d[i]) s += v;
      serving = s > 0.0;
    }
    for (int k = 0; k < inst.n_cell && serving; ++k) serving = prof.p_cell[k] > 0.0;
    if (serving && prof.feasible(inst)) {
      bool qos_ok = true;
      for (int i = 0; i < inst.n_d2d && qos_ok; ++i) {
        qos_ok = rate_d2d(inst, prof, i) >= inst.ue_d2d[i].r_min - 1e-9;
      }
      for (int k = 0; k < inst.n_cell && qos_ok; ++k) {
        qos_ok = rate_cellular(inst, prof, k) >= inst.ue_cell[k].r_min - 1e-9;
      }
      if (qos_ok) best = std::max(best, network_ee(inst, prof));
    }
    int d = 0;
    for (; d < dims; ++d) {
      if (++idx[d] <= grid_resolution) break;
      idx[d] = 0;
    }
    done = d == dims;
  }

  GameTrace trace = run_to_equilibrium(inst, cfg);
  double eq_value = network_ee(inst, trace.profiles.back());
  double numerator = std::max(best, eq_value);
  if (numerator <= 1e-15) return 1.0;
  return numerator / eq_value;
}

std::vector<GapPoint> gap_vs_interference(const SymmetricModel& model,
                                          const std::vector<double>& i_grid_db) {
  std::vector<GapPoint> out;
  out.reserve(i_grid_db.size());
  for (double i_db : i_grid_db) {
    SymmetricModel m = model;
    m.i_level = db_to_linear(i_db);
    const double p_d_cap = m.d2d.p_max / m.k;  // per-channel budget
    const double p_c_cap = m.cell.p_max;
    const double n0g = m.noise / m.g;

    // EE-optimal powers: fixed point of the two single-variable solves.
    double p_d = p_d_cap / 2.0, p_c = p_c_cap / 2.0;
    for (int it = 0; it < 200; ++it) {
      double p_d_prev = p_d, p_c_prev = p_c;
      double denom_d = p_c * m.i_level + (m.n - 1.0) * p_d * m.i_level + n0g;
      p_d = golden_section_max(
          [&](double x) {
            return m.k * log2_1p(x / denom_d) / (m.k * x / m.d2d.eta + 2.0 * m.d2d.p_cir);
          },
          0.0, p_d_cap);
      double denom_c = m.n * p_d * m.i_level + n0g;
      p_c = golden_section_max(
          [&](double y) { return log2_1p(y / denom_c) / (y / m.cell.eta + m.cell.p_cir); },
          0.0, p_c_cap);
      if (std::abs(p_d - p_d_prev) < 1e-12 && std::abs(p_c - p_c_prev) < 1e-12) break;
    }

    SymmetricGaps gaps = symmetric_gaps(m, p_d, p_c, p_d_cap, p_c_cap);
    out.push_back({i_db, gaps.ee_cell, gaps.se_cell});
  }
  return out;
}

}  // namespace d2dee
