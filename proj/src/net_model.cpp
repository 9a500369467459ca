#include "d2dee/net_model.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace d2dee {

namespace {

// Natural log divided by ln 2; no fast-math shortcuts so results are
// bit-stable across builds.
double log2_1p(double x) { return std::log1p(x) / std::numbers::ln2; }

void check_index(int idx, int bound, const char* what) {
  if (idx < 0 || idx >= bound) {
    throw std::out_of_range(std::string(what) + " index out of range");
  }
}

}  // namespace

void NetworkInstance::validate() const {
  auto fail = [](const std::string& msg) { throw std::invalid_argument("NetworkInstance: " + msg); };
  if (n_d2d < 0 || n_cell <= 0) fail("need n_cell > 0 and n_d2d >= 0");
  if (noise <= 0.0) fail("noise must be > 0");
  auto check_2d = [&](const std::vector<std::vector<double>>& m, int rows, int cols, const char* name) {
    if (static_cast<int>(m.size()) != rows) fail(std::string(name) + ": wrong row count");
    for (const auto& row : m) {
      if (static_cast<int>(row.size()) != cols) fail(std::string(name) + ": wrong column count");
      for (double v : row)
        if (!(v >= 0.0)) fail(std::string(name) + ": negative gain");
    }
  };
  check_2d(g_d2d, n_d2d, n_cell, "g_d2d");
  check_2d(g_c2d, n_cell, n_d2d, "g_c2d");
  check_2d(g_d2b, n_d2d, n_cell, "g_d2b");
  if (static_cast<int>(g_cell.size()) != n_cell) fail("g_cell: wrong size");
  for (double v : g_cell)
    if (!(v > 0.0)) fail("g_cell: direct gains must be > 0");
  for (const auto& row : g_d2d)
    for (double v : row)
      if (!(v > 0.0)) fail("g_d2d: direct gains must be > 0");
  if (static_cast<int>(g_d2d_x.size()) != n_d2d) fail("g_d2d_x: wrong size");
  for (const auto& m : g_d2d_x) check_2d(m, n_d2d, n_cell, "g_d2d_x");
  if (static_cast<int>(ue_d2d.size()) != n_d2d || static_cast<int>(ue_cell.size()) != n_cell)
    fail("UE parameter arrays inconsistent with counts");
  auto check_ue = [&](const UEParams& u) {
    if (!(u.eta > 0.0 && u.eta < 1.0)) fail("eta must be in (0, 1)");
    if (!(u.p_max > 0.0)) fail("p_max must be > 0");
    if (u.r_min < 0.0) fail("r_min must be >= 0");
    if (u.p_cir < 0.0) fail("p_cir must be >= 0");
  };
  for (const auto& u : ue_d2d) check_ue(u);
  for (const auto& u : ue_cell) check_ue(u);
}

PowerProfile PowerProfile::zeros(const NetworkInstance& inst) {
  PowerProfile p;
  p.p_d2d.assign(inst.n_d2d, std::vector<double>(inst.n_cell, 0.0));
  p.p_cell.assign(inst.n_cell, 0.0);
  return p;
}

bool PowerProfile::feasible(const NetworkInstance& inst, double tol) const {
  for (int i = 0; i < inst.n_d2d; ++i) {
    double sum = 0.0;
    for (double v : p_d2d[i]) {
      if (v < 0.0) return false;
      sum += v;
    }
    if (sum > inst.ue_d2d[i].p_max + tol) return false;
  }
  for (int k = 0; k < inst.n_cell; ++k) {
    if (p_cell[k] < 0.0 || p_cell[k] > inst.ue_cell[k].p_max + tol) return false;
  }
  return true;
}

double sinr_d2d(const NetworkInstance& inst, const PowerProfile& prof, int i, int k) {
  check_index(i, inst.n_d2d, "d2d pair");
  check_index(k, inst.n_cell, "channel");
  double interference = prof.p_cell[k] * inst.g_c2d[k][i];
  for (int j = 0; j < inst.n_d2d; ++j) {
    if (j == i) continue;
    interference += prof.p_d2d[j][k] * inst.g_d2d_x[j][i][k];
  }
  return prof.p_d2d[i][k] * inst.g_d2d[i][k] / (interference + inst.noise);
}

double sinr_cellular(const NetworkInstance& inst, const PowerProfile& prof, int k) {
  check_index(k, inst.n_cell, "channel");
  double interference = 0.0;
  for (int i = 0; i < inst.n_d2d; ++i) {
    interference += prof.p_d2d[i][k] * inst.g_d2b[i][k];
  }
  return prof.p_cell[k] * inst.g_cell[k] / (interference + inst.noise);
}

double rate_d2d(const NetworkInstance& inst, const PowerProfile& prof, int i) {
  check_index(i, inst.n_d2d, "d2d pair");
  double r = 0.0;
  for (int k = 0; k < inst.n_cell; ++k) {
    r += log2_1p(sinr_d2d(inst, prof, i, k));
  }
  return r;
}

double rate_cellular(const NetworkInstance& inst, const PowerProfile& prof, int k) {
  return log2_1p(sinr_cellular(inst, prof, k));
}

double power_total_d2d(const PowerProfile& prof, int i, const UEParams& params) {
  double sum = std::accumulate(prof.p_d2d[i].begin(), prof.p_d2d[i].end(), 0.0);
  return sum / params.eta + 2.0 * params.p_cir;
}

double power_total_cellular(const PowerProfile& prof, int k, const UEParams& params) {
  return prof.p_cell[k] / params.eta + params.p_cir;
}

namespace {

double ee_ratio(double rate, double power) {
  if (power <= 0.0) throw std::domain_error("EE undefined: total power is zero");
  return rate / power;
}

}  // namespace

double ee_utility_d2d(const NetworkInstance& inst, const PowerProfile& prof, int i) {
  return ee_ratio(rate_d2d(inst, prof, i), power_total_d2d(prof, i, inst.ue_d2d[i]));
}

double ee_utility_cellular(const NetworkInstance& inst, const PowerProfile& prof, int k) {
  return ee_ratio(rate_cellular(inst, prof, k), power_total_cellular(prof, k, inst.ue_cell[k]));
}

double se_utility_d2d(const NetworkInstance& inst, const PowerProfile& prof, int i) {
  return rate_d2d(inst, prof, i);
}

double se_utility_cellular(const NetworkInstance& inst, const PowerProfile& prof, int k) {
  return rate_cellular(inst, prof, k);
}

double network_ee(const NetworkInstance& inst, const PowerProfile& prof) {
  double total = 0.0;
  for (int i = 0; i < inst.n_d2d; ++i) total += ee_utility_d2d(inst, prof, i);
  for (int k = 0; k < inst.n_cell; ++k) total += ee_utility_cellular(inst, prof, k);
  return total;
}

double qos_from_delay(const QosSpec& spec) {
  if (spec.delay_tol <= 0.0) throw std::invalid_argument("delay tolerance must be > 0");
  return spec.bits_total / spec.delay_tol;
}

double qos_from_interference_cap(const QosSpec& spec, double p_c, double g_c, double n0) {
  if (spec.i_max < 0.0) throw std::invalid_argument("interference cap must be >= 0");
  return log2_1p(p_c * g_c / (spec.i_max + n0));
}

}  // namespace d2dee
