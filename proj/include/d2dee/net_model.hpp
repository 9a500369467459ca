#pragma once

#include <string>
#include <vector>

namespace d2dee {

// Per-link limits and costs. All quantities are linear units (watts,
// bits/s/Hz); dBm/dB conversions live at the CLI boundary only.
struct UEParams {
  double p_max = 0.2;   // maximum transmit power [W]
  double r_min = 0.0;   // minimum rate QoS [bits/s/Hz]
  double p_cir = 0.01;  // per-device circuit power [W]
  double eta = 0.35;    // PA efficiency, in (0, 1)
};

// One static channel realization: all gains, UE parameters, and noise power.
// Gains are stored dense; the diagonal of g_d2d_x is ignored.
struct NetworkInstance {
  int n_d2d = 0;   // N, number of D2D pairs
  int n_cell = 0;  // K, number of cellular UEs = number of channels

  std::vector<std::vector<double>> g_d2d;   // [i][k] direct gain of pair i on channel k
  std::vector<double> g_cell;               // [k] gain of cellular UE k to BS
  std::vector<std::vector<double>> g_c2d;   // [k][i] cellular UE k -> D2D receiver i
  std::vector<std::vector<std::vector<double>>> g_d2d_x;  // [j][i][k] D2D tx j -> rx i
  std::vector<std::vector<double>> g_d2b;   // [i][k] D2D tx i -> BS

  double noise = 1e-7;  // N_0 [W]

  std::vector<UEParams> ue_d2d;
  std::vector<UEParams> ue_cell;

  // Throws std::invalid_argument on inconsistent dimensions or invalid values.
  void validate() const;
};

// Full strategy state: per-pair per-channel D2D powers and cellular powers.
struct PowerProfile {
  std::vector<std::vector<double>> p_d2d;  // [i][k]
  std::vector<double> p_cell;              // [k]

  static PowerProfile zeros(const NetworkInstance& inst);

  // C2 and C4: per-pair sum power and cellular power within limits,
  // all entries nonnegative.
  bool feasible(const NetworkInstance& inst, double tol = 1e-12) const;
};

enum class QosKind { min_rate, delay, interference_cap };

struct QosSpec {
  QosKind kind = QosKind::min_rate;
  double r_min = 0.0;       // min-rate [bits/s/Hz]
  double bits_total = 0.0;  // delay: B [bits]
  double delay_tol = 0.0;   // delay: T [s]
  double i_max = 0.0;       // interference-cap: I_max [W]
};

double sinr_d2d(const NetworkInstance& inst, const PowerProfile& prof, int i, int k);
double sinr_cellular(const NetworkInstance& inst, const PowerProfile& prof, int k);

double rate_d2d(const NetworkInstance& inst, const PowerProfile& prof, int i);
double rate_cellular(const NetworkInstance& inst, const PowerProfile& prof, int k);

double power_total_d2d(const PowerProfile& prof, int i, const UEParams& params);
double power_total_cellular(const PowerProfile& prof, int k, const UEParams& params);

// rate / total power. Throws std::domain_error when the total power is zero.
double ee_utility_d2d(const NetworkInstance& inst, const PowerProfile& prof, int i);
double ee_utility_cellular(const NetworkInstance& inst, const PowerProfile& prof, int k);

// SE utilities alias the rates; kept for game-engine dispatch symmetry.
double se_utility_d2d(const NetworkInstance& inst, const PowerProfile& prof, int i);
double se_utility_cellular(const NetworkInstance& inst, const PowerProfile& prof, int k);

// Sum of per-link EE ratios (not the ratio of sums).
double network_ee(const NetworkInstance& inst, const PowerProfile& prof);

// Delay QoS (B bits within T seconds) expressed as a min rate B/T.
double qos_from_delay(const QosSpec& spec);

// Interference-cap QoS expressed as a min rate for the cellular link.
double qos_from_interference_cap(const QosSpec& spec, double p_c, double g_c, double n0);

}  // namespace d2dee
