#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include "d2dee/ee_solver.hpp"
#include "test_util.hpp"

using namespace d2dee;
using doctest::Approx;

namespace {

constexpr double kLog2e = std::numbers::log2e;

// Analytic single-channel instance: g = 1, N_0 = 0.1, eta = 1, p_cir = 0.1.
// The EE ratio is stationary at p = (e - 1) / 10 with value log2(e) / (p + 0.1).
const double kPStar = (std::exp(1.0) - 1.0) / 10.0;
const double kQStar = kLog2e / (kPStar + 0.1);

const UEParams kFlat{1.0, 0.0, 0.1, 1.0};
const InterferenceView kCleanView{{0.0}, 0.1};

double sum(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0);
}

double rate_of(const InterferenceView& view, const std::vector<double>& p,
               const std::vector<double>& g) {
  double r = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    r += std::log2(1.0 + p[k] * g[k] / (view.i_agg[k] + view.noise));
  }
  return r;
}

}  // namespace

TEST_CASE("transformed objective") {
  InterferenceView view{{0.0, 0.02}, 1e-7};
  std::vector<double> gains{1.0, 0.5};
  std::vector<double> powers{0.05, 0.1};
  UEParams params{0.2, 0.0, 0.01, 0.35};

  // q = 0: the subtractive term vanishes, leaving the rate.
  CHECK(transformed_objective(view, powers, 0.0, params, gains, LinkKind::d2d) ==
        Approx(rate_of(view, powers, gains)).epsilon(1e-12));

  // Zero powers, q = 1, D2D circuit term 2 * 0.01.
  std::vector<double> zeros{0.0, 0.0};
  CHECK(transformed_objective(view, zeros, 1.0, params, gains, LinkKind::d2d) ==
        Approx(-0.02).epsilon(1e-15));

  // At the analytic optimum the residual is ~0 (to the precision of the
  // rounded q value 5.3074).
  std::vector<double> pstar{kPStar};
  std::vector<double> g1{1.0};
  double resid = transformed_objective(kCleanView, pstar, 5.3074, kFlat, g1, LinkKind::cellular);
  CHECK(std::abs(resid) < 1e-4);
  // And exactly zero at the unrounded q*.
  CHECK(std::abs(transformed_objective(kCleanView, pstar, kQStar, kFlat, g1,
                                       LinkKind::cellular)) < 1e-12);
}

TEST_CASE("waterfill ee d2d") {
  // Floor above the water level projects to zero.
  InterferenceView high{{100.0}, 0.1};
  auto p = waterfill_ee_d2d(high, 5.0, 0.0, 0.0, kFlat, std::vector<double>{1.0});
  CHECK(p[0] == 0.0);

  // Two identical channels get equal powers.
  InterferenceView two{{0.01, 0.01}, 0.1};
  auto p2 = waterfill_ee_d2d(two, 2.0, 0.3, 0.1, kFlat, std::vector<double>{0.7, 0.7});
  CHECK(p2[0] == Approx(p2[1]).epsilon(1e-15));
  CHECK(p2[0] > 0.0);

  // Closed form at the analytic optimum.
  auto ps = waterfill_ee_d2d(kCleanView, kQStar, 0.0, 0.0, kFlat, std::vector<double>{1.0});
  CHECK(ps[0] == Approx(kPStar).epsilon(1e-12));
  auto ps_rounded = waterfill_ee_d2d(kCleanView, 5.3074, 0.0, 0.0, kFlat, std::vector<double>{1.0});
  CHECK(ps_rounded[0] == Approx(kPStar).epsilon(1e-4));

  // Higher interference-to-gain ratio gives weakly smaller power.
  InterferenceView worse{{0.05}, 0.1};
  auto pw = waterfill_ee_d2d(worse, kQStar, 0.0, 0.0, kFlat, std::vector<double>{1.0});
  CHECK(pw[0] < ps[0]);

  CHECK_THROWS_AS(waterfill_ee_d2d(kCleanView, 0.0, 0.0, 0.0, kFlat, std::vector<double>{1.0}),
                  std::domain_error);
}

TEST_CASE("waterfill ee cellular") {
  UEParams cell{0.2, 0.0, 0.01, 0.35};

  InterferenceView high{{10.0}, 1e-7};
  CHECK(waterfill_ee_cellular(high, 5.0, 0.0, 0.0, cell, 1.0) == 0.0);

  // delta = theta = 0, no interference: p = eta * log2e / q - N_0 / g_c.
  InterferenceView clean{{0.0}, 1e-7};
  double expected = 0.35 * kLog2e / 5.0 - 1e-7;
  CHECK(waterfill_ee_cellular(clean, 5.0, 0.0, 0.0, cell, 1.0) ==
        Approx(expected).epsilon(1e-12));
  CHECK(waterfill_ee_cellular(clean, 5.0, 0.0, 0.0, cell, 1.0) ==
        Approx(0.100988).epsilon(1e-5));
}

TEST_CASE("dual ascent") {
  std::vector<double> g1{1.0};

  SUBCASE("inactive constraints reduce to the unconstrained water level") {
    DualResult res = dual_ascent(kCleanView, kQStar, kFlat, g1, DualConfig{}, LinkKind::cellular);
    CHECK(res.feasible);
    CHECK(res.alpha == Approx(0.0).scale(1.0).epsilon(1e-9));
    CHECK(res.beta == Approx(0.0).scale(1.0).epsilon(1e-9));
    CHECK(res.powers[0] == Approx(kPStar).epsilon(1e-9));
    CHECK(res.iters >= 1);
  }

  SUBCASE("analytic instance at the rounded q") {
    DualResult res = dual_ascent(kCleanView, 5.3074, kFlat, g1, DualConfig{}, LinkKind::cellular);
    CHECK(res.powers[0] == Approx(kPStar).epsilon(1e-4));
    // Grid oracle over p in [0, 1], step 1e-4: the transformed objective at
    // the returned power beats every grid point (up to grid curvature).
    double best = -1e300;
    for (int j = 0; j <= 10000; ++j) {
      double p = j * 1e-4;
      best = std::max(best, std::log2(1.0 + p / 0.1) - 5.3074 * (p + 0.1));
    }
    double mine = std::log2(1.0 + res.powers[0] / 0.1) - 5.3074 * (res.powers[0] + 0.1);
    CHECK(mine >= best - 1e-8);
  }

  SUBCASE("unachievable QoS is flagged infeasible") {
    UEParams hard = kFlat;
    hard.r_min = 10.0;  // max rate at p_max = 1 is log2(11) ~ 3.46
    DualResult res = dual_ascent(kCleanView, 1.0, hard, g1, DualConfig{}, LinkKind::cellular);
    CHECK_FALSE(res.feasible);
    CHECK(res.alpha > 1.0);
    CHECK(res.powers[0] == Approx(1.0).epsilon(1e-9));  // max-power fallback
  }

  SUBCASE("constraint and slackness residuals on random instances") {
    Rng rng(23);
    for (int rep = 0; rep < 60; ++rep) {
      int k = 1 + static_cast<int>(rng.uniform() * 2.0);
      InterferenceView view;
      view.noise = 1e-7;
      std::vector<double> gains(k);
      for (int c = 0; c < k; ++c) {
        view.i_agg.push_back(std::pow(10.0, rng.uniform(-8.0, -3.0)));
        gains[c] = std::pow(10.0, rng.uniform(-4.0, 0.0));
      }
      UEParams params{0.2, rng.uniform(0.0, 1.0), 0.01, 0.35};
      double q = rng.uniform(0.0, 20.0);
      DualResult res = dual_ascent(view, q, params, gains, DualConfig{}, LinkKind::d2d);
      if (!res.feasible) continue;
      double s = sum(res.powers);
      double r = rate_of(view, res.powers, gains);
      CHECK(s <= params.p_max + 1e-6 * params.p_max);       // C2
      CHECK(r >= params.r_min - 1e-6);                       // C1
      CHECK(std::abs(res.alpha * (r - params.r_min)) < 1e-4);
      CHECK(std::abs(res.beta * (s - params.p_max)) < 1e-4);
    }
  }

  SUBCASE("water-filling KKT: active channels share one level") {
    Rng rng(29);
    for (int rep = 0; rep < 60; ++rep) {
      InterferenceView view;
      view.noise = 1e-7;
      std::vector<double> gains(2);
      for (int c = 0; c < 2; ++c) {
        view.i_agg.push_back(std::pow(10.0, rng.uniform(-8.0, -4.0)));
        gains[c] = std::pow(10.0, rng.uniform(-3.0, 0.0));
      }
      UEParams params{0.2, 0.0, 0.01, 0.35};
      double q = rng.uniform(0.5, 30.0);
      DualResult res = dual_ascent(view, q, params, gains, DualConfig{}, LinkKind::d2d);
      REQUIRE(res.feasible);
      std::vector<double> floors(2);
      for (int c = 0; c < 2; ++c) floors[c] = (view.i_agg[c] + view.noise) / gains[c];
      double level = -1.0;
      for (int c = 0; c < 2; ++c) {
        if (res.powers[c] > 0.0) level = std::max(level, res.powers[c] + floors[c]);
      }
      for (int c = 0; c < 2; ++c) {
        if (res.powers[c] > 0.0) {
          CHECK(res.powers[c] + floors[c] == Approx(level).epsilon(1e-9));
        } else if (level > 0.0) {
          CHECK(floors[c] >= level - 1e-9);
        }
      }
    }
  }
}

TEST_CASE("dinkelbach solve") {
  std::vector<double> g1{1.0};
  DinkelbachConfig cfg;

  SUBCASE("unusable channels give q* = 0") {
    InterferenceView view{{0.0}, 0.1};
    UEParams params{1.0, 0.0, 0.1, 1.0};
    SolverReport rep = dinkelbach_solve(view, params, std::vector<double>{0.0}, cfg,
                                        LinkKind::cellular);
    CHECK(rep.q_star == 0.0);
    CHECK(rep.powers[0] == 0.0);
    CHECK(rep.feasible);
  }

  SUBCASE("analytic optimum") {
    SolverReport rep = dinkelbach_solve(kCleanView, kFlat, g1, cfg, LinkKind::cellular);
    CHECK(rep.feasible);
    CHECK(rep.q_star == Approx(kQStar).epsilon(1e-3));
    CHECK(rep.q_star == Approx(5.3074).epsilon(1e-3));
    CHECK(rep.powers[0] == Approx(kPStar).epsilon(1e-3));
    CHECK(rep.subtractive_residual <= cfg.delta);
    CHECK(rep.outer_iters <= cfg.l_max);
    for (std::size_t i = 1; i < rep.q_trace.size(); ++i) {
      CHECK(rep.q_trace[i] > rep.q_trace[i - 1]);
    }
  }

  SUBCASE("power budget binds below the stationary point") {
    // Same link as a D2D transmitter (circuit term 2 * 0.1) with p_max = 0.1:
    // the stationary point moves above the budget, so the boundary binds.
    UEParams tight = kFlat;
    tight.p_max = 0.1;
    SolverReport rep = dinkelbach_solve(kCleanView, tight, g1, cfg, LinkKind::d2d);
    CHECK(rep.powers[0] == Approx(0.1).epsilon(1e-9));
    CHECK(rep.q_star == Approx(std::log2(2.0) / 0.3).epsilon(1e-6));
    CHECK(rep.q_star == Approx(3.3333).epsilon(1e-4));
  }

  SUBCASE("matches the grid oracle on random instances") {
    Rng rng(31);
    UEParams params{0.2, 0.0, 0.01, 0.35};
    for (int rep_i = 0; rep_i < 25; ++rep_i) {
      int k = 1 + (rep_i % 2);
      InterferenceView view;
      view.noise = 1e-7;
      std::vector<double> gains(k);
      for (int c = 0; c < k; ++c) {
        view.i_agg.push_back(std::pow(10.0, rng.uniform(-8.0, -4.0)));
        gains[c] = std::pow(10.0, rng.uniform(-3.0, 0.0));
      }
      SolverReport rep = dinkelbach_solve(view, params, gains, cfg, LinkKind::d2d);
      REQUIRE(rep.feasible);
      testutil::GridBest oracle = testutil::grid_max_ee(view.i_agg, view.noise, gains, params,
                                                        2.0 * params.p_cir, 1e-3 * params.p_max);
      CHECK(rep.q_star == Approx(oracle.value).epsilon(1e-3));
      for (std::size_t i = 1; i < rep.q_trace.size(); ++i) {
        CHECK(rep.q_trace[i] > rep.q_trace[i - 1]);
      }
    }
  }

  SUBCASE("infeasible QoS propagates") {
    UEParams hard = kFlat;
    hard.r_min = 10.0;
    SolverReport rep = dinkelbach_solve(kCleanView, hard, g1, cfg, LinkKind::cellular);
    CHECK_FALSE(rep.feasible);
  }
}

TEST_CASE("F(q) shape and zero") {
  std::vector<double> g1{1.0};

  // q = 0 gives the max achievable rate, which is nonnegative.
  double f0 = f_of_q(kCleanView, kFlat, g1, 0.0, LinkKind::cellular);
  CHECK(f0 >= 0.0);
  CHECK(f0 == Approx(std::log2(11.0)).epsilon(1e-9));  // rate at p_max = 1

  // Zero at the optimal ratio, within the Dinkelbach tolerance.
  CHECK(std::abs(f_of_q(kCleanView, kFlat, g1, kQStar, LinkKind::cellular)) < 1e-9);

  // Strictly decreasing in q.
  double prev = f0;
  for (double q : {1.0, 2.0, 4.0, kQStar, 8.0, 16.0}) {
    double cur = f_of_q(kCleanView, kFlat, g1, q, LinkKind::cellular);
    CHECK(cur < prev);
    prev = cur;
  }

  // F(q) >= 0 whenever q = r(p)/p_total(p) for some feasible p, since the
  // inner max over powers can always pick that p.
  Rng rng(37);
  for (int rep = 0; rep < 50; ++rep) {
    double p = rng.uniform(1e-3, 1.0);
    double ratio = std::log2(1.0 + p / 0.1) / (p + 0.1);
    CHECK(f_of_q(kCleanView, kFlat, g1, ratio, LinkKind::cellular) >= -1e-9);
  }

  // Bisection on F reproduces the Dinkelbach q*.
  DinkelbachConfig cfg;
  cfg.delta = 1e-9;
  cfg.l_max = 50;
  Rng rng2(41);
  UEParams params{0.2, 0.0, 0.01, 0.35};
  for (int rep = 0; rep < 10; ++rep) {
    InterferenceView view;
    view.noise = 1e-7;
    std::vector<double> gains(2);
    for (int c = 0; c < 2; ++c) {
      view.i_agg.push_back(std::pow(10.0, rng2.uniform(-8.0, -4.0)));
      gains[c] = std::pow(10.0, rng2.uniform(-3.0, 0.0));
    }
    SolverReport rep_d = dinkelbach_solve(view, params, gains, cfg, LinkKind::d2d);
    double lo = 0.0, hi = f_of_q(view, params, gains, 0.0, LinkKind::d2d) / (2.0 * params.p_cir);
    for (int it = 0; it < 100; ++it) {
      double mid = 0.5 * (lo + hi);
      (f_of_q(view, params, gains, mid, LinkKind::d2d) > 0.0 ? lo : hi) = mid;
    }
    CHECK(0.5 * (lo + hi) == Approx(rep_d.q_star).epsilon(1e-4));
  }
}

TEST_CASE("property: transformed objective is concave along segments") {
  Rng rng(43);
  UEParams params{0.2, 0.0, 0.01, 0.35};
  for (int rep = 0; rep < 100; ++rep) {
    InterferenceView view;
    view.noise = 1e-7;
    std::vector<double> gains(2);
    for (int c = 0; c < 2; ++c) {
      view.i_agg.push_back(std::pow(10.0, rng.uniform(-8.0, -4.0)));
      gains[c] = std::pow(10.0, rng.uniform(-3.0, 0.0));
    }
    std::vector<double> a{rng.uniform(0.0, 0.1), rng.uniform(0.0, 0.1)};
    std::vector<double> b{rng.uniform(0.0, 0.1), rng.uniform(0.0, 0.1)};
    double t = rng.uniform();
    std::vector<double> mid{t * a[0] + (1 - t) * b[0], t * a[1] + (1 - t) * b[1]};
    double q = rng.uniform(0.0, 10.0);
    double fa = transformed_objective(view, a, q, params, gains, LinkKind::d2d);
    double fb = transformed_objective(view, b, q, params, gains, LinkKind::d2d);
    double fm = transformed_objective(view, mid, q, params, gains, LinkKind::d2d);
    CHECK(fm >= t * fa + (1 - t) * fb - 1e-9);
  }
}

TEST_CASE("circuit power per link class") {
  UEParams params{0.2, 0.0, 0.01, 0.35};
  CHECK(circuit_power(params, LinkKind::d2d) == Approx(0.02).epsilon(1e-15));
  CHECK(circuit_power(params, LinkKind::cellular) == Approx(0.01).epsilon(1e-15));
}
