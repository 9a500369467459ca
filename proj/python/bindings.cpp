#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "d2dee/analysis.hpp"
#include "d2dee/ee_solver.hpp"
#include "d2dee/game.hpp"
#include "d2dee/harness.hpp"
#include "d2dee/net_model.hpp"
#include "d2dee/rng.hpp"
#include "d2dee/se_solver.hpp"

namespace py = pybind11;
using namespace d2dee;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Noncooperative energy-efficiency game simulator for D2D underlay networks";

  // --- net-model -----------------------------------------------------------
  py::class_<UEParams>(m, "UEParams")
      .def(py::init<>())
      .def(py::init([](double p_max, double r_min, double p_cir, double eta) {
             return UEParams{p_max, r_min, p_cir, eta};
           }),
           py::arg("p_max") = 0.2, py::arg("r_min") = 0.0, py::arg("p_cir") = 0.01,
           py::arg("eta") = 0.35)
      .def_readwrite("p_max", &UEParams::p_max)
      .def_readwrite("r_min", &UEParams::r_min)
      .def_readwrite("p_cir", &UEParams::p_cir)
      .def_readwrite("eta", &UEParams::eta);

  py::class_<NetworkInstance>(m, "NetworkInstance")
      .def(py::init<>())
      .def_readwrite("n_d2d", &NetworkInstance::n_d2d)
      .def_readwrite("n_cell", &NetworkInstance::n_cell)
      .def_readwrite("g_d2d", &NetworkInstance::g_d2d)
      .def_readwrite("g_cell", &NetworkInstance::g_cell)
      .def_readwrite("g_c2d", &NetworkInstance::g_c2d)
      .def_readwrite("g_d2d_x", &NetworkInstance::g_d2d_x)
      .def_readwrite("g_d2b", &NetworkInstance::g_d2b)
      .def_readwrite("noise", &NetworkInstance::noise)
      .def_readwrite("ue_d2d", &NetworkInstance::ue_d2d)
      .def_readwrite("ue_cell", &NetworkInstance::ue_cell)
      .def("validate", &NetworkInstance::validate);

  py::class_<PowerProfile>(m, "PowerProfile")
      .def(py::init<>())
      .def_static("zeros", &PowerProfile::zeros)
      .def_readwrite("p_d2d", &PowerProfile::p_d2d)
      .def_readwrite("p_cell", &PowerProfile::p_cell)
      .def("feasible", &PowerProfile::feasible, py::arg("inst"), py::arg("tol") = 1e-12);

  m.def("sinr_d2d", &sinr_d2d);
  m.def("sinr_cellular", &sinr_cellular);
  m.def("rate_d2d", &rate_d2d);
  m.def("rate_cellular", &rate_cellular);
  m.def("ee_utility_d2d", &ee_utility_d2d);
  m.def("ee_utility_cellular", &ee_utility_cellular);
  m.def("se_utility_d2d", &se_utility_d2d);
  m.def("se_utility_cellular", &se_utility_cellular);
  m.def("network_ee", &network_ee);

  // --- solvers -------------------------------------------------------------
  py::enum_<LinkKind>(m, "LinkKind")
      .value("d2d", LinkKind::d2d)
      .value("cellular", LinkKind::cellular);

  py::class_<InterferenceView>(m, "InterferenceView")
      .def(py::init<>())
      .def(py::init([](std::vector<double> i_agg, double noise) {
             return InterferenceView{std::move(i_agg), noise};
           }),
           py::arg("i_agg"), py::arg("noise") = 1e-7)
      .def_readwrite("i_agg", &InterferenceView::i_agg)
      .def_readwrite("noise", &InterferenceView::noise);

  py::class_<DualConfig>(m, "DualConfig")
      .def(py::init<>())
      .def_readwrite("mu0_alpha", &DualConfig::mu0_alpha)
      .def_readwrite("mu0_beta", &DualConfig::mu0_beta)
      .def_readwrite("tau_max", &DualConfig::tau_max)
      .def_readwrite("eps_dual", &DualConfig::eps_dual);

  py::class_<DinkelbachConfig>(m, "DinkelbachConfig")
      .def(py::init<>())
      .def_readwrite("q_init", &DinkelbachConfig::q_init)
      .def_readwrite("l_max", &DinkelbachConfig::l_max)
      .def_readwrite("delta", &DinkelbachConfig::delta)
      .def_readwrite("inner", &DinkelbachConfig::inner);

  py::class_<SolverReport>(m, "SolverReport")
      .def_readonly("powers", &SolverReport::powers)
      .def_readonly("q_star", &SolverReport::q_star)
      .def_readonly("subtractive_residual", &SolverReport::subtractive_residual)
      .def_readonly("outer_iters", &SolverReport::outer_iters)
      .def_readonly("inner_iters", &SolverReport::inner_iters)
      .def_readonly("feasible", &SolverReport::feasible)
      .def_readonly("q_trace", &SolverReport::q_trace);

  // std::span parameters are bridged through std::vector copies.
  m.def(
      "dinkelbach_solve",
      [](const InterferenceView& view, const UEParams& params,
         const std::vector<double>& gains, const DinkelbachConfig& config, LinkKind kind) {
        return dinkelbach_solve(view, params, gains, config, kind);
      },
      py::arg("view"), py::arg("params"), py::arg("gains"),
      py::arg("config") = DinkelbachConfig{}, py::arg("kind") = LinkKind::d2d);
  m.def(
      "solve_se",
      [](const InterferenceView& view, const UEParams& params,
         const std::vector<double>& gains, const DualConfig& config, LinkKind kind) {
        return solve_se(view, params, gains, config, kind);
      },
      py::arg("view"), py::arg("params"), py::arg("gains"), py::arg("config") = DualConfig{},
      py::arg("kind") = LinkKind::d2d);
  m.def(
      "f_of_q",
      [](const InterferenceView& view, const UEParams& params,
         const std::vector<double>& gains, double q, LinkKind kind, const DualConfig& config) {
        return f_of_q(view, params, gains, q, kind, config);
      },
      py::arg("view"), py::arg("params"), py::arg("gains"), py::arg("q"),
      py::arg("kind") = LinkKind::d2d, py::arg("config") = DualConfig{});

  // --- game ----------------------------------------------------------------
  py::enum_<Policy>(m, "Policy")
      .value("energy_efficient", Policy::energy_efficient)
      .value("spectral_efficient", Policy::spectral_efficient)
      .value("random", Policy::random);

  py::class_<GameConfig>(m, "GameConfig")
      .def(py::init<>())
      .def_readwrite("policy", &GameConfig::policy)
      .def_readwrite("max_rounds", &GameConfig::max_rounds)
      .def_readwrite("eps_eq", &GameConfig::eps_eq)
      .def_readwrite("rng_seed", &GameConfig::rng_seed)
      .def_readwrite("solver", &GameConfig::solver);

  py::class_<GameTrace>(m, "GameTrace")
      .def_readonly("profiles", &GameTrace::profiles)
      .def_readonly("ee_d2d", &GameTrace::ee_d2d)
      .def_readonly("se_d2d", &GameTrace::se_d2d)
      .def_readonly("ee_cell", &GameTrace::ee_cell)
      .def_readonly("se_cell", &GameTrace::se_cell)
      .def_readonly("rounds_to_converge", &GameTrace::rounds_to_converge)
      .def_readonly("converged", &GameTrace::converged);

  m.def("run_to_equilibrium", &run_to_equilibrium);
  m.def("verify_equilibrium", &verify_equilibrium);

  // --- analysis ------------------------------------------------------------
  py::class_<SymmetricModel>(m, "SymmetricModel")
      .def(py::init<>())
      .def_readwrite("g", &SymmetricModel::g)
      .def_readwrite("i_level", &SymmetricModel::i_level)
      .def_readwrite("n", &SymmetricModel::n)
      .def_readwrite("k", &SymmetricModel::k)
      .def_readwrite("d2d", &SymmetricModel::d2d)
      .def_readwrite("cell", &SymmetricModel::cell)
      .def_readwrite("noise", &SymmetricModel::noise);

  py::class_<TradeoffPoint>(m, "TradeoffPoint")
      .def_readonly("se", &TradeoffPoint::se)
      .def_readonly("ee", &TradeoffPoint::ee)
      .def_readonly("power", &TradeoffPoint::power)
      .def_readonly("feasible", &TradeoffPoint::feasible);

  py::class_<GapPoint>(m, "GapPoint")
      .def_readonly("i_db", &GapPoint::i_db)
      .def_readonly("ee_gap_cell", &GapPoint::ee_gap_cell)
      .def_readonly("se_gap_cell", &GapPoint::se_gap_cell);

  m.def("db_to_linear", &db_to_linear);
  m.def("linear_to_db", &linear_to_db);
  m.def("tradeoff_curve", &tradeoff_curve);
  m.def("price_of_anarchy", &price_of_anarchy, py::arg("inst"), py::arg("config"),
        py::arg("grid_resolution") = 50);
  m.def("gap_vs_interference", &gap_vs_interference);

  // --- harness -------------------------------------------------------------
  py::class_<ScenarioConfig>(m, "ScenarioConfig")
      .def(py::init<>())
      .def_readwrite("cell_radius", &ScenarioConfig::cell_radius)
      .def_readwrite("d2d_max_dist", &ScenarioConfig::d2d_max_dist)
      .def_readwrite("n_d2d", &ScenarioConfig::n_d2d)
      .def_readwrite("n_cell", &ScenarioConfig::n_cell)
      .def_readwrite("p_max_dbm", &ScenarioConfig::p_max_dbm)
      .def_readwrite("p_cir_dbm", &ScenarioConfig::p_cir_dbm)
      .def_readwrite("noise_w", &ScenarioConfig::noise_w)
      .def_readwrite("eta", &ScenarioConfig::eta)
      .def_readwrite("r_min_c", &ScenarioConfig::r_min_c)
      .def_readwrite("r_min_d", &ScenarioConfig::r_min_d)
      .def_readwrite("trials", &ScenarioConfig::trials)
      .def_readwrite("seed", &ScenarioConfig::seed)
      .def_readwrite("max_rounds", &ScenarioConfig::max_rounds);

  py::class_<CampaignRow>(m, "CampaignRow")
      .def_readonly("policy", &CampaignRow::policy)
      .def_readonly("round", &CampaignRow::round)
      .def_readonly("metric", &CampaignRow::metric)
      .def_readonly("mean", &CampaignRow::mean)
      .def_readonly("normalized_mean", &CampaignRow::normalized_mean)
      .def_readonly("trials", &CampaignRow::trials);

  py::class_<CampaignResult>(m, "CampaignResult")
      .def_readonly("table", &CampaignResult::table)
      .def_readonly("convergence_rounds", &CampaignResult::convergence_rounds)
      .def_readonly("final_d2d_ee", &CampaignResult::final_d2d_ee)
      .def_readonly("final_cell_ee", &CampaignResult::final_cell_ee);

  m.def("dbm_to_watts", &dbm_to_watts);
  m.def("watts_to_dbm", &watts_to_dbm);
  m.def(
      "generate_topology",
      [](const ScenarioConfig& cfg, std::uint64_t seed, std::uint64_t index) {
        Rng rng = Rng::substream(seed, index);
        return generate_topology(cfg, rng);
      },
      py::arg("config"), py::arg("seed"), py::arg("index") = 0);
  m.def("run_campaign", &run_campaign, py::arg("config"), py::arg("policies"),
        py::arg("n_threads") = 0, py::call_guard<py::gil_scoped_release>());
}
