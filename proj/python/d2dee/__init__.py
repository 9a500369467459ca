"""Simulator for the noncooperative energy-efficiency power-control game in
D2D underlay cellular networks.

The heavy lifting lives in the compiled extension ``d2dee._core``; this
package re-exports its public names.
"""

from ._core import (  # noqa: F401
    CampaignResult,
    CampaignRow,
    DinkelbachConfig,
    DualConfig,
    GameConfig,
    GameTrace,
    GapPoint,
    InterferenceView,
    LinkKind,
    NetworkInstance,
    Policy,
    PowerProfile,
    ScenarioConfig,
    SolverReport,
    SymmetricModel,
    TradeoffPoint,
    UEParams,
    db_to_linear,
    dbm_to_watts,
    dinkelbach_solve,
    ee_utility_cellular,
    ee_utility_d2d,
    f_of_q,
    gap_vs_interference,
    generate_topology,
    linear_to_db,
    network_ee,
    price_of_anarchy,
    rate_cellular,
    rate_d2d,
    run_campaign,
    run_to_equilibrium,
    se_utility_cellular,
    se_utility_d2d,
    sinr_cellular,
    sinr_d2d,
    solve_se,
    tradeoff_curve,
    verify_equilibrium,
    watts_to_dbm,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
