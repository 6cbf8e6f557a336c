"""Budget-feasible online sensing auctions."""

from mcsauction._mcsauction import (
    coverage_value,
    covered_tasks,
    demo_scenario_names,
    generate_poi_grid,
    marginal_value,
    proportional_share_offline,
    run_demo,
    run_omg,
    run_omz,
    scenario_from_config,
    solve_optimal_delta,
)

__all__ = [
    "coverage_value",
    "covered_tasks",
    "demo_scenario_names",
    "generate_poi_grid",
    "marginal_value",
    "proportional_share_offline",
    "run_demo",
    "run_omg",
    "run_omz",
    "scenario_from_config",
    "solve_optimal_delta",
]
