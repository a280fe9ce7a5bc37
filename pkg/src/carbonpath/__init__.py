"""Least-cost CO2 abatement pathways under a cumulative-emissions budget.

The package solves the two-point boundary-value problem for cost-minimizing
abatement trajectories (with optional endogenous learning and climate-damage
terms), provides the matching closed-form results for the no-learning,
no-damage case, and ships a scenario runner/CLI that writes CSV datasets.
"""

from .analytic import (
    AnalyticScenario,
    OvershootResult,
    abatement_for_warming_goal,
    delay_cost_growth,
    delay_cost_growth_constant,
    initial_tax,
    initial_tax_delay_growth,
    initial_tax_from_goal,
    max_abatement_without_overshoot,
    no_overshoot_fraction,
    overshoot_threshold,
    overshoot_threshold_constant,
    sigma_end,
    sigma_start,
    total_cost,
)
from .costs import (
    AbatementCostCurve,
    DamageModel,
    LearningModel,
    average_cost,
    calibrate_damage,
    damage_fraction,
    damage_fraction_dM,
    learning_terms,
    marginal_cost,
    warming,
)
from .economy import (
    EconomyParams,
    GrowthSchedule,
    bau_cumulative,
    bau_emission_rate,
    gdp,
    integrated_rate,
    rate,
)
from .errors import (
    CalibrationError,
    CarbonPathError,
    ConfigError,
    InfeasibleBracketError,
    ScenarioRunError,
    SolverError,
    TrajectoryError,
)
from .solver import (
    CostBreakdown,
    Pathway,
    PerturbationReport,
    ScenarioModels,
    SolverConfig,
    carbon_tax_path,
    discounted_cost,
    el_acceleration,
    el_residual,
    integrate_trajectory,
    perturbation_check,
    solve_bvp,
    zero_pathway,
)
from .units import DEFAULT_TCRE

__version__ = "0.1.0"

__all__ = [
    "AbatementCostCurve",
    "AnalyticScenario",
    "CalibrationError",
    "CarbonPathError",
    "ConfigError",
    "CostBreakdown",
    "DamageModel",
    "DEFAULT_TCRE",
    "EconomyParams",
    "GrowthSchedule",
    "InfeasibleBracketError",
    "LearningModel",
    "OvershootResult",
    "Pathway",
    "PerturbationReport",
    "ScenarioModels",
    "ScenarioRunError",
    "SolverConfig",
    "SolverError",
    "TrajectoryError",
    "abatement_for_warming_goal",
    "average_cost",
    "bau_cumulative",
    "bau_emission_rate",
    "calibrate_damage",
    "carbon_tax_path",
    "damage_fraction",
    "damage_fraction_dM",
    "delay_cost_growth",
    "delay_cost_growth_constant",
    "discounted_cost",
    "el_acceleration",
    "el_residual",
    "gdp",
    "initial_tax",
    "initial_tax_delay_growth",
    "initial_tax_from_goal",
    "integrate_trajectory",
    "integrated_rate",
    "learning_terms",
    "marginal_cost",
    "max_abatement_without_overshoot",
    "no_overshoot_fraction",
    "overshoot_threshold",
    "overshoot_threshold_constant",
    "perturbation_check",
    "rate",
    "sigma_end",
    "sigma_start",
    "solve_bvp",
    "total_cost",
    "warming",
    "zero_pathway",
]
