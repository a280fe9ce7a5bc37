"""Closed-form results for the no-learning, no-damage optimum.

With zero cost-curve intercept and neither learning nor damages, the
optimal relative abatement rate sigma(t) = m_dot/m_max grows at i(t)/c2
while the maximum rate grows at theta*r(t).  Everything of interest then
reduces to the weighted-growth integral

    J(a, b) = int_a^b exp(I(t)/c2 + theta*R(t)) dt

with I and R the integrals of the interest and GDP growth rates.  These
results double as an independent oracle for the numerical solver.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
import math
from typing import NamedTuple

from scipy.integrate import quad

from .costs import AbatementCostCurve
from .economy import (
    CONSTANT,
    EconomyParams,
    GrowthSchedule,
    bau_cumulative,
    integrated_rate,
    rate,
)
from .units import USD_PER_TON_PER_TRILLION_PER_GTON


@dataclass(frozen=True)
class AnalyticScenario:
    """A no-learning, no-damage scenario with abatement starting at t = start_year."""

    econ: EconomyParams
    growth: GrowthSchedule
    interest: GrowthSchedule
    curve: AbatementCostCurve
    m_tot: float
    start_year: float = 0.0

    def __post_init__(self):
        if self.curve.c0 != 0.0:
            raise ValueError("closed forms require a zero cost-curve intercept (c0 = 0)")
        if self.m_tot <= 0:
            raise ValueError("m_tot must be positive")
        if not 0 <= self.start_year < self.econ.horizon:
            raise ValueError("start_year must lie in [0, horizon)")

    def delayed(self, start_year):
        return replace(self, start_year=start_year)


def _weighted_integral(growth, interest, theta, c2, lo, hi):
    """J(lo, hi) = int exp(I/c2 + theta*R); closed form for constant rates.

    Non-constant schedules fall back to adaptive quadrature at relative
    tolerance 1e-12 (well inside the 1e-10 budget); the constant-rate branch
    is exact and keeps finite-difference tests noise-free.
    """
    if hi <= lo:
        return 0.0
    if growth.kind == CONSTANT and interest.kind == CONSTANT:
        k = interest.base_rate / c2 + theta * growth.base_rate
        if k == 0.0:
            return hi - lo
        return (math.exp(k * hi) - math.exp(k * lo)) / k

    def integrand(t):
        return math.exp(
            integrated_rate(interest, t) / c2 + theta * integrated_rate(growth, t)
        )

    val, _ = quad(integrand, lo, hi, epsabs=1e-13, epsrel=1e-12, limit=200)
    return val


def growth_weighted_integral(scenario: AnalyticScenario, lo, hi):
    """J(lo, hi) for a scenario's schedules and cost-curve exponent."""
    return _weighted_integral(
        scenario.growth, scenario.interest, scenario.econ.theta, scenario.curve.c2, lo, hi
    )


def sigma_start(scenario: AnalyticScenario):
    """Relative abatement rate sigma at the start of abatement.

    sigma(N) = (m_tot / e_bau0) * exp(I(N)/c2) / J(N, T); it grows with the
    start year N because a later start must sit farther up the cost curve.
    """
    n = scenario.start_year
    c2 = scenario.curve.c2
    weight = math.exp(integrated_rate(scenario.interest, n) / c2)
    big_j = growth_weighted_integral(scenario, n, scenario.econ.horizon)
    return scenario.m_tot / scenario.econ.e_bau0 * weight / big_j


def sigma_end(scenario: AnalyticScenario):
    """Relative abatement rate at the end of the horizon.

    sigma(T) < 1 is exactly the condition for no temperature overshoot
    (emissions stay positive until T).
    """
    c2 = scenario.curve.c2
    horizon = scenario.econ.horizon
    weight = math.exp(integrated_rate(scenario.interest, horizon) / c2)
    big_j = growth_weighted_integral(scenario, scenario.start_year, horizon)
    return scenario.m_tot / scenario.econ.e_bau0 * weight / big_j


def total_cost(scenario: AnalyticScenario):
    """Present value of abatement spending along the optimal pathway, trillion $.

    C = c1 * (m_tot/e_bau0)**(c2+1) * e_bau0 / J(N, T)**c2
    """
    curve = scenario.curve
    econ = scenario.econ
    big_j = growth_weighted_integral(scenario, scenario.start_year, econ.horizon)
    ratio = scenario.m_tot / econ.e_bau0
    return curve.c1 * ratio ** (curve.c2 + 1.0) * econ.e_bau0 / big_j**curve.c2


def delay_cost_growth(scenario: AnalyticScenario):
    """Relative growth of the total-cost present value per year of delay.

    d(ln C)/dN = c2 * exp(I(N)/c2 + theta*R(N)) / J(N, T).  Independent of
    the abatement goal; approaches c2/(T-N) as the start nears the horizon.
    """
    n = scenario.start_year
    c2 = scenario.curve.c2
    weight = math.exp(
        integrated_rate(scenario.interest, n) / c2
        + scenario.econ.theta * integrated_rate(scenario.growth, n)
    )
    return c2 * weight / growth_weighted_integral(scenario, n, scenario.econ.horizon)


def delay_cost_growth_constant(interest_rate, growth_rate, theta, c2, horizon, start_year):
    """Constant-rate closed form of :func:`delay_cost_growth` (cross-check)."""
    k = interest_rate / c2 + theta * growth_rate
    if k == 0.0:
        return c2 / (horizon - start_year)
    return (
        c2
        * k
        * math.exp(k * start_year)
        / (math.exp(k * horizon) - math.exp(k * start_year))
    )


def initial_tax(scenario: AnalyticScenario):
    """Carbon tax at the start of abatement, $/ton CO2.

    P(N) = c1 * (c2+1) * (m_tot/e_bau0)**c2 * exp(I(N)) / J(N, T)**c2,
    converted from trillion $/Gton.
    """
    curve = scenario.curve
    econ = scenario.econ
    n = scenario.start_year
    big_j = growth_weighted_integral(scenario, n, econ.horizon)
    level = (
        curve.c1
        * (curve.c2 + 1.0)
        * (scenario.m_tot / econ.e_bau0) ** curve.c2
        * math.exp(integrated_rate(scenario.interest, n))
        / big_j**curve.c2
    )
    return level * USD_PER_TON_PER_TRILLION_PER_GTON


def initial_tax_delay_growth(scenario: AnalyticScenario):
    """Relative growth of the required initial tax per year of delay.

    Equals the interest rate at the start year plus the delay growth of the
    total cost -- the Hotelling contribution rides on top of the
    increasing-marginal-cost contribution.
    """
    return rate(scenario.interest, scenario.start_year) + delay_cost_growth(scenario)


def abatement_for_warming_goal(
    econ: EconomyParams,
    growth: GrowthSchedule,
    damage_alpha,
    warming_final,
    warming_present,
):
    """Cumulative abatement needed to hold end-of-horizon warming at a goal.

    Future warming (beyond the present level) is alpha times future net
    cumulative emissions, so m_tot = e_bau0 * int_0^T exp(theta*R) -
    (warming_final - warming_present)/alpha.  Raises if the goal requires
    no abatement at all.
    """
    future_budget = (warming_final - warming_present) / damage_alpha
    m_tot = bau_cumulative(econ, growth, econ.horizon) - future_budget
    if m_tot <= 0:
        raise ValueError("warming goal is met by BAU emissions; no abatement implied")
    return m_tot


def initial_tax_from_goal(
    econ: EconomyParams,
    growth: GrowthSchedule,
    interest: GrowthSchedule,
    curve: AbatementCostCurve,
    damage_alpha,
    warming_final,
    warming_present,
    start_year=0.0,
):
    """Initial tax ($/ton) for an end-of-horizon warming goal in K.

    Substitutes the goal-implied cumulative abatement into
    :func:`initial_tax`; the BAU integral runs from t = 0 regardless of the
    start year (the goal constrains the whole horizon's emissions).
    """
    m_tot = abatement_for_warming_goal(
        econ, growth, damage_alpha, warming_final, warming_present
    )
    scenario = AnalyticScenario(econ, growth, interest, curve, m_tot, start_year)
    return initial_tax(scenario)


class OvershootResult(NamedTuple):
    threshold: float
    delay_sensitivity: float


def max_abatement_without_overshoot(
    econ: EconomyParams,
    growth: GrowthSchedule,
    interest: GrowthSchedule,
    curve: AbatementCostCurve,
    start_year=0.0,
):
    """Largest cumulative abatement with sigma(T) <= 1 (no net-negative emissions)."""
    discount = math.exp(-integrated_rate(interest, econ.horizon) / curve.c2)
    big_j = _weighted_integral(
        growth, interest, econ.theta, curve.c2, start_year, econ.horizon
    )
    return econ.e_bau0 * discount * big_j


def overshoot_threshold(
    econ: EconomyParams,
    growth: GrowthSchedule,
    interest: GrowthSchedule,
    curve: AbatementCostCurve,
    damage_alpha,
    start_year=0.0,
):
    """Lowest future warming (K) reachable without temperature overshoot.

    Optimal pathways have sigma growing, so overshoot is avoided iff
    sigma(T) <= 1; the binding case caps cumulative abatement at
    e_bau0 * exp(-I(T)/c2) * J(N, T), leaving a floor on future warming:

        dT* = alpha * (E_bau_future - m_tot_max)

    Returns the floor together with its sensitivity to the start year,
    d(dT*)/dN = alpha * e_bau0 * exp(-(I(T)-I(N))/c2 + theta*R(N)) > 0.
    """
    abatable = max_abatement_without_overshoot(econ, growth, interest, curve, start_year)
    bau_future = bau_cumulative(econ, growth, econ.horizon)
    threshold = damage_alpha * (bau_future - abatable)
    horizon = econ.horizon
    sensitivity = (
        damage_alpha
        * econ.e_bau0
        * math.exp(
            -(integrated_rate(interest, horizon) - integrated_rate(interest, start_year))
            / curve.c2
            + econ.theta * integrated_rate(growth, start_year)
        )
    )
    return OvershootResult(threshold, sensitivity)


def overshoot_threshold_constant(
    e_bau0, interest_rate, growth_rate, theta, c2, damage_alpha, horizon, start_year
):
    """Constant-rate closed form of the no-overshoot warming floor (cross-check)."""
    tr = theta * growth_rate
    k = interest_rate / c2 + tr
    if tr == 0.0 or k == 0.0:
        raise ValueError("constant-rate form needs theta*r > 0 and i/c2 + theta*r > 0")
    bau_term = (math.exp(tr * horizon) - 1.0) / tr
    abat_term = (
        math.exp(tr * horizon) / k * (1.0 - math.exp(-k * (horizon - start_year)))
    )
    return damage_alpha * e_bau0 * (bau_term - abat_term)


def no_overshoot_fraction(
    econ: EconomyParams,
    growth: GrowthSchedule,
    interest: GrowthSchedule,
    curve: AbatementCostCurve,
    start_year=0.0,
):
    """Fraction of future BAU emissions abatable without overshoot.

    For an early start and a long horizon this approaches
    theta*r / (i/c2 + theta*r) under constant rates.
    """
    abatable = max_abatement_without_overshoot(econ, growth, interest, curve, start_year)
    return abatable / bau_cumulative(econ, growth, econ.horizon)
