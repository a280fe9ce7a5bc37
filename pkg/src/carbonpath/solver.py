"""Two-point boundary-value solver for optimal abatement pathways.

Cost-minimizing pathways under a fixed cumulative-abatement target satisfy
a second-order Euler-Lagrange equation for cumulative abatement M(t).  With
sigma = m_dot / m_max and the learning terms f, h of the cost model, the
optimality condition reads

    c1*c2*(c2+1)*sigma**c2 * (m_ddot/m_dot) =
        i(t) * (c0 + c1*(c2+1)*sigma**c2 - f(M))
        + c1*c2*(c2+1)*sigma**c2 * theta*r(t)
        - c1*c2*sigma**c2 * m_dot * h'(M)/h(M)
        + d'(M) * G(t) / h(M)

where d'(M) < 0 is the damage-fraction sensitivity to cumulative abatement.
The boundary conditions are M(start) = 0 (the power-law learning seed m0
when active) and M(horizon) = m_tot.  The solve shoots on the unknown
initial rate m_dot(start): fixed-step RK4 for the initial-value problem,
bisection refined by secant steps for the root in m_dot(start), with the
monotonicity of M(horizon) in the initial rate asserted at runtime.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
import math
from typing import NamedTuple

import numpy as np
from scipy.integrate import simpson

from . import costs, economy
from .costs import (
    DAMAGE_NONE,
    DAMAGE_POWER_LAW,
    LEARNING_ADDITIVE,
    LEARNING_EXPONENTIAL,
    LEARNING_NONE,
    LEARNING_POWER_LAW,
    AbatementCostCurve,
    DamageModel,
    LearningModel,
    damage_fraction,
    damage_fraction_dM,
    learning_terms,
    marginal_cost,
)
from .economy import EconomyParams, GrowthSchedule, bau_emission_rate, gdp, integrated_rate, rate
from .errors import ConfigError, InfeasibleBracketError, SolverError, TrajectoryError
from .units import USD_PER_TON_PER_TRILLION_PER_GTON

# Positive floor applied to the abatement rate while bracketing the shooting
# root; accepted trajectories are integrated without it.
_RATE_FLOOR = 1e-9
_RATE_BLOWUP = 1e12
# Tax-slope cross-checks need the local solution timescale to span this many
# grid steps for the central difference to be meaningful.
_TAX_CHECK_RESOLUTION = 40.0


@dataclass(frozen=True)
class ScenarioModels:
    """Everything the pathway solver needs to know about one scenario."""

    econ: EconomyParams
    growth: GrowthSchedule
    interest: GrowthSchedule
    curve: AbatementCostCurve
    learning: LearningModel
    damage: DamageModel

    @classmethod
    def defaults(cls, **overrides):
        base = dict(
            econ=EconomyParams(),
            growth=GrowthSchedule.exponential_decay(0.04, 40.0),
            interest=GrowthSchedule.constant(0.03),
            curve=AbatementCostCurve(),
            learning=LearningModel.none(),
            damage=DamageModel.none(),
        )
        base.update(overrides)
        return cls(**base)

    def with_(self, **overrides):
        return replace(self, **overrides)


@dataclass(frozen=True)
class SolverConfig:
    """Numerical settings for the shooting solve.

    ``dt`` is the output and integration step; ``shoot_tol`` bounds
    |M(horizon) - m_tot|; ``bracket`` is the initial search interval for the
    starting rate, expanded by doubling when it does not straddle the
    target.
    """

    dt: float = 0.05
    shoot_tol: float = 1e-3
    bracket: tuple[float, float] = (1e-6, 50.0)
    max_iters: int = 80
    residual_tol: float = 1e-4

    def __post_init__(self):
        if self.dt <= 0:
            raise ValueError("dt must be positive")
        if self.shoot_tol <= 0:
            raise ValueError("shoot_tol must be positive")
        lo, hi = self.bracket
        if not 0 < lo < hi:
            raise ValueError("bracket must satisfy 0 < low < high")
        if self.max_iters < 1:
            raise ValueError("max_iters must be at least 1")


@dataclass
class Pathway:
    """A solved abatement trajectory sampled on a uniform time grid.

    Abatement is identically zero before ``start_year``; emissions jump
    down at the start because the optimality condition leaves the initial
    rate free.  ``M`` carries the power-law learning seed as its starting
    value when that variant is active.
    """

    grid: np.ndarray
    M: np.ndarray
    m_dot: np.ndarray
    sigma: np.ndarray
    emissions: np.ndarray
    cum_emissions: np.ndarray
    warming: np.ndarray
    tax: np.ndarray
    annual_cost: np.ndarray
    discounted_total: float
    start_year: float

    @property
    def dt(self):
        return float(self.grid[1] - self.grid[0])

    @property
    def start_index(self):
        return int(round(self.start_year / self.dt))


class CostBreakdown(NamedTuple):
    total: float
    abatement: float
    damage: float


@dataclass
class PerturbationReport:
    """Cost deltas from endpoint-preserving perturbations of a pathway."""

    deltas: np.ndarray
    amplitude: float
    baseline: float

    @property
    def min_delta(self):
        return float(self.deltas.min())

    @property
    def mean_delta(self):
        return float(self.deltas.mean())


def el_acceleration(t, m, m_dot, models: ScenarioModels, bau_cum=None):
    """Acceleration m_ddot of cumulative abatement on an optimal pathway.

    Evaluates the optimality condition at state (t, M, m_dot) with every
    active model term.  ``bau_cum`` (cumulative BAU emissions at t) may be
    passed to avoid an internal quadrature when damages are active.
    Positive m_dot is required: the equation is singular at zero rate.
    """
    if m_dot <= 0.0:
        raise TrajectoryError("abatement rate must be positive", t)
    curve, learn, damage = models.curve, models.learning, models.damage
    econ = models.econ
    f, _, h, hp = learning_terms(learn, m)
    m_max = bau_emission_rate(econ, models.growth, t)
    sig_pow = (m_dot / m_max) ** curve.c2
    denom = curve.c1 * curve.c2 * (curve.c2 + 1.0) * sig_pow
    rhs = rate(models.interest, t) * (
        curve.c0 + curve.c1 * (curve.c2 + 1.0) * sig_pow - f
    )
    rhs += denom * econ.theta * rate(models.growth, t)
    rhs -= curve.c1 * curve.c2 * sig_pow * m_dot * (hp / h)
    if damage.kind != DAMAGE_NONE:
        if bau_cum is None:
            bau_cum = economy.bau_cumulative(econ, models.growth, t)
        cum = econ.e_hist + bau_cum - m
        rhs += damage_fraction_dM(damage, cum) * gdp(econ, models.growth, t) / h
    return m_dot * rhs / denom


def _cumulative_bau_halfgrid(econ, growth, t_half):
    """Cumulative BAU emissions at each half-grid node.

    Per-interval 3-point Gauss-Legendre quadrature of the closed-form BAU
    rate; the accumulated error is far below solver tolerances.
    """
    a = t_half[:-1]
    b = t_half[1:]
    h = b - a
    mid = 0.5 * (a + b)
    off = 0.5 * math.sqrt(0.6) * h
    lo = bau_emission_rate(econ, growth, mid - off)
    ce = bau_emission_rate(econ, growth, mid)
    hi = bau_emission_rate(econ, growth, mid + off)
    segments = h / 18.0 * (5.0 * lo + 8.0 * ce + 5.0 * hi)
    out = np.empty(t_half.shape[0])
    out[0] = 0.0
    np.cumsum(segments, out=out[1:])
    return out


def _grid_index(value, dt, what):
    idx = int(round(value / dt))
    if abs(idx * dt - value) > 1e-9:
        raise ConfigError(f"{what} ({value}) must fall on the dt={dt} grid")
    return idx


class _Integrator:
    """Precomputed exogenous tables and the RK4 march for one scenario."""

    def __init__(self, models: ScenarioModels, cfg: SolverConfig, start_year):
        econ = models.econ
        if not 0 <= start_year < econ.horizon:
            raise ValueError("start_year must lie in [0, horizon)")
        self.models = models
        self.cfg = cfg
        self.start_year = float(start_year)
        self.dt = cfg.dt
        self.n_total = _grid_index(econ.horizon, cfg.dt, "horizon")
        self.i_start = _grid_index(start_year, cfg.dt, "start_year")
        if self.n_total < 1 or self.i_start >= self.n_total:
            raise ConfigError("grid must contain at least one step after start_year")
        self.grid = cfg.dt * np.arange(self.n_total + 1)
        t_half = 0.5 * cfg.dt * np.arange(2 * self.n_total + 1)
        self.t_half = t_half
        self.interest_tab = rate(models.interest, t_half).tolist()
        self.bau_growth_tab = (econ.theta * rate(models.growth, t_half)).tolist()
        self.mmax_tab = bau_emission_rate(econ, models.growth, t_half).tolist()
        self.ebau_half = _cumulative_bau_halfgrid(econ, models.growth, t_half)
        self.ebau_tab = self.ebau_half.tolist()
        self.damage_active = models.damage.kind != DAMAGE_NONE
        if self.damage_active:
            self.gdp_tab = gdp(econ, models.growth, t_half).tolist()
        else:
            self.gdp_tab = None
        self.m_start = models.learning.start_abatement

    def _march(self, m_dot_start, floored, record):
        """RK4 from start_year to the horizon; returns M(T) or full arrays."""
        if m_dot_start <= 0:
            raise ValueError("m_dot_start must be positive")
        models = self.models
        curve, learn, damage = models.curve, models.learning, models.damage
        c0, c1, c2 = curve.c0, curve.c1, curve.c2
        coef_i = c1 * (c2 + 1.0)
        coef_den = c1 * c2 * (c2 + 1.0)
        coef_mult = c1 * c2
        lkind = learn.kind
        c_f, m_h, b_lrn, m0 = learn.c_f, learn.m_h, learn.b, learn.m0
        dmg = self.damage_active
        dkind = damage.kind
        alpha, d0, d1, t0 = damage.alpha, damage.d0, damage.d1, damage.t0
        d2, e_d = damage.d2, damage.e_d
        e_hist = models.econ.e_hist
        i_tab = self.interest_tab
        thr_tab = self.bau_growth_tab
        mmax_tab = self.mmax_tab
        ebau_tab = self.ebau_tab
        gdp_tab = self.gdp_tab
        dt = self.dt
        sixth = dt / 6.0
        half = 0.5 * dt

        def deriv(j, m, md):
            if md <= 0.0:
                if not floored:
                    raise TrajectoryError(
                        "abatement rate reached zero", 0.5 * dt * j
                    )
                md = _RATE_FLOOR
            sig_pow = (md / mmax_tab[j]) ** c2
            den = coef_den * sig_pow
            if lkind == LEARNING_NONE:
                f_val = 0.0
                hph = 0.0
                h_val = 1.0
            elif lkind == LEARNING_ADDITIVE:
                f_val = c_f * m
                hph = 0.0
                h_val = 1.0
            elif lkind == LEARNING_EXPONENTIAL:
                f_val = 0.0
                hph = -1.0 / m_h
                h_val = math.exp(-m / m_h)
            else:
                if m < m0:
                    if not floored:
                        raise TrajectoryError(
                            "cumulative abatement fell below the learning seed",
                            0.5 * dt * j,
                        )
                    m = m0
                f_val = 0.0
                hph = -b_lrn / m
                h_val = (m / m0) ** (-b_lrn)
            out = i_tab[j] * (c0 + coef_i * sig_pow - f_val) + den * thr_tab[j]
            if hph:
                out -= coef_mult * sig_pow * md * hph
            if dmg:
                cum = e_hist + ebau_tab[j] - m
                if dkind == DAMAGE_POWER_LAW:
                    if cum < 0.0:
                        raise TrajectoryError(
                            "cumulative emissions went negative", 0.5 * dt * j
                        )
                    ddm = -d0 * d1 * (alpha / t0) * (alpha * cum / t0) ** (d1 - 1.0)
                else:
                    frac = 1.0 / (1.0 + math.exp(-cum / e_d) / d2)
                    ddm = -frac * (1.0 - frac) / e_d
                out += ddm * gdp_tab[j] / h_val
            return md * out / den

        n_steps = self.n_total - self.i_start
        m = self.m_start
        md = m_dot_start
        if record:
            m_arr = np.empty(n_steps + 1)
            md_arr = np.empty(n_steps + 1)
            m_arr[0] = m
            md_arr[0] = md
        for k in range(n_steps):
            j0 = 2 * (self.i_start + k)
            a1 = deriv(j0, m, md)
            md2 = md + half * a1
            a2 = deriv(j0 + 1, m + half * md, md2)
            md3 = md + half * a2
            a3 = deriv(j0 + 1, m + half * md2, md3)
            md4 = md + dt * a3
            a4 = deriv(j0 + 2, m + dt * md3, md4)
            m += sixth * (md + 2.0 * (md2 + md3) + md4)
            md += sixth * (a1 + 2.0 * (a2 + a3) + a4)
            if floored and md < _RATE_FLOOR:
                md = _RATE_FLOOR
            if not (math.isfinite(m) and math.isfinite(md)) or md > _RATE_BLOWUP:
                raise TrajectoryError(
                    "trajectory blew up", self.start_year + (k + 1) * dt
                )
            if record:
                m_arr[k + 1] = m
                md_arr[k + 1] = md
        if record:
            return m_arr, md_arr
        return m

    def shoot(self, m_dot_start):
        """Terminal M for a candidate start rate; +inf when it blows up."""
        try:
            return self._march(m_dot_start, floored=True, record=False)
        except TrajectoryError:
            return math.inf

    def run(self, m_dot_start):
        """Strict (unfloored) integration returning node arrays for [start, T]."""
        return self._march(m_dot_start, floored=False, record=True)


def _annual_costs(models: ScenarioModels, m, md, cum, mmax, gdp_nodes):
    """Abatement and damage spending rates (trillion $/yr) along node arrays."""
    curve = models.curve
    f, _, h, _ = learning_terms(models.learning, m)
    sigma = md / mmax
    gamma = (curve.c0 + curve.c1 * sigma**curve.c2 - f) * h
    abat = gamma * md
    if models.damage.kind != DAMAGE_NONE:
        dmg = damage_fraction(models.damage, cum) * gdp_nodes
    else:
        dmg = np.zeros_like(abat)
    return abat, dmg


def _discount_factors(models: ScenarioModels, grid):
    return np.exp(-integrated_rate(models.interest, grid))


def _tax_consistency_check(models: ScenarioModels, grid, i_start, m, md, cum, beta, gdp_nodes, dt):
    """Cross-check the tax path against its growth-rate equation.

    Along any optimal trajectory the marginal cost P = beta obeys

        dP/dt = i*P + (gamma*h'/h - f'*h)*m_dot + d'(M)*G

    so the finite-difference slope of the computed tax must match this
    expression.  Deviations are normalized pointwise by the larger of the
    two routes, floored at 1e-6 of the tax scale so that benign slope
    zero-crossings do not divide by zero.

    Right after the power-law learning seed the tax varies on the timescale
    M/m_dot, which can be shorter than the grid step; nodes where that
    scale is not resolved by the central difference are excluded.
    """
    seg = slice(i_start, None)
    m_seg, md_seg, cum_seg, beta_seg = m[seg], md[seg], cum[seg], beta[seg]
    f, fp, h, hp = learning_terms(models.learning, m_seg)
    mmax_seg = bau_emission_rate(models.econ, models.growth, grid[seg])
    curve = models.curve
    sigma = md_seg / mmax_seg
    gamma = (curve.c0 + curve.c1 * sigma**curve.c2 - f) * h
    rhs = rate(models.interest, grid[seg]) * beta_seg + (gamma * (hp / h) - fp * h) * md_seg
    if models.damage.kind != DAMAGE_NONE:
        rhs = rhs + damage_fraction_dM(models.damage, cum_seg) * gdp_nodes[seg]
    fd = (beta_seg[2:] - beta_seg[:-2]) / (2.0 * dt)
    rhs_interior = rhs[1:-1]
    keep = np.ones(fd.shape[0], dtype=bool)
    if models.learning.kind == LEARNING_POWER_LAW:
        local_scale = m_seg[1:-1] / np.maximum(md_seg[1:-1], 1e-30)
        keep = local_scale >= _TAX_CHECK_RESOLUTION * dt
    if not np.any(keep):
        return
    # The tax slope may legitimately cross zero (learning pulls it down early,
    # discounting pushes it up later); deviations there are measured against
    # 0.1% of the slope scale instead of the vanishing local value.
    slope_scale = max(
        float(np.max(np.abs(fd[keep]))), float(np.max(np.abs(rhs_interior[keep]))), 1e-300
    )
    denom = np.maximum(
        np.maximum(np.abs(fd), np.abs(rhs_interior)), 1e-3 * slope_scale
    )
    deviation = float(np.max((np.abs(fd - rhs_interior) / denom)[keep]))
    if deviation > 1e-3:
        raise SolverError(
            f"carbon-tax growth-rate consistency check failed (deviation {deviation:.3e})"
        )


def _assemble(models: ScenarioModels, integ: _Integrator, m_arr, md_arr, check_tax):
    econ = models.econ
    n_nodes = integ.n_total + 1
    grid = integ.grid
    i0 = integ.i_start
    mmax = np.asarray(integ.mmax_tab[::2])
    ebau = integ.ebau_half[::2]
    m = np.full(n_nodes, integ.m_start)
    md = np.zeros(n_nodes)
    m[i0:] = m_arr
    md[i0:] = md_arr
    sigma = md / mmax
    emissions = mmax - md
    cum = econ.e_hist + ebau - m
    warm = models.damage.alpha * cum
    gdp_nodes = gdp(econ, models.growth, grid) if models.damage.kind != DAMAGE_NONE else None
    abat, dmg = _annual_costs(models, m, md, cum, mmax, gdp_nodes)
    annual = abat + dmg
    disc = _discount_factors(models, grid)
    total = float(simpson(disc * annual, x=grid))
    beta = marginal_cost(models.curve, models.learning, md, mmax, m)
    if check_tax:
        _tax_consistency_check(models, grid, i0, m, md, cum, beta, gdp_nodes, integ.dt)
    return Pathway(
        grid=grid,
        M=m,
        m_dot=md,
        sigma=sigma,
        emissions=emissions,
        cum_emissions=cum,
        warming=warm,
        tax=beta * USD_PER_TON_PER_TRILLION_PER_GTON,
        annual_cost=annual,
        discounted_total=total,
        start_year=integ.start_year,
    )


def integrate_trajectory(
    m_dot_start, start_year, models: ScenarioModels, cfg: SolverConfig | None = None
):
    """Integrate the optimality ODE forward from a given starting rate.

    Fixed-step RK4 on (M, m_dot) from start_year to the horizon with
    M(start) = 0 (the learning seed when power-law learning is active);
    abatement is identically zero before start_year.  Raises
    ``TrajectoryError`` if the rate hits zero or blows up mid-integration.
    """
    cfg = cfg or SolverConfig()
    integ = _Integrator(models, cfg, start_year)
    m_arr, md_arr = integ.run(m_dot_start)
    return _assemble(models, integ, m_arr, md_arr, check_tax=True)


def _audit_monotonicity(evals, m_tot):
    slack = max(1e-9 * m_tot, 1e-7)
    ordered = sorted(evals)
    for (m_lo, f_lo), (m_hi, f_hi) in zip(ordered, ordered[1:]):
        if f_hi - f_lo < -slack:
            raise SolverError(
                "terminal abatement is not monotone in the starting rate "
                f"(M(T) drops by {f_lo - f_hi:.3e} between m_dot_start={m_lo:.6g} "
                f"and {m_hi:.6g})"
            )


def solve_bvp(m_tot, start_year, models: ScenarioModels, cfg: SolverConfig | None = None):
    """Solve for the pathway meeting cumulative abatement m_tot at the horizon.

    Shooting on the starting rate: the bracket is expanded by doubling until
    it straddles the target, then bisection narrows it and secant steps
    polish the root until |M(horizon) - m_tot| < shoot_tol.  Monotonicity of
    M(horizon) in the starting rate is asserted over every evaluation made;
    a violation is reported rather than silently resolved.
    """
    cfg = cfg or SolverConfig()
    if m_tot <= 0:
        raise ValueError("m_tot must be positive")
    integ = _Integrator(models, cfg, start_year)
    if m_tot <= integ.m_start:
        raise ValueError("m_tot must exceed the initial cumulative abatement seed")
    evals = []

    def terminal_gap(m_start):
        gap = integ.shoot(m_start) - m_tot
        evals.append((m_start, gap))
        return gap

    lo, hi = cfg.bracket
    gap_lo = terminal_gap(lo)
    gap_hi = terminal_gap(hi)
    expansions = 0
    while gap_hi < 0:
        expansions += 1
        if expansions > cfg.max_iters:
            raise InfeasibleBracketError(
                f"could not bracket m_tot={m_tot:g} from above (reached {hi:g})"
            )
        hi *= 2.0
        gap_hi = terminal_gap(hi)
    while gap_lo > 0:
        expansions += 1
        if expansions > cfg.max_iters:
            raise InfeasibleBracketError(
                f"could not bracket m_tot={m_tot:g} from below (reached {lo:g})"
            )
        lo *= 0.5
        gap_lo = terminal_gap(lo)
    a, b, gap_a, gap_b = lo, hi, gap_lo, gap_hi
    if abs(gap_a) <= abs(gap_b):
        best_m, best_gap = a, gap_a
    else:
        best_m, best_gap = b, gap_b
    for iteration in range(cfg.max_iters):
        if abs(best_gap) < cfg.shoot_tol:
            break
        candidate = None
        if (
            iteration >= 4
            and math.isfinite(gap_a)
            and math.isfinite(gap_b)
            and gap_b != gap_a
        ):
            candidate = b - gap_b * (b - a) / (gap_b - gap_a)
            if not a < candidate < b:
                candidate = None
        if candidate is None:
            candidate = 0.5 * (a + b)
        gap_c = terminal_gap(candidate)
        if abs(gap_c) < abs(best_gap):
            best_m, best_gap = candidate, gap_c
        if gap_c < 0:
            a, gap_a = candidate, gap_c
        else:
            b, gap_b = candidate, gap_c
    if not abs(best_gap) < cfg.shoot_tol:
        raise SolverError(
            f"shooting stalled at |M(T) - m_tot| = {abs(best_gap):.3e} "
            f"(tolerance {cfg.shoot_tol:g})"
        )
    _audit_monotonicity(evals, m_tot)
    m_arr, md_arr = integ.run(best_m)
    return _assemble(models, integ, m_arr, md_arr, check_tax=True)


def zero_pathway(models: ScenarioModels, cfg: SolverConfig | None = None):
    """The no-abatement pathway (m_tot = 0): BAU emissions throughout."""
    cfg = cfg or SolverConfig()
    integ = _Integrator(models, cfg, 0.0)
    n_nodes = integ.n_total + 1
    m_arr = np.full(n_nodes, integ.m_start)
    md_arr = np.zeros(n_nodes)
    return _assemble(models, integ, m_arr, md_arr, check_tax=False)


def carbon_tax_path(path: Pathway, models: ScenarioModels):
    """Carbon tax P(t) = marginal cost along the pathway, $/ton CO2.

    Also re-runs the two-route consistency check between the tax slope and
    its growth-rate equation (interest, learning, and damage contributions).
    """
    grid = path.grid
    mmax = bau_emission_rate(models.econ, models.growth, grid)
    beta = marginal_cost(models.curve, models.learning, path.m_dot, mmax, path.M)
    gdp_nodes = (
        gdp(models.econ, models.growth, grid)
        if models.damage.kind != DAMAGE_NONE
        else None
    )
    _tax_consistency_check(
        models, grid, path.start_index, path.M, path.m_dot, path.cum_emissions,
        beta, gdp_nodes, path.dt,
    )
    return beta * USD_PER_TON_PER_TRILLION_PER_GTON


def discounted_cost(path: Pathway, models: ScenarioModels):
    """Present value of pathway costs, with abatement/damage split out."""
    grid = path.grid
    mmax = bau_emission_rate(models.econ, models.growth, grid)
    gdp_nodes = (
        gdp(models.econ, models.growth, grid)
        if models.damage.kind != DAMAGE_NONE
        else None
    )
    abat, dmg = _annual_costs(models, path.M, path.m_dot, path.cum_emissions, mmax, gdp_nodes)
    disc = _discount_factors(models, grid)
    abat_pv = float(simpson(disc * abat, x=grid))
    dmg_pv = float(simpson(disc * dmg, x=grid))
    return CostBreakdown(abat_pv + dmg_pv, abat_pv, dmg_pv)


def perturbation_check(
    path: Pathway,
    models: ScenarioModels,
    n_trials=100,
    amplitude=1.0,
    seed=0,
    n_modes=8,
):
    """Probe optimality with random endpoint-preserving perturbations.

    Each trial adds a smooth random sine-series bump to M on [start, T]
    (zero at both ends, so the cumulative constraint is preserved), rescaled
    to ``amplitude`` Gton, and re-evaluates the discounted objective with
    the same quadrature as the baseline.  Positive deltas mean the solved
    pathway is cheaper.
    """
    if amplitude < 0:
        raise ValueError("amplitude must be nonnegative")
    grid = path.grid
    i0 = path.start_index
    seg = slice(i0, None)
    span = grid[-1] - grid[i0]
    s = (grid[seg] - grid[i0]) / span
    modes = np.arange(1, n_modes + 1)
    sin_tab = np.sin(np.pi * np.outer(modes, s))
    cos_tab = np.cos(np.pi * np.outer(modes, s)) * (np.pi * modes / span)[:, None]
    mmax = bau_emission_rate(models.econ, models.growth, grid)
    gdp_nodes = (
        gdp(models.econ, models.growth, grid)
        if models.damage.kind != DAMAGE_NONE
        else None
    )
    disc = _discount_factors(models, grid)

    def objective(m, md, cum):
        abat, dmg = _annual_costs(models, m, md, cum, mmax, gdp_nodes)
        return float(simpson(disc * (abat + dmg), x=grid))

    baseline = objective(path.M, path.m_dot, path.cum_emissions)
    rng = np.random.default_rng(seed)
    weights = 1.0 / modes**2
    m_floor = models.learning.start_abatement
    deltas = np.empty(n_trials)
    for trial in range(n_trials):
        coeffs = rng.standard_normal(n_modes) * weights
        bump = coeffs @ sin_tab
        peak = float(np.max(np.abs(bump)))
        scale = amplitude / peak if peak > 0 else 0.0
        bump = bump * scale
        slope = (coeffs @ cos_tab) * scale
        m_pert = path.M.copy()
        md_pert = path.m_dot.copy()
        m_pert[seg] = m_pert[seg] + bump
        md_pert[seg] = md_pert[seg] + slope
        if np.any(md_pert[seg] <= 0):
            raise ValueError(
                "perturbation amplitude drives the abatement rate nonpositive; "
                "use a smaller amplitude"
            )
        if np.any(m_pert[seg] < m_floor):
            raise ValueError(
                "perturbation amplitude drives cumulative abatement below the "
                "learning seed; use a smaller amplitude"
            )
        cum_pert = path.cum_emissions + (path.M - m_pert)
        deltas[trial] = objective(m_pert, md_pert, cum_pert) - baseline
    return PerturbationReport(deltas=deltas, amplitude=amplitude, baseline=baseline)


def el_residual(path: Pathway, models: ScenarioModels):
    """Normalized optimality-equation residual at interior grid points.

    Compares both sides of the second-order optimality condition along the
    pathway, with the acceleration estimated by central differences of
    m_dot.  Residuals are normalized by the larger side's scale over the
    abatement window; a well-converged solve stays below ~1e-5.
    """
    i0 = path.start_index
    grid = path.grid
    dt = path.dt
    inner = slice(i0 + 1, -1)
    m = path.M[inner]
    md = path.m_dot[inner]
    cum = path.cum_emissions[inner]
    t = grid[inner]
    curve, learn = models.curve, models.learning
    f, _, h, hp = learning_terms(learn, m)
    mmax = bau_emission_rate(models.econ, models.growth, t)
    sig_pow = (md / mmax) ** curve.c2
    den = curve.c1 * curve.c2 * (curve.c2 + 1.0) * sig_pow
    mdd = (path.m_dot[i0 + 2 :] - path.m_dot[i0:-2]) / (2.0 * dt)
    lhs = den * mdd / md
    rhs = rate(models.interest, t) * (curve.c0 + curve.c1 * (curve.c2 + 1.0) * sig_pow - f)
    rhs = rhs + den * models.econ.theta * rate(models.growth, t)
    rhs = rhs - curve.c1 * curve.c2 * sig_pow * md * (hp / h)
    if models.damage.kind != DAMAGE_NONE:
        rhs = rhs + damage_fraction_dM(models.damage, cum) * gdp(
            models.econ, models.growth, t
        ) / h
    scale = max(float(np.max(np.abs(lhs))), float(np.max(np.abs(rhs))), 1e-300)
    return np.abs(lhs - rhs) / scale
