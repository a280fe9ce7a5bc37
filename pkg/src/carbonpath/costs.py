"""Abatement cost curve, endogenous learning, warming, and damage models.

The average abatement cost at rate m_dot (relative to the maximum rate
m_max) is

    gamma(m_dot, M) = (c0 + c1*(m_dot/m_max)**c2 - f(M)) * h(M)

where f shifts the curve down (additive learning) and h scales it
(multiplicative learning), both driven by cumulative abatement M.  The
marginal cost follows by differentiating cost = gamma * m_dot:

    beta(m_dot, M) = (c0 + (c2+1)*c1*(m_dot/m_max)**c2 - f(M)) * h(M)

Damages are a fraction of GDP increasing with warming, which is itself
proportional to cumulative emissions E through the TCRE ``alpha``.
"""

from __future__ import annotations

from dataclasses import dataclass
import math

import numpy as np
from scipy.optimize import brentq

from .errors import CalibrationError
from .units import DEFAULT_TCRE

LEARNING_NONE = "none"
LEARNING_ADDITIVE = "additive"
LEARNING_EXPONENTIAL = "exponential"
LEARNING_POWER_LAW = "power-law"

DAMAGE_NONE = "none"
DAMAGE_POWER_LAW = "power-law"
DAMAGE_LOGISTIC = "logistic"


@dataclass(frozen=True)
class AbatementCostCurve:
    """Coefficients of the average-cost power curve; c1, c2 > 0.

    The default reproduces a DICE-like marginal cost shape: zero intercept,
    exponent 1.6, and marginal cost 550 $/ton at full abatement of BAU
    (so c1 = 0.55/(1+c2) trillion $/Gton).
    """

    c0: float = 0.0
    c1: float = 0.55 / 2.6
    c2: float = 1.6

    def __post_init__(self):
        if self.c1 <= 0 or self.c2 <= 0:
            raise ValueError("cost curve must be increasing: c1 > 0 and c2 > 0")


@dataclass(frozen=True)
class LearningModel:
    """Learning-by-doing variant and its parameters.

    Variants: ``none``; ``additive`` with f(M) = c_f*M; ``exponential``
    with h(M) = exp(-M/m_h); ``power-law`` with h(M) = (M/m0)**-b, which
    needs a positive seed m0 so that h(m0) = 1.
    """

    kind: str = LEARNING_NONE
    c_f: float = 0.0
    m_h: float = 0.0
    b: float = 0.0
    m0: float = 0.0

    def __post_init__(self):
        if self.kind == LEARNING_NONE:
            return
        if self.kind == LEARNING_ADDITIVE:
            if self.c_f <= 0:
                raise ValueError("additive learning needs c_f > 0")
        elif self.kind == LEARNING_EXPONENTIAL:
            if self.m_h <= 0:
                raise ValueError("exponential learning needs m_h > 0")
        elif self.kind == LEARNING_POWER_LAW:
            if self.b <= 0 or self.m0 <= 0:
                raise ValueError("power-law learning needs b > 0 and m0 > 0")
        else:
            raise ValueError(f"unknown learning variant {self.kind!r}")

    @classmethod
    def none(cls):
        return cls(LEARNING_NONE)

    @classmethod
    def additive(cls, c_f=1e-5):
        return cls(LEARNING_ADDITIVE, c_f=c_f)

    @classmethod
    def exponential(cls, m_h=2000.0):
        return cls(LEARNING_EXPONENTIAL, m_h=m_h)

    @classmethod
    def power_law(cls, b=0.322, m0=1.0):
        return cls(LEARNING_POWER_LAW, b=b, m0=m0)

    @property
    def start_abatement(self):
        """Cumulative abatement at the start of a pathway (seed for power-law)."""
        return self.m0 if self.kind == LEARNING_POWER_LAW else 0.0


@dataclass(frozen=True)
class DamageModel:
    """Damage-fraction variant, its parameters, and the TCRE ``alpha``.

    ``power-law``: d = d0 * (alpha*E / t0)**d1 of warming alpha*E.
    ``logistic``:  d = 1 / (1 + (1/d2) * exp(-E/e_d)), saturating at 1.
    """

    kind: str = DAMAGE_NONE
    alpha: float = DEFAULT_TCRE
    d0: float = 0.0
    d1: float = 0.0
    t0: float = 10.0
    d2: float = 0.0
    e_d: float = 0.0

    def __post_init__(self):
        if self.alpha <= 0:
            raise ValueError("alpha (TCRE) must be positive")
        if self.kind == DAMAGE_NONE:
            return
        if self.kind == DAMAGE_POWER_LAW:
            if self.d0 <= 0 or self.d1 <= 0 or self.t0 <= 0:
                raise ValueError("power-law damages need d0, d1, t0 > 0")
        elif self.kind == DAMAGE_LOGISTIC:
            if self.d2 <= 0 or self.e_d <= 0:
                raise ValueError("logistic damages need d2, e_d > 0")
        else:
            raise ValueError(f"unknown damage variant {self.kind!r}")

    @classmethod
    def none(cls, alpha=DEFAULT_TCRE):
        return cls(DAMAGE_NONE, alpha=alpha)

    @classmethod
    def power_law(cls, d0, d1, t0=10.0, alpha=DEFAULT_TCRE):
        return cls(DAMAGE_POWER_LAW, alpha=alpha, d0=d0, d1=d1, t0=t0)

    @classmethod
    def logistic(cls, d2, e_d, alpha=DEFAULT_TCRE):
        return cls(DAMAGE_LOGISTIC, alpha=alpha, d2=d2, e_d=e_d)


def learning_terms(learn: LearningModel, m):
    """Return (f, f', h, h') of the learning model at cumulative abatement m.

    Derivatives are exact.  Accepts scalars or arrays; raises for m < 0,
    and for m < m0 under the power-law variant (h would exceed 1 there).
    """
    m_arr = np.asarray(m, dtype=float)
    scalar = np.ndim(m) == 0
    if np.any(m_arr < 0):
        raise ValueError("cumulative abatement must be nonnegative")
    if learn.kind == LEARNING_ADDITIVE:
        f = learn.c_f * m_arr
        fp = np.full_like(m_arr, learn.c_f)
        h = np.ones_like(m_arr)
        hp = np.zeros_like(m_arr)
    elif learn.kind == LEARNING_EXPONENTIAL:
        f = np.zeros_like(m_arr)
        fp = np.zeros_like(m_arr)
        h = np.exp(-m_arr / learn.m_h)
        hp = -h / learn.m_h
    elif learn.kind == LEARNING_POWER_LAW:
        if np.any(m_arr < learn.m0):
            raise ValueError("power-law learning is defined only for m >= m0")
        f = np.zeros_like(m_arr)
        fp = np.zeros_like(m_arr)
        h = (m_arr / learn.m0) ** (-learn.b)
        hp = -learn.b * h / m_arr
    else:
        f = np.zeros_like(m_arr)
        fp = np.zeros_like(m_arr)
        h = np.ones_like(m_arr)
        hp = np.zeros_like(m_arr)
    if scalar:
        return float(f), float(fp), float(h), float(hp)
    return f, fp, h, hp


def _check_cost_args(m_dot, m_max):
    if np.any(np.asarray(m_max) <= 0):
        raise ValueError("m_max must be positive")
    if np.any(np.asarray(m_dot) < 0):
        raise ValueError("m_dot must be nonnegative")


def average_cost(curve: AbatementCostCurve, learn: LearningModel, m_dot, m_max, m):
    """Average abatement cost gamma, trillion $/Gton.

    m_dot/m_max may exceed 1 (net-negative emissions); the power curve is
    simply extended there.
    """
    _check_cost_args(m_dot, m_max)
    f, _, h, _ = learning_terms(learn, m)
    sigma = np.asarray(m_dot, dtype=float) / m_max
    out = (curve.c0 + curve.c1 * sigma**curve.c2 - f) * h
    return float(out) if np.ndim(out) == 0 else out


def marginal_cost(curve: AbatementCostCurve, learn: LearningModel, m_dot, m_max, m):
    """Marginal abatement cost beta = d(gamma*m_dot)/d(m_dot), trillion $/Gton.

    With zero intercept and no learning this is (1+c2) times the average
    cost at the same point.
    """
    _check_cost_args(m_dot, m_max)
    f, _, h, _ = learning_terms(learn, m)
    sigma = np.asarray(m_dot, dtype=float) / m_max
    out = (curve.c0 + (curve.c2 + 1.0) * curve.c1 * sigma**curve.c2 - f) * h
    return float(out) if np.ndim(out) == 0 else out


def warming(damage: DamageModel, e):
    """Warming alpha * E in K for cumulative emissions E (linear in E)."""
    out = damage.alpha * np.asarray(e, dtype=float)
    return float(out) if np.ndim(e) == 0 else out


def damage_fraction(damage: DamageModel, e):
    """Damage fraction of GDP at cumulative emissions e (Gton).

    Power-law damages reject negative cumulative emissions outright (the
    exponent may be non-integer); the logistic form is defined everywhere.
    """
    e_arr = np.asarray(e, dtype=float)
    scalar = np.ndim(e) == 0
    if damage.kind == DAMAGE_NONE:
        out = np.zeros_like(e_arr)
    elif damage.kind == DAMAGE_POWER_LAW:
        if np.any(e_arr < 0):
            raise ValueError("power-law damage fraction needs cumulative emissions >= 0")
        out = damage.d0 * (damage.alpha * e_arr / damage.t0) ** damage.d1
    else:
        out = 1.0 / (1.0 + np.exp(-e_arr / damage.e_d) / damage.d2)
    return float(out) if scalar else out


def damage_fraction_dM(damage: DamageModel, e):
    """Derivative of the damage fraction w.r.t. cumulative abatement, 1/Gton.

    Abatement lowers cumulative emissions one for one (dE/dM = -1), so this
    is -(dd/dE) evaluated at e; it is negative whenever damages are active.
    """
    e_arr = np.asarray(e, dtype=float)
    scalar = np.ndim(e) == 0
    if damage.kind == DAMAGE_NONE:
        out = np.zeros_like(e_arr)
    elif damage.kind == DAMAGE_POWER_LAW:
        if np.any(e_arr < 0):
            raise ValueError("power-law damage fraction needs cumulative emissions >= 0")
        out = -(
            damage.d0
            * damage.d1
            * (damage.alpha / damage.t0)
            * (damage.alpha * e_arr / damage.t0) ** (damage.d1 - 1.0)
        )
    else:
        d = 1.0 / (1.0 + np.exp(-e_arr / damage.e_d) / damage.d2)
        out = -d * (1.0 - d) / damage.e_d
    return float(out) if scalar else out


def _check_calibration_points(point_low, point_high):
    t_low, d_low = point_low
    t_high, d_high = point_high
    if not 0 < t_low < t_high:
        raise CalibrationError("calibration warmings must satisfy 0 < T_low < T_high")
    if not 0 < d_low < d_high < 1:
        raise CalibrationError("calibration fractions must satisfy 0 < d_low < d_high < 1")
    return t_low, d_low, t_high, d_high


def calibrate_damage(kind, point_low, point_high, alpha=DEFAULT_TCRE, t0=10.0):
    """Fit a damage model through two (warming K, damage fraction) points.

    The power-law fit is closed form.  The logistic pair (d2, e_d) comes
    from reducing the 2x2 system analytically; the result is verified to
    reproduce both points to a residual below 1e-10 and a
    ``CalibrationError`` is raised otherwise.
    """
    t_low, d_low, t_high, d_high = _check_calibration_points(point_low, point_high)
    if kind == DAMAGE_POWER_LAW:
        exponent = math.log(d_high / d_low) / math.log(t_high / t_low)
        d0 = d_low / (t_low / t0) ** exponent
        model = DamageModel.power_law(d0=d0, d1=exponent, t0=t0, alpha=alpha)
    elif kind == DAMAGE_LOGISTIC:
        e_low, e_high = t_low / alpha, t_high / alpha
        # (1/d - 1) = (1/d2) exp(-E/e_d); the ratio of the two points
        # isolates e_d, then either point gives d2.
        ratio = (1.0 / d_low - 1.0) / (1.0 / d_high - 1.0)
        if ratio <= 1.0:
            raise CalibrationError("logistic fit needs strictly increasing damages")
        inv_e_d = math.log(ratio) / (e_high - e_low)
        d2 = math.exp(-e_low * inv_e_d) / (1.0 / d_low - 1.0)
        model = DamageModel.logistic(d2=d2, e_d=1.0 / inv_e_d, alpha=alpha)
    else:
        raise CalibrationError(f"cannot calibrate damage variant {kind!r}")
    for t_point, d_point in ((t_low, d_low), (t_high, d_high)):
        residual = abs(damage_fraction(model, t_point / alpha) - d_point)
        if residual > 1e-10:
            raise CalibrationError(
                f"calibration residual {residual:.3e} at {t_point} K exceeds 1e-10"
            )
    return model


def calibrate_damage_bisection(point_low, point_high, alpha=DEFAULT_TCRE):
    """Logistic calibration by bracketing on 1/e_d (independent cross-check).

    Solves the same 2x2 system as :func:`calibrate_damage` but numerically:
    for a trial decay rate the first point fixes d2, and the residual at the
    second point is driven to zero by root bracketing.
    """
    t_low, d_low, t_high, d_high = _check_calibration_points(point_low, point_high)
    e_low, e_high = t_low / alpha, t_high / alpha

    def residual(inv_e_d):
        # With d2 eliminated via the first point the second point reduces to
        # a stable one-parameter expression (no exp underflow).
        odds = (1.0 / d_low - 1.0) * math.exp(-(e_high - e_low) * inv_e_d)
        return 1.0 / (1.0 + odds) - d_high

    lo, hi = 1e-15, 1.0
    while residual(hi) < 0:
        hi *= 2.0
        if hi > 1e12:
            raise CalibrationError("logistic bracketing failed")
    inv_e_d = brentq(residual, lo, hi, xtol=1e-300, rtol=8.9e-16)
    d2 = math.exp(-e_low * inv_e_d) / (1.0 / d_low - 1.0)
    return DamageModel.logistic(d2=d2, e_d=1.0 / inv_e_d, alpha=alpha)
