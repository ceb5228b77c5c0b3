"""Energy decisions under expected utility and prospect-theory value functions.

Three decision makers choose how much energy p in [0, p0] to spend:

* rational: maximize s*D(p) - c*p
* prospect theory, reference fixed at 0: maximize s^lam*D(p) - beta*(c*p)^lam
* prospect theory, reference r = t*s - (1-t)*c*p: maximize
  (s + c*p)^lam * ((1-t)^lam*D(p) - beta*t^lam), or stay out (utility 0)
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from ._search import golden_max
from .detection import AccuracyCurve, GaussianShiftModel
from .errors import ConvergenceError, DomainError, UsageError, ValidationError
from .special_functions import wright_omega


@dataclass(frozen=True)
class EconomicParams:
    s: float
    c: float
    p0: float

    def __post_init__(self):
        problems = [
            f"{name} must be positive and finite, got {val!r}"
            for name, val in (("s", self.s), ("c", self.c), ("p0", self.p0))
            if not (isinstance(val, (int, float)) and math.isfinite(val) and val > 0)
        ]
        if problems:
            raise ValidationError(problems)


@dataclass(frozen=True)
class FixedZero:
    """Reference point pinned at zero."""


@dataclass(frozen=True)
class WeightedAverage:
    """Reference point t*best + (1-t)*worst; t is the optimism level."""

    t: float

    def __post_init__(self):
        if not (isinstance(self.t, (int, float)) and 0 <= self.t <= 1):
            raise ValidationError(f"optimism t must lie in [0, 1], got {self.t!r}")


@dataclass(frozen=True)
class ProspectParams:
    beta: float
    lam: float
    reference: FixedZero | WeightedAverage = field(default_factory=FixedZero)

    def __post_init__(self):
        problems = []
        if not (isinstance(self.beta, (int, float)) and math.isfinite(self.beta) and self.beta > 0):
            problems.append(f"beta must be positive and finite, got {self.beta!r}")
        if not (isinstance(self.lam, (int, float)) and 0 < self.lam <= 1):
            problems.append(f"lambda must lie in (0, 1], got {self.lam!r}")
        if not isinstance(self.reference, (FixedZero, WeightedAverage)):
            problems.append(f"unknown reference {self.reference!r}")
        if problems:
            raise ValidationError(problems)


class Regime(enum.Enum):
    INTERIOR = "interior"
    FULL_BUDGET = "full_budget"
    ZERO = "zero"


@dataclass(frozen=True)
class EnergyDecision:
    """Chosen energy, the objective value there, and how it was reached.

    ``method`` records the solver path, e.g. ``"closed_form"`` or ``"numeric"``;
    ``fallback`` is True when a closed form was tried and abandoned.
    """

    energy: float
    utility: float
    regime: Regime
    method: str = ""
    fallback: bool = False


def _classify(energy, p0):
    if energy <= 0:
        return 0.0, Regime.ZERO
    if energy >= p0:
        return p0, Regime.FULL_BUDGET
    return energy, Regime.INTERIOR


def _check_energy(p):
    if not p >= 0:
        raise DomainError(f"energy must be nonnegative, got {p!r}")


# -- rational decision maker ------------------------------------------------------


def expected_utility(curve: AccuracyCurve, econ: EconomicParams, p: float) -> float:
    _check_energy(p)
    return econ.s * curve.value(p) - econ.c * p


def optimal_energy_eu(curve: AccuracyCurve, econ: EconomicParams) -> EnergyDecision:
    """Solve D'(p) = c/s and clamp to the budget."""
    p_star = curve.inverse_derivative(econ.c / econ.s)
    energy, regime = _classify(p_star, econ.p0)
    return EnergyDecision(energy, expected_utility(curve, econ, energy), regime, "inverse_derivative")


# -- prospect theory, fixed reference ---------------------------------------------


def _require_fixed(pt):
    if not isinstance(pt.reference, FixedZero):
        raise UsageError("this operation needs a FixedZero reference point")


def _fixed_objective(curve, econ, pt):
    gain = econ.s**pt.lam
    return lambda p: gain * curve.value(p) - pt.beta * (econ.c * p) ** pt.lam


def subjective_utility_fixed(
    curve: AccuracyCurve, econ: EconomicParams, pt: ProspectParams, p: float
) -> float:
    _require_fixed(pt)
    _check_energy(p)
    return _fixed_objective(curve, econ, pt)(p)


def stationarity_target(econ: EconomicParams, pt: ProspectParams) -> float:
    """Right-hand side of D'(p) * p^(1-lam) = beta*lam*c^lam / s^lam."""
    return pt.beta * pt.lam * econ.c**pt.lam / econ.s**pt.lam


def fixed_reference_closed_form(model: GaussianShiftModel, econ: EconomicParams, pt: ProspectParams) -> float:
    """Unconstrained maximizer for the Gaussian curve, valid for lam > 0.5.

    The first-order condition rearranges to (lam-1/2)*log p + p/(2 sigma2) = log K with
    K = s^lam / (2 sqrt(2 pi) sigma lam beta c^lam), so with a = lam - 1/2
    p = 2 sigma2 a * omega(log(K)/a - log(2 sigma2 a)).
    """
    if not pt.lam > 0.5:
        raise DomainError(f"closed form needs lambda > 0.5, got {pt.lam!r}")
    sigma2 = model.sigma2
    a = pt.lam - 0.5
    log_k = (
        pt.lam * math.log(econ.s)
        - math.log(2 * math.sqrt(2 * math.pi * sigma2) * pt.lam * pt.beta)
        - pt.lam * math.log(econ.c)
    )
    z = log_k / a - math.log(2 * sigma2 * a)
    return 2 * sigma2 * a * wright_omega(z)


def maximize_on_budget(objective, p0: float, coarse_points: int = 1001, tol: float = 1e-10, slope=None):
    """Global maximum of a 1-D objective on [0, p0].

    Best point of a coarse grid seeds a golden-section search on the neighbouring
    cells; endpoints compete directly so boundary optima are kept. When ``slope``
    (the objective's derivative) is given, an interior optimum is then polished by
    bisection on its sign, which golden section alone cannot resolve on a flat top.
    """
    grid = np.linspace(0.0, p0, coarse_points)
    values = np.array([objective(float(p)) for p in grid])
    i = int(np.argmax(values))
    best_p, best_v = float(grid[i]), float(values[i])
    lo = float(grid[max(i - 1, 0)])
    hi = float(grid[min(i + 1, coarse_points - 1)])
    p, v = golden_max(objective, lo, hi, tol=tol)
    if v > best_v:
        best_p, best_v = p, v
    if slope is not None and 0 < best_p < p0:
        a, b = lo, hi
        if a > 0 and slope(a) > 0 > slope(b):
            while True:
                mid = 0.5 * (a + b)
                if mid in (a, b):
                    break
                if slope(mid) > 0:
                    a = mid
                else:
                    b = mid
            # on a flat top the values differ only by rounding, so trust the root
            if objective(mid) >= best_v - 1e-14 * max(1.0, abs(best_v)):
                best_p, best_v = mid, max(best_v, objective(mid))
    return best_p, best_v


def _fixed_slope(curve, econ, pt):
    gain = econ.s**pt.lam
    k = pt.lam * pt.beta * econ.c**pt.lam
    return lambda p: gain * curve.derivative(p) - k * p ** (pt.lam - 1)


def optimal_energy_pt_fixed(
    curve: AccuracyCurve, econ: EconomicParams, pt: ProspectParams
) -> EnergyDecision:
    _require_fixed(pt)
    objective = _fixed_objective(curve, econ, pt)
    fallback = False
    if isinstance(curve, GaussianShiftModel) and pt.lam > 0.5:
        try:
            p_f = fixed_reference_closed_form(curve, econ, pt)
        except ConvergenceError:
            fallback = True
        else:
            # objective rises on [0, p_f] and falls after, so clamping is exact
            energy, regime = _classify(min(p_f, econ.p0), econ.p0)
            return EnergyDecision(energy, objective(energy), regime, "closed_form")
    p, _ = maximize_on_budget(objective, econ.p0, slope=_fixed_slope(curve, econ, pt))
    energy, regime = _classify(p, econ.p0)
    return EnergyDecision(energy, objective(energy), regime, "numeric", fallback)


# -- prospect theory, weighted-average reference ----------------------------------


def _require_weighted(pt):
    if not isinstance(pt.reference, WeightedAverage):
        raise UsageError("this operation needs a WeightedAverage reference point")
    return pt.reference.t


def subjective_utility_weighted(
    curve: AccuracyCurve, econ: EconomicParams, pt: ProspectParams, p: float
) -> float:
    t = _require_weighted(pt)
    _check_energy(p)
    lam = pt.lam
    return (econ.s + econ.c * p) ** lam * ((1 - t) ** lam * curve.value(p) - pt.beta * t**lam)


def beta_threshold(curve: AccuracyCurve, lam: float, t: float, p0: float) -> float:
    """Loss-aversion level above which the weighted-reference agent spends nothing."""
    if not 0 < t < 1:
        raise DomainError(f"threshold needs 0 < t < 1, got {t!r}")
    return (1 - t) ** lam * curve.value(p0) / t**lam


def optimal_energy_pt_weighted(
    curve: AccuracyCurve, econ: EconomicParams, pt: ProspectParams
) -> EnergyDecision:
    """All or nothing: spend p0 iff (1-t)^lam D(p0) > beta t^lam, else abstain with utility 0."""
    t = _require_weighted(pt)
    if t == 0:
        participate = curve.value(econ.p0) > 0
    elif t == 1:
        participate = False
    else:
        participate = pt.beta < beta_threshold(curve, pt.lam, t, econ.p0)
    if participate:
        u = subjective_utility_weighted(curve, econ, pt, econ.p0)
        return EnergyDecision(econ.p0, u, Regime.FULL_BUDGET, "threshold")
    return EnergyDecision(0.0, 0.0, Regime.ZERO, "threshold")
