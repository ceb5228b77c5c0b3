"""Detection-accuracy curves D(p): probability of a correct binary decision vs. energy.

Every curve exposes ``value``, ``derivative`` and ``inverse_derivative``. The Gaussian
shift-of-mean model follows from the optimal Bayesian detector; the Chernoff model
uses the asymptotic error exponent of a finite-alphabet test.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Sequence

from ._search import golden_min
from .errors import ConvergenceError, DomainError, ValidationError
from .special_functions import q_function

_LN2 = math.log(2.0)


class AccuracyCurve(ABC):
    """Increasing, concave probability of a correct decision as a function of energy."""

    @abstractmethod
    def value(self, p: float) -> float: ...

    @abstractmethod
    def derivative(self, p: float) -> float: ...

    def derivative_at_zero(self) -> float:
        """Limit of D'(p) as p -> 0+ (may be infinite)."""
        return self.derivative(0.0)

    def inverse_derivative(self, slope: float) -> float:
        """Energy p with D'(p) = slope; 0 when slope >= D'(0+).

        Generic fallback: geometric bracket expansion followed by bisection.
        """
        if not slope > 0:
            raise DomainError(f"slope must be positive, got {slope!r}")
        if slope >= self.derivative_at_zero():
            return 0.0
        lo, hi = 0.0, 1.0
        while self.derivative(hi) > slope:
            lo, hi = hi, 2 * hi
            if hi > 1e300:
                raise ConvergenceError("could not bracket inverse derivative", hi)
        for _ in range(2000):
            mid = 0.5 * (lo + hi)
            if mid in (lo, hi):
                break
            if self.derivative(mid) > slope:
                lo = mid
            else:
                hi = mid
        return 0.5 * (lo + hi)


# -- Gaussian shift of mean -------------------------------------------------------


@dataclass(frozen=True)
class GaussianShiftModel(AccuracyCurve):
    """Observations N(+-sqrt(p), sigma2); the Bayesian detector errs with Q(sqrt(p/sigma2))."""

    sigma2: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.sigma2) and self.sigma2 > 0):
            raise ValidationError(f"sigma2 must be positive and finite, got {self.sigma2!r}")

    def value(self, p):
        return gaussian_accuracy(self, p)

    def derivative(self, p):
        return gaussian_accuracy_derivative(self, p)

    def derivative_at_zero(self):
        return math.inf

    def inverse_derivative(self, slope):
        return gaussian_inverse_derivative(self, slope)


def gaussian_accuracy(model: GaussianShiftModel, p: float) -> float:
    if not p >= 0:
        raise DomainError(f"energy must be nonnegative, got {p!r}")
    return 1.0 - q_function(math.sqrt(p / model.sigma2))


def gaussian_accuracy_derivative(model: GaussianShiftModel, p: float) -> float:
    if not p > 0:
        raise DomainError(f"derivative of the Gaussian curve needs p > 0, got {p!r}")
    sigma = math.sqrt(model.sigma2)
    return math.exp(-p / (2 * model.sigma2)) / (2 * sigma * math.sqrt(2 * math.pi * p))


def _log_gaussian_derivative(model, p):
    sigma = math.sqrt(model.sigma2)
    return -math.log(2 * sigma * math.sqrt(2 * math.pi)) - 0.5 * math.log(p) - p / (2 * model.sigma2)


def gaussian_inverse_derivative(
    model: GaussianShiftModel, slope: float, tol: float = 1e-10, max_iter: int = 200
) -> float:
    """Unique p > 0 with D'(p) = slope.

    Works on g(p) = log D'(p) - log(slope), which is decreasing and convex, so no
    underflow for large p. Newton steps that leave the bracket fall back to bisection.
    """
    if not (slope > 0 and math.isfinite(slope)):
        raise DomainError(f"slope must be positive and finite, got {slope!r}")
    sigma = math.sqrt(model.sigma2)
    log_slope = math.log(slope)

    def g(p):
        return _log_gaussian_derivative(model, p) - log_slope

    lo = 1e-12
    hi = 10 * model.sigma2 * max(1.0, -2 * math.log(slope * sigma))
    while g(lo) < 0:
        lo *= 1e-3
        if lo < 1e-300:
            raise ConvergenceError("slope too large to bracket", lo, g(lo))
    while g(hi) > 0:
        lo, hi = hi, hi * 2
        if hi > 1e300:
            raise ConvergenceError("slope too small to bracket", hi, g(hi))

    p = lo
    for _ in range(max_iter):
        gp = g(p)
        if gp > 0:
            lo = p
        else:
            hi = p
        dg = -0.5 / p - 1 / (2 * model.sigma2)
        p_new = p - gp / dg
        if not lo < p_new < hi:
            p_new = 0.5 * (lo + hi)
        if abs(p_new - p) <= tol * max(1.0, p_new) * 1e-2:
            return p_new
        p = p_new
        if hi - lo <= tol * 1e-2 * max(1.0, p):
            return 0.5 * (lo + hi)
    raise ConvergenceError("gaussian_inverse_derivative did not converge", p, g(p))


# -- Chernoff (asymptotic) model --------------------------------------------------


def _validate_pmf(name, dist, problems):
    if len(dist) == 0:
        problems.append(f"{name} is empty")
        return
    if any(not math.isfinite(m) or m < 0 for m in dist):
        problems.append(f"{name} has negative or non-finite masses")
    total = math.fsum(dist)
    if abs(total - 1.0) > 1e-12:
        problems.append(f"{name} sums to {total!r}, not 1")


def validate_distributions(p0_dist, p1_dist):
    problems = []
    _validate_pmf("p0_dist", p0_dist, problems)
    _validate_pmf("p1_dist", p1_dist, problems)
    if len(p0_dist) != len(p1_dist):
        problems.append(f"alphabet sizes differ: {len(p0_dist)} vs {len(p1_dist)}")
    if problems:
        raise ValidationError(problems)


def chernoff_inner(p0_dist, p1_dist, lam):
    """sum_x P0(x)^lam * P1(x)^(1-lam)."""
    return math.fsum(a**lam * b ** (1 - lam) for a, b in zip(p0_dist, p1_dist))


def chernoff_information(p0_dist: Sequence[float], p1_dist: Sequence[float]) -> float:
    """Chernoff information in bits, by golden-section minimization of the convex inner sum."""
    p0_dist = tuple(float(m) for m in p0_dist)
    p1_dist = tuple(float(m) for m in p1_dist)
    validate_distributions(p0_dist, p1_dist)
    eps = 1e-9
    _, fmin = golden_min(lambda lam: chernoff_inner(p0_dist, p1_dist, lam), eps, 1 - eps, tol=1e-12)
    if fmin <= 0:
        return math.inf  # disjoint supports: a single sample decides
    return max(0.0, -math.log2(fmin))


@dataclass(frozen=True)
class ChernoffModel(AccuracyCurve):
    """D(n) = 1 - 2^(-n c*) for n observations from one of two discrete distributions."""

    p0_dist: tuple
    p1_dist: tuple
    alphabet: tuple | None = None
    exponent: float = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        p0 = tuple(float(m) for m in self.p0_dist)
        p1 = tuple(float(m) for m in self.p1_dist)
        object.__setattr__(self, "p0_dist", p0)
        object.__setattr__(self, "p1_dist", p1)
        validate_distributions(p0, p1)
        if self.alphabet is not None:
            object.__setattr__(self, "alphabet", tuple(self.alphabet))
            if len(self.alphabet) != len(p0):
                raise ValidationError(
                    f"alphabet has {len(self.alphabet)} symbols but distributions have {len(p0)}"
                )
        if p0 == p1:
            raise ValidationError("p0_dist and p1_dist are identical; accuracy would be constant")
        exponent = chernoff_information(p0, p1)
        if math.isinf(exponent):
            raise ValidationError("p0_dist and p1_dist have disjoint supports; accuracy is a step")
        object.__setattr__(self, "exponent", exponent)

    def value(self, n):
        return chernoff_accuracy(self, n)

    def derivative(self, n):
        if not n >= 0:
            raise DomainError(f"sample count must be nonnegative, got {n!r}")
        return self.exponent * _LN2 * 2.0 ** (-n * self.exponent)

    def inverse_derivative(self, slope):
        if not slope > 0:
            raise DomainError(f"slope must be positive, got {slope!r}")
        top = self.exponent * _LN2
        if slope >= top:
            return 0.0
        return math.log2(top / slope) / self.exponent


def chernoff_accuracy(model: ChernoffModel, n: float) -> float:
    if not n >= 0:
        raise DomainError(f"sample count must be nonnegative, got {n!r}")
    return min(1.0, max(0.0, 1.0 - 2.0 ** (-n * model.exponent)))
