"""Gaussian tail probability and the real Wright Omega function."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConvergenceError, DomainError

_SQRT2 = math.sqrt(2.0)
_EPS = 2.0**-52


@dataclass(frozen=True)
class Tolerance:
    abs_tol: float = 1e-12
    max_iter: int = 100

    def __post_init__(self):
        if not self.abs_tol > 0:
            raise DomainError(f"abs_tol must be positive, got {self.abs_tol!r}")
        if self.max_iter < 1:
            raise DomainError(f"max_iter must be >= 1, got {self.max_iter!r}")


DEFAULT_TOLERANCE = Tolerance()


def q_function(t: float) -> float:
    """P(Z > t) for a standard normal Z."""
    if not math.isfinite(t):
        raise DomainError(f"q_function needs a finite argument, got {t!r}")
    return 0.5 * math.erfc(t / _SQRT2)


def _omega_residual(w: float, x: float) -> float:
    return math.log(w) + w - x


def wright_omega(x: float, tol: Tolerance = DEFAULT_TOLERANCE) -> float:
    """Unique positive w with log(w) + w = x.

    Newton iteration kept inside the bracket [exp(x - hi), hi], hi = max(x, 1);
    a step that would leave the bracket is replaced by bisection.
    """
    if not math.isfinite(x):
        raise DomainError(f"wright_omega needs a finite argument, got {x!r}")

    hi = max(x, 1.0)
    lo = math.exp(x - hi)
    if lo == 0.0:
        # log(w) dominates: w = exp(x - w) and w underflows with exp(x)
        return math.exp(x)

    if x < 0:
        w = math.exp(x)
    elif x >= 1:
        w = x - math.log(max(x, 1.0))
    else:
        w = 0.5 + x / 2
    w = min(max(w, lo), hi)

    r = _omega_residual(w, x)
    for _ in range(tol.max_iter):
        if r == 0.0:
            return w
        if r < 0:
            lo = w
        else:
            hi = w
        step = r * w / (1.0 + w)
        w_new = w - step
        if not lo < w_new < hi:
            w_new = 0.5 * (lo + hi)
        moved = abs(w_new - w)
        w = w_new
        r = _omega_residual(w, x)
        if abs(r) <= tol.abs_tol or moved <= 4 * _EPS * w:
            # one more Newton step is nearly free at quadratic convergence
            polished = w - r * w / (1.0 + w)
            if polished > 0 and abs(_omega_residual(polished, x)) < abs(r):
                return polished
            return w
    raise ConvergenceError("wright_omega did not converge", w, r)
