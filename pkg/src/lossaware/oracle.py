"""Brute-force reference solvers used to check the closed forms and optimizers.

Nothing here imports the engine's search code; the grid and the refinement are
deliberately naive so they can serve as ground truth.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ValidationError


class EvaluationError(ArithmeticError):
    """The objective returned a non-finite value on the grid."""

    def __init__(self, point, value):
        super().__init__(f"objective is {value!r} at grid point {point!r}")
        self.point = point
        self.value = value


@dataclass(frozen=True)
class GridSpec:
    lo: float
    hi: float
    points: int

    def __post_init__(self):
        problems = []
        if not self.lo < self.hi:
            problems.append(f"grid needs lo < hi, got [{self.lo!r}, {self.hi!r}]")
        if int(self.points) != self.points or self.points < 2:
            problems.append(f"grid needs at least 2 points, got {self.points!r}")
        if problems:
            raise ValidationError(problems)

    def values(self):
        return np.linspace(self.lo, self.hi, int(self.points))


def grid_argmax(objective, grid: GridSpec, vectorized: bool = False, chunk: int = 1 << 16):
    """Largest objective value over the grid; ties go to the smallest argument.

    With ``vectorized=True`` the objective receives numpy arrays in chunks, which is
    what makes 10^5-10^6 point grids affordable.
    """
    xs = grid.values()
    if vectorized:
        parts = [np.asarray(objective(xs[i : i + chunk]), dtype=float) for i in range(0, xs.size, chunk)]
        ys = np.concatenate(parts)
    else:
        ys = np.array([objective(float(x)) for x in xs], dtype=float)
    bad = ~np.isfinite(ys)
    if bad.any():
        j = int(np.argmax(bad))
        raise EvaluationError(float(xs[j]), float(ys[j]))
    i = int(np.argmax(ys))  # first occurrence -> smallest argument on ties
    return float(xs[i]), float(ys[i])


def refine_argmax(objective, seed: float, radius: float, tol: float, lo=-math.inf, hi=math.inf):
    """Golden-section refinement of a maximum on [seed - radius, seed + radius].

    The window is intersected with [lo, hi] so callers can respect a domain edge.
    """
    if not radius > 0:
        raise DomainError(f"radius must be positive, got {radius!r}")
    if not tol > 0:
        raise DomainError(f"tol must be positive, got {tol!r}")
    a = max(seed - radius, lo)
    b = min(seed + radius, hi)
    r = (math.sqrt(5) - 1) / 2
    c = b - r * (b - a)
    d = a + r * (b - a)
    fc, fd = objective(c), objective(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - r * (b - a)
            fc = objective(c)
        else:
            a, c, fc = c, d, fd
            d = a + r * (b - a)
            fd = objective(d)
        if c >= d:  # interval collapsed below float resolution
            break
    best = c if fc >= fd else d
    # never worse than the seed itself
    return best if objective(best) >= objective(seed) else seed


def chernoff_grid_min(p0_dist, p1_dist, points: int = 10**6):
    """Minimum of sum P0^l P1^(1-l) over an open grid on (0, 1); returns (l, value)."""
    p0 = np.asarray(p0_dist, dtype=float)[:, None]
    p1 = np.asarray(p1_dist, dtype=float)[:, None]
    lams = np.arange(1, points + 1) / (points + 1)
    best_l, best_v = 0.5, math.inf
    for i in range(0, lams.size, 1 << 15):
        block = lams[None, i : i + (1 << 15)]
        with np.errstate(divide="ignore"):
            vals = (p0**block * p1 ** (1 - block)).sum(axis=0)
        j = int(np.argmin(vals))
        if vals[j] < best_v:
            best_l, best_v = float(block[0, j]), float(vals[j])
    return best_l, best_v


def chernoff_grid_information(p0_dist, p1_dist, points: int = 10**6):
    _, v = chernoff_grid_min(p0_dist, p1_dist, points)
    return max(0.0, -math.log2(v))
