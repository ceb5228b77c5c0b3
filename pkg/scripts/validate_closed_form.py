#!/usr/bin/env python
"""Compare the Wright-Omega closed form for the fixed-reference optimum with a dense grid.

Prints the worst energy and relative-utility gaps over random parameter tuples.
"""
import argparse
import time

import numpy as np
from scipy.special import ndtr

from lossaware import EconomicParams, GaussianShiftModel, ProspectParams, optimal_energy_pt_fixed
from lossaware.oracle import GridSpec, grid_argmax, refine_argmax


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--tuples", type=int, default=200)
    parser.add_argument("--points", type=int, default=10**6)
    parser.add_argument("--p0", type=float, default=10.0)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    worst_e = worst_u = 0.0
    t0 = time.perf_counter()
    for _ in range(args.tuples):
        s, c = rng.uniform(1, 100), rng.uniform(0.1, 20)
        sigma2, beta, lam = rng.uniform(0.25, 4), rng.uniform(0.5, 5), rng.uniform(0.55, 1.0)
        d = optimal_energy_pt_fixed(GaussianShiftModel(sigma2), EconomicParams(s, c, args.p0), ProspectParams(beta, lam))
        obj = lambda p: s**lam * ndtr(np.sqrt(p / sigma2)) - beta * (c * p) ** lam
        x, _ = grid_argmax(obj, GridSpec(0, args.p0, args.points), vectorized=True)
        scalar = lambda q: float(obj(np.array([q]))[0])
        xr = refine_argmax(scalar, x, args.p0 / (args.points - 1), 1e-12, lo=0.0, hi=args.p0)
        worst_e = max(worst_e, abs(d.energy - xr))
        worst_u = max(worst_u, abs(d.utility - scalar(xr)) / abs(scalar(xr)))
    print(f"{args.tuples} tuples, {args.points} grid points, {time.perf_counter() - t0:.1f} s")
    print(f"max |energy gap| = {worst_e:.3e}")
    print(f"max relative utility gap = {worst_u:.3e}")


if __name__ == "__main__":
    main()
