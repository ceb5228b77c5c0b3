"""Golden-section search used by the optimizers (the oracle module keeps its own)."""

import math

INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_max(f, lo, hi, tol=1e-10, max_iter=500):
    """Maximize a unimodal ``f`` on [lo, hi]; returns (x, f(x))."""
    a, b = lo, hi
    x1 = b - INVPHI * (b - a)
    x2 = a + INVPHI * (b - a)
    f1, f2 = f(x1), f(x2)
    for _ in range(max_iter):
        if b - a <= tol:
            break
        if f1 >= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - INVPHI * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + INVPHI * (b - a)
            f2 = f(x2)
    return (x1, f1) if f1 >= f2 else (x2, f2)


def golden_min(f, lo, hi, tol=1e-10, max_iter=500):
    x, fx = golden_max(lambda v: -f(v), lo, hi, tol, max_iter)
    return x, -fx
