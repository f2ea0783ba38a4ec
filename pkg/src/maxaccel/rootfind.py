"""Bracketed scalar root finding: secant steps safeguarded by bisection."""

from __future__ import annotations

import math
from typing import Callable


class RootNotBracketed(ValueError):
    pass


def bisect_secant(
    f: Callable[[float], float],
    a: float,
    b: float,
    rtol: float = 1e-10,
    atol: float = 0.0,
    maxiter: int = 200,
) -> float:
    """Return x in [a, b] with f(x) = 0, given f(a) and f(b) of opposite sign.

    Each iteration takes a secant step from the two latest iterates when it
    lands strictly inside the bracket, and bisects otherwise or whenever the
    bracket has failed to halve over three steps. Steps shorter than the
    tolerance are stretched to the tolerance toward the bracket midpoint, so
    the bracket collapses once the secant iterates converge. Terminates when
    the bracket is narrower than ``2 * (rtol * |x| + atol)``.
    """
    if a > b:
        a, b = b, a
    fa, fb = f(a), f(b)
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if math.copysign(1.0, fa) == math.copysign(1.0, fb):
        raise RootNotBracketed(f"f({a!r}) = {fa!r} and f({b!r}) = {fb!r} have the same sign")

    x0, f0 = a, fa
    x1, f1 = b, fb
    widths = [b - a]
    for _ in range(maxiter):
        mid = 0.5 * (a + b)
        tol = rtol * abs(x1) + atol
        x = math.nan
        if f1 != f0:
            x = x1 - f1 * (x1 - x0) / (f1 - f0)
        stalled = len(widths) > 3 and widths[-1] > 0.5 * widths[-4]
        if not (a < x < b) or stalled:
            x = mid
        elif abs(x - x1) < tol:
            x = x1 + math.copysign(tol, mid - x1)
            if not (a < x < b):
                x = mid
        fx = f(x)
        if fx == 0.0:
            return x
        if math.copysign(1.0, fx) == math.copysign(1.0, fa):
            a, fa = x, fx
        else:
            b, fb = x, fx
        x0, f0, x1, f1 = x1, f1, x, fx
        widths.append(b - a)
        if b - a <= 2.0 * (rtol * abs(x) + atol):
            return a if abs(fa) < abs(fb) else b
    raise RuntimeError(f"no convergence after {maxiter} iterations; bracket [{a!r}, {b!r}]")
