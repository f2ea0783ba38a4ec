"""Overflow-free ratios of hyperbolic functions for boundary-layer profiles.

The London sphere fields only ever need ``sinh(x)/sinh(X)`` and
``(sinh x - x cosh x)/sinh(X)`` with ``0 <= x <= X``. Both are bounded, but
the numerator and denominator overflow separately once X exceeds ~710.
"""

from __future__ import annotations

import numpy as np

__all__ = ["csch", "g_over_x3", "scaled_profiles", "sinh_minus_x_cosh", "sinhc"]

# below this the small-argument series are used
SERIES_CUTOFF = 0.5
_NTERMS = 14


def _as_array(x):
    return np.asarray(x, dtype=float)


def sinhc(x):
    """sinh(x)/x, equal to 1 at x = 0."""
    x = _as_array(x)
    out = np.ones_like(x)
    big = np.abs(x) >= SERIES_CUTOFF
    with np.errstate(over="ignore"):
        out[big] = np.sinh(x[big]) / x[big]
    xs = x[~big]
    term = np.ones_like(xs)
    acc = np.ones_like(xs)
    for k in range(1, _NTERMS):
        term = term * xs * xs / ((2 * k) * (2 * k + 1))
        acc = acc + term
    out[~big] = acc
    return out[()] if out.ndim == 0 else out


def g_over_x3(x):
    """(sinh x - x cosh x)/x^3, equal to -1/3 at x = 0.

    Series: -sum_k 2k x^(2k-2) / (2k+1)!.
    """
    x = _as_array(x)
    out = np.empty_like(x)
    big = np.abs(x) >= SERIES_CUTOFF
    xb = x[big]
    with np.errstate(over="ignore", invalid="ignore"):
        out[big] = (np.sinh(xb) - xb * np.cosh(xb)) / xb**3
    xs = x[~big]
    fact = 6.0  # (2k+1)! at k = 1
    power = np.ones_like(xs)
    acc = np.zeros_like(xs)
    for k in range(1, _NTERMS):
        acc = acc - 2 * k * power / fact
        power = power * xs * xs
        fact *= (2 * k + 2) * (2 * k + 3)
    out[~big] = acc
    return out[()] if out.ndim == 0 else out


def sinh_minus_x_cosh(x):
    """sinh x - x cosh x without cancellation near zero."""
    x = _as_array(x)
    return x**3 * g_over_x3(x)


def csch(X):
    """1/sinh(X) for X > 0, underflowing gracefully to 0."""
    X = _as_array(X)
    return 2.0 * np.exp(-X) / -np.expm1(-2.0 * X)


def scaled_profiles(x, X):
    """Return ``(sinhc(x)/sinh(X), g_over_x3(x)/sinh(X))`` for 0 <= x <= X.

    For x >= SERIES_CUTOFF both are written with ``exp(x - X)`` factored out,
    so nothing overflows for X up to the float range of ``x - X``.
    """
    x = _as_array(x)
    X = np.broadcast_to(_as_array(X), x.shape)
    s_out = np.empty(np.broadcast(x, X).shape)
    g_out = np.empty_like(s_out)
    big = x >= SERIES_CUTOFF
    xs, Xs = x[~big], X[~big]
    c = csch(Xs)
    s_out[~big] = sinhc(xs) * c
    g_out[~big] = g_over_x3(xs) * c
    xb, Xb = x[big], X[big]
    decay = np.exp(xb - Xb)
    denom = -np.expm1(-2.0 * Xb)
    e2 = np.exp(-2.0 * xb)
    sinh_part = -np.expm1(-2.0 * xb)  # 2 e^-x sinh x
    cosh_part = 1.0 + e2  # 2 e^-x cosh x
    s_out[big] = decay * sinh_part / denom / xb
    g_out[big] = decay * (sinh_part - xb * cosh_part) / denom / xb**3
    if s_out.ndim == 0:
        return s_out[()], g_out[()]
    return s_out, g_out
