"""Fixed numeric text format shared by every writer."""

from __future__ import annotations

import math

SIG_DIGITS = 9


def fmt(x) -> str:
    """9 significant digits; scientific notation when |x| is outside [1e-3, 1e6]."""
    if isinstance(x, bool):
        return "true" if x else "false"
    if x is None:
        return ""
    if isinstance(x, str):
        return x
    x = float(x)
    if x == 0.0:
        return "0"
    if not math.isfinite(x):
        return str(x)
    if 1e-3 <= abs(x) <= 1e6:
        return f"{x:.{SIG_DIGITS}g}"
    return f"{x:.{SIG_DIGITS - 1}e}"
