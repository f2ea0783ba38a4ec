"""Relativistic acceleration transforms and maximal-acceleration checks."""

from __future__ import annotations

import math
from dataclasses import dataclass

from maxaccel.physcore import (
    CODATA2018,
    DomainError,
    PhysicalConstants,
    maximal_acceleration,
    units,
)

__all__ = [
    "MACheck",
    "ThreeVector",
    "check_ma",
    "line_element_factor",
    "lorentz_gamma",
    "mean_acceleration_bound",
    "orthogonality_time",
    "transform_acceleration",
    "transformed_magnitude",
]

# |v|/c at or above this is rejected; gamma would exceed ~7e5
SPEED_GUARD = 1.0 - 1e-12


@dataclass(frozen=True)
class ThreeVector:
    x: float
    y: float
    z: float

    def __post_init__(self):
        if not all(math.isfinite(c) for c in (self.x, self.y, self.z)):
            raise DomainError(f"non-finite vector component in {self!r}")

    @classmethod
    def parse(cls, text: str) -> "ThreeVector":
        parts = [float(p) for p in text.split(",")]
        if len(parts) != 3:
            raise ValueError(f"expected three comma-separated components, got {text!r}")
        return cls(*parts)

    def __add__(self, other: "ThreeVector") -> "ThreeVector":
        return ThreeVector(self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other: "ThreeVector") -> "ThreeVector":
        return ThreeVector(self.x - other.x, self.y - other.y, self.z - other.z)

    def __mul__(self, k: float) -> "ThreeVector":
        return ThreeVector(k * self.x, k * self.y, k * self.z)

    __rmul__ = __mul__

    def dot(self, other: "ThreeVector") -> float:
        return self.x * other.x + self.y * other.y + self.z * other.z

    def cross(self, other: "ThreeVector") -> "ThreeVector":
        return ThreeVector(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )

    def norm(self) -> float:
        return math.hypot(self.x, self.y, self.z)

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.x, self.y, self.z)


@dataclass(frozen=True)
class MACheck:
    """A magnitude tested against a maximal-acceleration bound."""

    value: float
    bound: float

    @property
    def margin(self) -> float:
        return self.bound - self.value

    @property
    def satisfied(self) -> bool:
        return self.margin >= 0

    @property
    def fraction(self) -> float:
        return self.value / self.bound


def _beta(v: ThreeVector, const: PhysicalConstants) -> float:
    beta = v.norm() / const.c
    if beta >= SPEED_GUARD:
        raise DomainError(f"|v| = {beta!r} c is not below the speed of light")
    return beta


def lorentz_gamma(beta: float) -> float:
    return 1.0 / math.sqrt((1.0 - beta) * (1.0 + beta))


@units(a_p="cm/s^2", v="cm/s", returns="cm/s^2")
def transform_acceleration(
    a_p: ThreeVector, v: ThreeVector, const: PhysicalConstants = CODATA2018
) -> ThreeVector:
    """Acceleration seen from a frame moving at ``v`` relative to the rest frame.

    ``a_p`` is the three-acceleration in the instantaneous rest frame. The
    (gamma - 1)/v^2 coefficient is written as gamma^2 / ((gamma + 1) c^2),
    which is exact and has no 0/0 at v = 0.
    """
    beta = _beta(v, const)
    g = lorentz_gamma(beta)
    va = v.dot(a_p)
    coeff = g * g / ((g + 1.0) * const.c**2) - g / const.c**2
    return (a_p + v * (coeff * va)) * (1.0 / (g * g))


@units(a_p="cm/s^2", v="cm/s", returns="cm/s^2")
def transformed_magnitude(
    a_p: ThreeVector, v: ThreeVector, const: PhysicalConstants = CODATA2018
) -> float:
    """|a'| = sqrt(a_p^2 - (a_p.v)^2/c^2) / gamma^2.

    The radicand is evaluated as a_perp^2 + a_par^2/gamma^2 to avoid the
    cancellation when a_p is parallel to v near c.
    """
    beta = _beta(v, const)
    g = lorentz_gamma(beta)
    speed = v.norm()
    if speed == 0.0:
        return a_p.norm()
    # divide twice: subnormal components are quantised, so one pass is not unit length
    u = ThreeVector(v.x / speed, v.y / speed, v.z / speed)
    u = u * (1.0 / u.norm())
    a_par = a_p.dot(u)
    a_perp = a_p.cross(u).norm()
    return math.hypot(a_perp, a_par / g) / (g * g)


@units(proper_acceleration="cm/s^2", mass="g", returns="cm/s^2")
def check_ma(
    proper_acceleration: float, mass: float, const: PhysicalConstants = CODATA2018
) -> MACheck:
    if proper_acceleration < 0 or not math.isfinite(proper_acceleration):
        raise DomainError(f"proper acceleration must be non-negative, got {proper_acceleration!r}")
    return MACheck(proper_acceleration, maximal_acceleration(mass, const))


@units(E="erg", returns="s")
def orthogonality_time(E: float, const: PhysicalConstants = CODATA2018) -> float:
    """Minimum time hbar/(2E) for a state of mean energy E to become orthogonal."""
    if not E > 0:
        raise DomainError(f"energy must be positive, got {E!r}")
    return const.hbar / (2.0 * E)


@units(delta_E="erg", returns="cm/s^2")
def mean_acceleration_bound(delta_E: float, const: PhysicalConstants = CODATA2018) -> float:
    """Upper limit 2 c dE / hbar on the mean acceleration for energy spread dE."""
    if delta_E < 0 or not math.isfinite(delta_E):
        raise DomainError(f"energy spread must be non-negative, got {delta_E!r}")
    return 2.0 * const.c * delta_E / const.hbar


@units(proper_acceleration="cm/s^2", mass="g", returns="1")
def line_element_factor(
    proper_acceleration: float, mass: float, const: PhysicalConstants = CODATA2018
) -> float:
    """Conformal factor of the tangent-bundle line element, 1 - a^2/A_m^2.

    With signature (+,-,-,-) a spacelike proper acceleration of magnitude a
    has x''_mu x''^mu = -a^2, so the factor vanishes on the MA boundary.
    """
    if proper_acceleration < 0:
        raise DomainError("pass the magnitude of the proper acceleration")
    ratio = proper_acceleration / maximal_acceleration(mass, const)
    return 1.0 - ratio * ratio
