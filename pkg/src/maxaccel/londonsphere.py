"""
London-theory fields of a type-I superconducting sphere in a uniform axial
field, and the electric-field limits that follow from maximal acceleration.

All quantities are Gaussian: fields in G, currents in esu s^-1 cm^-2,
electric fields in statvolt/cm unless a name ends in ``_si`` (N/C).

Sign conventions
----------------
The applied field is ``B0`` along +z. The screening current is diamagnetic
(``j_phi < 0`` near the surface) and the flux density obeys London's
equation ``curl v = -(e / m c) B`` with ``v = j / (n e)``. At the equator
just inside the surface ``B_theta -> -3 B0 / 2``, i.e. +z.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from maxaccel._format import fmt
from maxaccel.hyperbolic import scaled_profiles
from maxaccel.physcore import CODATA2018, BoundResult, DomainError, PhysicalConstants, units

__all__ = [
    "BoundResult",
    "FieldMap",
    "FieldSample",
    "SphereModel",
    "beta",
    "er_bound_equator",
    "er_bound_statistical",
    "fermi_estimates",
    "field_solution",
    "london_er_at",
    "london_er_surface",
    "ma_inequality_check",
    "ma_to_london_ratio",
    "reality_condition",
    "surface_field",
    "surface_velocity",
    "sweep",
]

FIELD_MAP_COLUMNS = ("r", "theta", "B_r", "B_theta", "j_phi", "v_phi", "ma_lhs", "ma_rhs")

# beta*R above this counts as thin penetration
THIN_PENETRATION = 50.0


@units(n="cm^-3", returns="cm^-1")
def beta(n: float, const: PhysicalConstants = CODATA2018) -> float:
    """Inverse London penetration length sqrt(4 pi n e^2 / (m c^2))."""
    if not n > 0:
        raise DomainError(f"superelectron density must be positive, got {n!r}")
    return math.sqrt(4.0 * math.pi * n * const.e**2 / (const.m_e * const.c**2))


@dataclass(frozen=True)
class SphereModel:
    """Superconducting sphere of radius ``R`` in an applied field ``B0``.

    Defaults are representative type-I values: n = 1e22 cm^-3,
    B_c = 300 G, T = 1 K, and the Fermi energy 4.5e-12 erg. The default
    applied field 200 G brings the equatorial surface field to B_c.
    """

    R: float = 1.0
    B0: float = 200.0
    n: float = 1.0e22
    T: float = 1.0
    B_c: float = 300.0
    epsilon_F: float = 4.5e-12
    const: PhysicalConstants = field(default=CODATA2018, repr=False, compare=False)

    def __post_init__(self):
        for name in ("R", "B0", "n", "T", "B_c", "epsilon_F"):
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise DomainError(f"sphere parameter {name} must be positive, got {value!r}")
        if self.B0 > self.B_c:
            raise DomainError(
                f"applied field {self.B0} G exceeds the critical field {self.B_c} G"
            )

    def with_(self, **changes) -> "SphereModel":
        return replace(self, **changes)

    @property
    def beta(self) -> float:
        return beta(self.n, self.const)

    @property
    def penetration_depth(self) -> float:
        return 1.0 / self.beta

    @property
    def beta_R(self) -> float:
        return self.beta * self.R

    @property
    def thin_penetration(self) -> bool:
        return self.beta_R > THIN_PENETRATION

    def parameters(self) -> dict[str, float]:
        return {
            "R_cm": self.R,
            "B0_G": self.B0,
            "n_cm3": self.n,
            "T_K": self.T,
            "B_c_G": self.B_c,
            "epsilon_F_erg": self.epsilon_F,
            "lambda_L_cm": self.penetration_depth,
        }


@dataclass(frozen=True)
class FieldSample:
    """Fields at (r, theta); derivatives of v_phi are carried for the MA check."""

    r: float
    theta: float
    B_r: float
    B_theta: float
    j_phi: float
    v_phi: float
    dv_dr: float
    dv_dtheta: float


def _fields(model: SphereModel, r, theta):
    """Vectorised field evaluation. Returns B_r, B_theta, j_phi, dj_dr, dj_dtheta."""
    r = np.asarray(r, dtype=float)
    theta = np.asarray(theta, dtype=float)
    b = model.beta
    X = b * model.R
    x = b * r
    s, g = scaled_profiles(x, X)  # sinhc(x)/sinh X, g(x)/(x^3 sinh X)
    half = 1.5 * model.B0
    jscale = model.const.c / (4.0 * math.pi) * half
    # sin(pi/2 - theta) makes cos vanish exactly at the equator
    sin_t, cos_t = np.sin(theta), np.sin(0.5 * math.pi - theta)
    j_amp = jscale * b * X * x * g
    B_r = -2.0 * half * X * g * cos_t
    B_theta = -half * X * (s + g) * sin_t
    dj_dr = jscale * b * b * X * (-s - 2.0 * g) * sin_t
    return B_r, B_theta, j_amp * sin_t, dj_dr, j_amp * cos_t


@units(r="cm", theta="rad", returns="FieldSample")
def field_solution(model: SphereModel, r: float, theta: float) -> FieldSample:
    """Exact interior London solution at one point, 0 <= r <= R."""
    if not 0.0 <= r <= model.R:
        raise DomainError(f"r = {r!r} cm is outside the sphere of radius {model.R} cm")
    B_r, B_t, j, dj_dr, dj_dth = (float(a) for a in _fields(model, r, theta))
    ne = model.n * model.const.e
    return FieldSample(r, theta, B_r, B_t, j, j / ne, dj_dr / ne, dj_dth / ne)


def surface_field(model: SphereModel) -> float:
    """Equatorial surface field 3 B0 / 2, capped at the critical field."""
    return min(1.5 * model.B0, model.B_c)


@units(returns="cm/s")
def surface_velocity(model: SphereModel) -> float:
    """Superelectron speed at the surface, v0 = e B_s / (m c beta)."""
    c = model.const
    return c.e * surface_field(model) / (c.m_e * c.c * model.beta)


def fermi_estimates(model: SphereModel) -> tuple[float, float]:
    """Energy and velocity spreads (3 mu / 5, (3/2) sqrt(mu / 2m)) of the gas.

    mu is the Sommerfeld chemical potential eps_F - (pi k T)^2 / (12 eps_F).
    """
    c = model.const
    eF = model.epsilon_F
    mu = eF - (math.pi * c.k_B * model.T) ** 2 / (12.0 * eF)
    if mu <= 0:
        raise DomainError(f"chemical potential {mu!r} erg is not positive; gas is not degenerate")
    return 0.6 * mu, 1.5 * math.sqrt(mu / (2.0 * c.m_e))


def chemical_potential(model: SphereModel) -> float:
    """Sommerfeld chemical potential, erg."""
    dE, _ = fermi_estimates(model)
    return dE / 0.6


@units(delta_E="erg", B_r="G", returns="erg")
def reality_condition(
    delta_E: float, B_r: float, const: PhysicalConstants = CODATA2018
) -> BoundResult:
    """dE >= mu_B |B_r|, needed for the square root in the E_r bound to be real."""
    if delta_E < 0:
        raise DomainError("energy spread must be non-negative")
    return BoundResult("reality condition", const.mu_B * abs(B_r), delta_E)


def london_er_at(model: SphereModel, sample: FieldSample) -> float:
    """Radial electric field from the static superelectron equation of motion.

    E = (m/e)(v.grad)v - (v x B)/c; for azimuthal flow the radial part is
    -(m/e) v^2 / r + v B_theta / c. Returned in statvolt/cm.
    """
    c = model.const
    v = sample.v_phi
    centripetal = -(c.m_e / c.e) * v * v / sample.r if sample.r > 0 else 0.0
    return centripetal + v * sample.B_theta / c.c


def er_bound_statistical(model: SphereModel, sample: FieldSample) -> BoundResult:
    """Upper limit on |E_r| from the Fermi-gas energy and velocity spreads.

    bound = (dv/c) [|B_theta| + sqrt((3 eps_F / 5 mu_B)^2 - B_r^2)],
    dv = (3/2) sqrt(eps_F / 2m). The value slot holds the London |E_r| at the
    same point. Units statvolt/cm.
    """
    c = model.const
    eF = model.epsilon_F
    reality = reality_condition(0.6 * eF, sample.B_r, c)
    if not reality.satisfied:
        raise DomainError(
            f"reality condition violated: 3 eps_F / 5 = {0.6 * eF:.3e} erg < "
            f"mu_B |B_r| = {reality.value:.3e} erg"
        )
    dv = 1.5 * math.sqrt(eF / (2.0 * c.m_e))
    ceiling = 0.6 * eF / c.mu_B
    root = math.sqrt(max(ceiling**2 - sample.B_r**2, 0.0))
    bound = dv / c.c * (abs(sample.B_theta) + root)
    return BoundResult(
        "E_r upper bound (statistical)",
        abs(london_er_at(model, sample)),
        bound,
        {"bound_si": c.field_gaussian_to_si(bound), "delta_v": dv},
    )


@units(v0="cm/s", B_theta="G", returns="statvolt/cm")
def er_bound_equator(
    v0: float,
    B_theta: float,
    value: float | None = None,
    const: PhysicalConstants = CODATA2018,
) -> BoundResult:
    """|E_r| <= (v0/c)(|B_theta| + m v0^2 / (2 mu_B)) at the equator, statvolt/cm.

    Uses dE <= m v0^2 / 2 and dv <= v0 for the surface superelectrons. Pass
    ``value`` (statvolt/cm) to test a field against the bound.
    """
    if v0 < 0:
        raise DomainError("surface velocity must be non-negative")
    bound = v0 / const.c * (abs(B_theta) + const.m_e * v0 * v0 / (2.0 * const.mu_B))
    return BoundResult(
        "E_r upper bound (equator)",
        value,
        bound,
        {"bound_si": const.field_gaussian_to_si(bound)},
    )


@units(v0="cm/s", returns="N/C")
def london_er_surface(model: SphereModel, v0: float) -> float:
    """(m/2e) d(v_phi^2)/dr at the surface for v_phi = v0 exp(beta (r - R)), in N/C."""
    if not model.thin_penetration:
        raise DomainError(
            f"beta R = {model.beta_R:.3g} is not in the thin-penetration regime (> {THIN_PENETRATION})"
        )
    c = model.const
    er = c.m_e * model.beta * v0 * v0 / c.e
    return c.field_gaussian_to_si(er)


def ma_lhs(model: SphereModel, sample: FieldSample) -> float:
    """Magnitude of (1/2) grad v^2 + (e/mc) v x B, in cm/s^2.

    Its square is the radicand ``(1/4)(grad v^2)^2 + (e/mc) eps_ijk
    (grad_i v^2) v_j B_k + (e/mc)^2 [v^2 B^2 - (v.B)^2]``; the vector form
    keeps the near-cancellation of the first and last terms linear.
    """
    c = model.const
    k = c.e / (c.m_e * c.c)
    v = sample.v_phi
    grad_r = 2.0 * v * sample.dv_dr
    grad_t = 2.0 * v * sample.dv_dtheta / sample.r if sample.r > 0 else 0.0
    # v x B for v = v phi_hat, B = (B_r, B_theta, 0)
    comp_r = 0.5 * grad_r - k * v * sample.B_theta
    comp_t = 0.5 * grad_t + k * v * sample.B_r
    return math.hypot(comp_r, comp_t)


def ma_radicand(model: SphereModel, sample: FieldSample) -> float:
    """The expanded radicand of the MA inequality, for cross-checking ``ma_lhs``."""
    c = model.const
    k = c.e / (c.m_e * c.c)
    v = sample.v_phi
    grad_r = 2.0 * v * sample.dv_dr
    grad_t = 2.0 * v * sample.dv_dtheta / sample.r if sample.r > 0 else 0.0
    vxB_r, vxB_t = -v * sample.B_theta, v * sample.B_r
    cross = grad_r * vxB_r + grad_t * vxB_t
    return 0.25 * (grad_r**2 + grad_t**2) + k * cross + k * k * v * v * (
        sample.B_r**2 + sample.B_theta**2
    )


def ma_inequality_check(
    model: SphereModel, sample: FieldSample, delta_E: float, delta_v: float
) -> BoundResult:
    """Static MA inequality: |(1/2) grad v^2 - v x curl v| <= (2/hbar) dE dv."""
    c = model.const
    return BoundResult(
        "MA acceleration",
        ma_lhs(model, sample),
        2.0 * delta_E * delta_v / c.hbar,
    )


def surface_spreads(model: SphereModel, v0: float | None = None) -> tuple[float, float]:
    """dE = m v0^2 / 2 and dv = v0 for the surface-limited estimate."""
    if v0 is None:
        v0 = surface_velocity(model)
    return 0.5 * model.const.m_e * v0 * v0, v0


def ma_to_london_ratio(model: SphereModel, v0: float | None = None) -> float:
    """Field-free equatorial MA bound over the London surface field."""
    if v0 is None:
        v0 = surface_velocity(model)
    c = model.const
    ma = c.field_gaussian_to_si(er_bound_equator(v0, 0.0, const=c).bound)
    return ma / london_er_surface(model, v0)


@dataclass
class FieldMap:
    """Grid sweep over the boundary layer, row-major in (depth, theta)."""

    model: SphereModel
    samples: list[FieldSample]
    lhs: np.ndarray
    rhs: np.ndarray
    shape: tuple[int, int]

    @property
    def all_satisfied(self) -> bool:
        return bool(np.all(self.lhs <= self.rhs))

    def write_csv(self, path: str | Path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(FIELD_MAP_COLUMNS)
            for s, l, rr in zip(self.samples, self.lhs, self.rhs):
                w.writerow(
                    [fmt(v) for v in (s.r, s.theta, s.B_r, s.B_theta, s.j_phi, s.v_phi, l, rr)]
                )


def sweep_grid(model: SphereModel, n_depth: int = 100, n_theta: int = 100):
    """Radii log-spaced in depth over [1e-2, 20] penetration lengths, theta uniform."""
    lam = model.penetration_depth
    depth = np.geomspace(1e-2 * lam, min(20.0 * lam, model.R), n_depth)
    radii = model.R - depth
    thetas = np.linspace(0.0, math.pi, n_theta)
    return radii, thetas


def sweep(
    model: SphereModel,
    n_depth: int = 100,
    n_theta: int = 100,
    estimate: str = "statistical",
) -> FieldMap:
    """Evaluate fields and both sides of the MA inequality on the boundary-layer grid.

    ``estimate`` picks the spreads on the right-hand side: ``"statistical"``
    uses the Fermi-gas values, ``"surface"`` uses m v0^2 / 2 and v0.
    """
    if estimate == "statistical":
        dE, dv = fermi_estimates(model)
    elif estimate == "surface":
        dE, dv = surface_spreads(model)
    else:
        raise ValueError(f"unknown estimate {estimate!r}")
    radii, thetas = sweep_grid(model, n_depth, n_theta)
    rr, tt = np.meshgrid(radii, thetas, indexing="ij")
    B_r, B_t, j, dj_dr, dj_dth = _fields(model, rr.ravel(), tt.ravel())
    ne = model.n * model.const.e
    samples = [
        FieldSample(float(r), float(t), float(a), float(b), float(jj), float(jj / ne),
                    float(d1 / ne), float(d2 / ne))
        for r, t, a, b, jj, d1, d2 in zip(rr.ravel(), tt.ravel(), B_r, B_t, j, dj_dr, dj_dth)
    ]
    lhs = np.array([ma_lhs(model, s) for s in samples])
    rhs = np.full_like(lhs, 2.0 * dE * dv / model.const.hbar)
    return FieldMap(model, samples, lhs, rhs, (n_depth, n_theta))
