"""
Decay-width cap Gamma <= m_D/2 from maximal acceleration, and the mass
bounds it implies once a theoretical width formula is supplied.

Natural units (hbar = c = 1, GeV) throughout, except ``rms_acceleration``
which returns cm/s^2.
"""

from __future__ import annotations

import configparser
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Mapping

from maxaccel.physcore import (
    CODATA2018,
    BoundResult,
    DomainError,
    Particle,
    ParticleRegistry,
    PhysicalConstants,
    default_registry,
    units,
)
from maxaccel.rootfind import bisect_secant

__all__ = [
    "FORMULAS",
    "MassWindow",
    "ProcessSpec",
    "default_processes",
    "higgs_ee_check",
    "higgs_ee_width",
    "higgs_zz_asymptote",
    "higgs_zz_width",
    "higgs_zz_window",
    "jpsi_mass_lower",
    "load_processes",
    "mass_bound",
    "rms_acceleration",
    "theoretical_width",
    "w_mass_bound",
    "width_cap",
    "z_mass_bound",
]

SQRT2 = math.sqrt(2.0)
HIGGS_SEARCH_MAX = 1.0e4  # GeV


@dataclass(frozen=True)
class WidthFormula:
    """Gamma(m) = coefficient * m**power, with the coefficient built from factors."""

    power: float
    coefficient: Callable[[Mapping[str, float], PhysicalConstants], float] | None
    description: str

    def __call__(self, m, factors, const):
        return self.coefficient(factors, const) * m**self.power


FORMULAS: dict[str, WidthFormula] = {
    "z_ee": WidthFormula(
        3, lambda p, c: c.G_F / (12.0 * math.pi * SQRT2), "G_F m^3 / (12 pi sqrt2)"
    ),
    "w_hadronic": WidthFormula(
        3,
        lambda p, c: c.G_F * p["hadronic"] / (6.0 * SQRT2 * math.pi),
        "G_F h m^3 / (6 sqrt2 pi)",
    ),
    "jpsi_ee": WidthFormula(
        -1,
        lambda p, c: 16.0 * math.pi * c.alpha_em**2 * p["leptonic"],
        "16 pi alpha^2 k / m",
    ),
}


@dataclass(frozen=True)
class ProcessSpec:
    """A + B -> D with A, B of equal mass; D is the parent."""

    label: str
    parent: Particle
    constituent: Particle
    channel: str | None = None
    formula: str | None = None
    factors: Mapping[str, float] = field(default_factory=dict)
    width: float | None = None
    quoted_bound: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "factors", dict(self.factors))
        if self.parent.mass < 2.0 * self.constituent.mass:
            raise DomainError(f"{self.label}: parent lighter than two constituents")
        if self.formula is not None and self.formula not in FORMULAS:
            raise ValueError(f"{self.label}: unknown width formula {self.formula!r}")

    @property
    def constituent_mass(self) -> float:
        return self.constituent.mass

    @property
    def measured_width(self) -> float | None:
        if self.width is not None:
            return self.width
        if self.channel is None:
            return None
        return self.parent.widths.get(self.channel)

    @property
    def gamma(self) -> float:
        """Lorentz factor of each constituent in the D rest frame, m_D / 2m."""
        return self.parent.mass / (2.0 * self.constituent.mass)


@dataclass(frozen=True)
class MassWindow:
    lower: float | None
    upper: float | None

    def __post_init__(self):
        if self.lower is not None and self.upper is not None and self.lower > self.upper:
            raise ValueError(f"empty window [{self.lower}, {self.upper}]")

    def __contains__(self, m: float) -> bool:
        lo = self.lower if self.lower is not None else -math.inf
        hi = self.upper if self.upper is not None else math.inf
        return lo <= m <= hi


# process table -------------------------------------------------------------

_DEFAULT_PROCESSES = """\
[ee->Z0]
parent = Z0
constituent = electron
channel = ee
formula = z_ee
quoted_bound = 1512

[W->enu]
parent = W
constituent = electron
channel = enu
formula = w_hadronic
factor.hadronic = 4.15
quoted_bound = 525

[ee->J/psi]
parent = J/psi
constituent = electron
channel = ee
formula = jpsi_ee
factor.leptonic = 0.018
quoted_bound = 0.046
"""


def load_processes(
    text: str, registry: ParticleRegistry | None = None
) -> dict[str, ProcessSpec]:
    """Parse an INI process table; particle names resolve against ``registry``."""
    registry = registry if registry is not None else default_registry()
    parser = configparser.ConfigParser(interpolation=None)
    parser.optionxform = str
    parser.read_string(text)
    out = {}
    for label in parser.sections():
        sec = parser[label]
        factors = {k[len("factor."):]: float(v) for k, v in sec.items() if k.startswith("factor.")}
        out[label] = ProcessSpec(
            label,
            registry[sec["parent"]],
            registry[sec.get("constituent", "electron")],
            channel=sec.get("channel"),
            formula=sec.get("formula"),
            factors=factors,
            width=float(sec["width"]) if "width" in sec else None,
            quoted_bound=float(sec["quoted_bound"]) if "quoted_bound" in sec else None,
        )
    return out


def load_process_file(path: str | Path, registry: ParticleRegistry | None = None):
    return load_processes(Path(path).read_text(), registry)


def default_processes(registry: ParticleRegistry | None = None) -> dict[str, ProcessSpec]:
    return load_processes(_DEFAULT_PROCESSES, registry)


# operations ---------------------------------------------------------------


def width_cap(process: ProcessSpec) -> BoundResult:
    """Gamma(AB) <= m_D / 2. Without a measured width only the cap is reported."""
    return BoundResult(
        f"width cap {process.label}",
        process.measured_width,
        0.5 * process.parent.mass,
        {"gamma": process.gamma},
    )


@units(returns="cm/s^2")
def rms_acceleration(process: ProcessSpec, const: PhysicalConstants = CODATA2018) -> float:
    """a_r = c / (gamma dt) with dt = hbar / Gamma, in cm/s^2."""
    width = process.measured_width
    if width is None:
        raise DomainError(f"{process.label} has no measured width")
    return const.c * const.gev_to_inverse_seconds(width) / process.gamma


def theoretical_width(
    process: ProcessSpec, m: float | None = None, const: PhysicalConstants = CODATA2018
) -> float:
    if process.formula is None:
        raise DomainError(f"{process.label} has no theoretical width formula")
    m = process.parent.mass if m is None else m
    return FORMULAS[process.formula](m, process.factors, const)


def power_law_mass_bound(coefficient: float, power: float) -> float:
    """Mass where coefficient * m**power = m / 2."""
    if power == 1:
        raise DomainError("a width linear in m gives no mass bound")
    return (2.0 * coefficient) ** (-1.0 / (power - 1.0))


def mass_bound(process: ProcessSpec, const: PhysicalConstants = CODATA2018) -> BoundResult:
    """Mass bound implied by the width cap applied to the process's width formula.

    Steeper than linear in m gives an upper bound, shallower a lower bound.
    The value slot holds the measured parent mass.
    """
    if process.formula is None:
        raise DomainError(f"{process.label} has no theoretical width formula")
    form = FORMULAS[process.formula]
    m_star = power_law_mass_bound(form.coefficient(process.factors, const), form.power)
    m = process.parent.mass
    if form.power > 1:
        return BoundResult(f"{process.parent.name} mass upper bound", m, m_star)
    # lower bound: satisfied when m >= m_star, so flip the roles
    return BoundResult(f"{process.parent.name} mass lower bound", m_star, m, {"lower_bound": m_star})


def _process(label: str, process: ProcessSpec | None) -> ProcessSpec:
    return process if process is not None else default_processes()[label]


@units(returns="GeV")
def z_mass_bound(const: PhysicalConstants = CODATA2018, process: ProcessSpec | None = None) -> float:
    """(6 pi sqrt2 / G_F)^(1/2)."""
    return mass_bound(_process("ee->Z0", process), const).bound


@units(returns="GeV")
def w_mass_bound(const: PhysicalConstants = CODATA2018, process: ProcessSpec | None = None) -> float:
    """(3 sqrt2 pi / (h G_F))^(1/2) with hadronic factor h (4.15 by default)."""
    return mass_bound(_process("W->enu", process), const).bound


@units(returns="GeV")
def jpsi_mass_lower(const: PhysicalConstants = CODATA2018, process: ProcessSpec | None = None) -> float:
    """(32 pi alpha^2 k)^(1/2) with leptonic factor k (0.018 by default)."""
    return mass_bound(_process("ee->J/psi", process), const).detail["lower_bound"]


def _m_e(registry):
    return (registry or default_registry())["electron"].mass


def _m_Z(registry):
    return (registry or default_registry())["Z0"].mass


def higgs_ee_width(
    m_H: float, const: PhysicalConstants = CODATA2018, registry: ParticleRegistry | None = None
) -> float:
    """G_F m_e^2 m_H / (4 sqrt2 pi) (1 - 4 m_e^2 / m_H^2)^(3/2); zero below threshold."""
    m_e = _m_e(registry)
    phase = 1.0 - 4.0 * m_e**2 / m_H**2
    if phase <= 0.0:
        return 0.0
    return const.G_F * m_e**2 * m_H / (4.0 * SQRT2 * math.pi) * phase**1.5


@units(m_H="GeV", returns="GeV")
def higgs_ee_check(
    m_H: float, const: PhysicalConstants = CODATA2018, registry: ParticleRegistry | None = None
) -> BoundResult:
    if not m_H > 0:
        raise DomainError(f"Higgs mass must be positive, got {m_H!r}")
    width = higgs_ee_width(m_H, const, registry)
    closed = m_H <= 2.0 * _m_e(registry)
    return BoundResult("H->ee width cap", width, 0.5 * m_H, {"channel_closed": float(closed)})


def higgs_zz_width(
    m_H: float, const: PhysicalConstants = CODATA2018, registry: ParticleRegistry | None = None
) -> float:
    """G_F m_Z^2 m_H / (16 pi sqrt2 x) (1 - x)^(1/2) (3x^2 - 4x + 4), x = 4 m_Z^2 / m_H^2."""
    m_Z = _m_Z(registry)
    x = 4.0 * m_Z**2 / m_H**2
    if x >= 1.0:
        return 0.0
    return (
        const.G_F * m_Z**2 * m_H / (16.0 * math.pi * SQRT2 * x)
        * math.sqrt(1.0 - x) * (3.0 * x * x - 4.0 * x + 4.0)
    )


@units(returns="GeV")
def higgs_zz_asymptote(const: PhysicalConstants = CODATA2018) -> float:
    """Heavy-Higgs limit x -> 0 of the ZZ bound, (8 pi sqrt2 / G_F)^(1/2)."""
    return math.sqrt(8.0 * math.pi * SQRT2 / const.G_F)


def higgs_zz_window(
    const: PhysicalConstants = CODATA2018,
    registry: ParticleRegistry | None = None,
    rtol: float = 1e-10,
) -> MassWindow:
    """[2 m_Z, m*] where Gamma(H->ZZ; m*) = m*/2, found on (2 m_Z, 1e4 GeV]."""
    m_Z = _m_Z(registry)
    lo = 2.0 * m_Z * (1.0 + 1e-9)
    upper = bisect_secant(
        lambda m: higgs_zz_width(m, const, registry) - 0.5 * m, lo, HIGGS_SEARCH_MAX, rtol=rtol
    )
    return MassWindow(2.0 * m_Z, upper)
