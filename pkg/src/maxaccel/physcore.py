"""
Physical constants, unit conversions and the particle registry.

Everything internal is CGS-Gaussian. SI fields (N/C) and natural units (GeV)
appear only through the conversion helpers below.

Constants
---------
CODATA2018 : PhysicalConstants
    CODATA 2018 values for c, h, e, the nucleon and electron masses, G, k_B,
    plus the Fermi constant, the fine-structure constant and the IAU nominal
    solar mass.
"""

from __future__ import annotations

import configparser
import dataclasses
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Mapping

__all__ = [
    "CODATA2018",
    "BoundResult",
    "DomainError",
    "Particle",
    "ParticleRegistry",
    "PhysicalConstants",
    "compton_wavelength",
    "default_registry",
    "maximal_acceleration",
    "thermal_wavelength",
    "units",
]


class DomainError(ValueError):
    """Input outside the domain where a formula is defined."""


def units(**tags: str) -> Callable:
    """Attach unit tags to a public operation.

    Keyword names are argument names; ``returns`` tags the result. The tags
    live in ``func.units`` and are checked by the dimensional audit tests.
    """

    def deco(func):
        func.units = dict(tags)
        return func

    return deco


def _require_positive(name: str, value: float) -> None:
    if not value > 0 or not math.isfinite(value):
        raise DomainError(f"{name} must be positive and finite, got {value!r}")


@dataclass(frozen=True)
class PhysicalConstants:
    """CGS-Gaussian base constants and the natural/SI conversion factors.

    ``hbar`` and ``mu_B`` are derived from ``h``, ``e``, ``m_e`` and ``c`` so
    that overriding a base constant keeps them consistent.
    """

    c: float = 2.99792458e10  # cm/s
    h: float = 6.62607015e-27  # erg s
    e: float = 4.803204712570263e-10  # esu
    m_e: float = 9.1093837015e-28  # g
    m_p: float = 1.67262192369e-24  # g
    m_n: float = 1.67492749804e-24  # g
    G: float = 6.67430e-8  # cm^3 g^-1 s^-2
    k_B: float = 1.380649e-16  # erg/K
    G_F: float = 1.1663787e-5  # GeV^-2
    alpha_em: float = 7.2973525693e-3
    M_sun: float = 1.98847e33  # g
    erg_per_GeV: float = 1.602176634e-3
    statvoltcm_per_VoltPerMeter: float = 1.0e6 / 2.99792458e10

    def __post_init__(self):
        for f in dataclasses.fields(self):
            value = getattr(self, f.name)
            if not (isinstance(value, (int, float)) and value > 0 and math.isfinite(value)):
                raise DomainError(f"constant {f.name} must be positive, got {value!r}")

    @property
    def hbar(self) -> float:
        return self.h / (2.0 * math.pi)

    @property
    def mu_B(self) -> float:
        """Bohr magneton e*hbar/(2 m_e c), erg/G."""
        return self.e * self.hbar / (2.0 * self.m_e * self.c)

    def replace(self, **overrides: float) -> "PhysicalConstants":
        return dataclasses.replace(self, **{k: float(v) for k, v in overrides.items()})

    # conversions ---------------------------------------------------------

    def gev_to_erg(self, x: float) -> float:
        return x * self.erg_per_GeV

    def erg_to_gev(self, x: float) -> float:
        return x / self.erg_per_GeV

    def gev_to_grams(self, x: float) -> float:
        return x * self.erg_per_GeV / self.c**2

    def grams_to_gev(self, x: float) -> float:
        return x * self.c**2 / self.erg_per_GeV

    def gev_to_inverse_seconds(self, x: float) -> float:
        """Energy (GeV) to angular frequency E/hbar (s^-1)."""
        return x * self.erg_per_GeV / self.hbar

    def field_si_to_gaussian(self, x: float) -> float:
        """Electric field N/C (= V/m) to statvolt/cm."""
        return x * self.statvoltcm_per_VoltPerMeter

    def field_gaussian_to_si(self, x: float) -> float:
        """Electric field statvolt/cm to N/C."""
        return x / self.statvoltcm_per_VoltPerMeter

    def solar_to_grams(self, x: float) -> float:
        return x * self.M_sun

    def grams_to_solar(self, x: float) -> float:
        return x / self.M_sun


CODATA2018 = PhysicalConstants()


@dataclass(frozen=True)
class BoundResult:
    """A computed quantity checked against a computed limit.

    ``satisfied`` holds exactly when ``margin = bound - value`` is
    non-negative. When ``value`` is unknown (no measurement available) the
    value, margin and flag are all ``None`` and only the bound is reported.
    """

    kind: str
    value: float | None
    bound: float
    detail: Mapping[str, float] = field(default_factory=dict)

    @property
    def margin(self) -> float | None:
        if self.value is None:
            return None
        return self.bound - self.value

    @property
    def satisfied(self) -> bool | None:
        if self.value is None:
            return None
        return self.margin >= 0


# operations ---------------------------------------------------------------


@units(mass="g", returns="cm/s^2")
def maximal_acceleration(mass: float, const: PhysicalConstants = CODATA2018) -> float:
    """Maximal proper acceleration 2 m c^3 / hbar of a particle of ``mass``."""
    _require_positive("mass", mass)
    return 2.0 * mass * const.c**3 / const.hbar


@units(mass="g", returns="cm")
def compton_wavelength(mass: float, const: PhysicalConstants = CODATA2018) -> float:
    """Compton wavelength h / (m c) (not reduced)."""
    _require_positive("mass", mass)
    return const.h / (mass * const.c)


@units(mass="g", T="K", returns="cm")
def thermal_wavelength(mass: float, T: float, const: PhysicalConstants = CODATA2018) -> float:
    """Thermal de Broglie wavelength sqrt(2 pi hbar^2 / (m k_B T))."""
    _require_positive("mass", mass)
    _require_positive("T", T)
    return math.sqrt(2.0 * math.pi * const.hbar**2 / (mass * const.k_B * T))


# particle registry --------------------------------------------------------


@dataclass(frozen=True)
class Particle:
    """A particle with its mass in GeV and measured partial widths in GeV."""

    name: str
    mass: float
    charge: float = 0.0
    widths: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self):
        _require_positive(f"mass of {self.name}", self.mass)
        object.__setattr__(self, "widths", dict(self.widths))

    @property
    def mass_g(self) -> float:
        return CODATA2018.gev_to_grams(self.mass)

    def mass_grams(self, const: PhysicalConstants = CODATA2018) -> float:
        return const.gev_to_grams(self.mass)


# measured masses and widths quoted alongside the decay-width bounds
_DEFAULT_PARTICLES = """\
[electron]
mass_GeV = 0.00051099895
charge = -1

[proton]
mass_GeV = 0.93827208816
charge = 1

[neutron]
mass_GeV = 0.93956542052
charge = 0

[Z0]
mass_GeV = 91.188
charge = 0
width.ee = 0.08391

[W]
mass_GeV = 80.419
charge = 1
width.enu = 0.22599

[J/psi]
mass_GeV = 3.09687
charge = 0
width.ee = 5.2e-6
"""


class ParticleRegistry(Mapping[str, Particle]):
    """Read-only name -> Particle map.

    Files use INI records, one section per particle::

        [Z0]
        mass_GeV = 91.188
        charge = 0
        width.ee = 0.08391
    """

    def __init__(self, particles: Iterable[Particle]):
        self._particles = {p.name: p for p in particles}

    def __getitem__(self, name: str) -> Particle:
        try:
            return self._particles[name]
        except KeyError:
            raise KeyError(f"unknown particle {name!r}; known: {sorted(self._particles)}") from None

    def __iter__(self):
        return iter(self._particles)

    def __len__(self):
        return len(self._particles)

    def merged(self, other: "ParticleRegistry") -> "ParticleRegistry":
        return ParticleRegistry([*self.values(), *other.values()])

    @classmethod
    def from_string(cls, text: str) -> "ParticleRegistry":
        parser = configparser.ConfigParser(interpolation=None)
        parser.optionxform = str
        parser.read_string(text)
        particles = []
        for name in parser.sections():
            sec = parser[name]
            if "mass_GeV" not in sec:
                raise ValueError(f"particle record {name!r} has no mass_GeV")
            widths = {k[len("width."):]: float(v) for k, v in sec.items() if k.startswith("width.")}
            particles.append(
                Particle(name, float(sec["mass_GeV"]), float(sec.get("charge", "0")), widths)
            )
        return cls(particles)

    @classmethod
    def from_file(cls, path: str | Path) -> "ParticleRegistry":
        return cls.from_string(Path(path).read_text())

    def to_string(self) -> str:
        lines = []
        for p in self.values():
            lines.append(f"[{p.name}]")
            lines.append(f"mass_GeV = {p.mass!r}")
            lines.append(f"charge = {p.charge!r}")
            lines.extend(f"width.{k} = {v!r}" for k, v in p.widths.items())
            lines.append("")
        return "\n".join(lines)


def default_registry() -> ParticleRegistry:
    return ParticleRegistry.from_string(_DEFAULT_PARTICLES)
