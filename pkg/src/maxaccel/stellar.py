"""
Degenerate Fermi gas with a maximal-acceleration core, and the modified
Newtonian equilibria of white dwarfs and neutron stars.

Reduced variables
-----------------
M~ = 9 pi M / (8 m_p) and R~ = 2 pi R / lambda, lambda = h / (m c) of the
pressure-providing fermion. K = m^4 c^5 / (12 pi^2 hbar^3) and
K' = (4 alpha G pi / lambda^4)(64 m_p^2 / 81), so that
M~0 = (K / K')^(3/2) = (27 pi hbar c / (64 alpha G m_p^2))^(3/2) does not
depend on the fermion mass. Masses are quoted as multiples of
M0 = (8 m_p / 9 pi) M~0, which is close to a solar mass.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from scipy import integrate

from maxaccel.physcore import (
    CODATA2018,
    BoundResult,
    DomainError,
    PhysicalConstants,
    compton_wavelength,
    units,
)

__all__ = [
    "EquilibriumSolution",
    "FermiGasState",
    "Regime",
    "RegimeWarning",
    "StarModel",
    "compatibility_density",
    "er_equilibrium",
    "er_radicand",
    "er_residual",
    "fermi_integral",
    "fermi_integral_quad",
    "ground_state_energy",
    "ma_occupancy",
    "ma_pressure",
    "ma_radius",
    "mean_acceleration",
    "mean_acceleration_expansion",
    "negligibility_density",
    "neutron_star_occupancy",
    "nr_equilibrium",
    "nr_mr_relation",
    "nr_residual",
    "occupancy_coefficient",
    "occupancy_density",
    "occupancy_at_nr_radius",
]


class Regime(str, enum.Enum):
    NR = "NR"
    ER = "ER"
    EXACT = "exact"


class RegimeWarning(UserWarning):
    """Fermi momentum outside the comfortable range of the declared regime."""


# soft limits on x_F for the two asymptotic regimes
NR_SOFT_MAX = 0.3
ER_SOFT_MIN = 3.0

_SERIES_CUTOFF = 0.05


# Fermi integral --------------------------------------------------------------


def _fermi_exact(x: float) -> float:
    if x < _SERIES_CUTOFF:
        # sum_k binom(1/2, k) x^(2k+3) / (2k+3); the closed form cancels here
        acc, coeff, x2, power = 0.0, 1.0, x * x, x**3
        for k in range(12):
            acc += coeff * power / (2 * k + 3)
            coeff *= (0.5 - k) / (k + 1)
            power *= x2
        return acc
    return (x * (1.0 + 2.0 * x * x) * math.sqrt(1.0 + x * x) - math.asinh(x)) / 8.0


@units(x_F="1", returns="1")
def fermi_integral(x_F: float, mode: Regime | str = Regime.EXACT) -> float:
    """f(x_F) = integral_0^x_F x^2 sqrt(1 + x^2) dx.

    ``exact`` uses the antiderivative (x(1+2x^2)sqrt(1+x^2) - asinh x)/8;
    ``NR`` and ``ER`` the two-term expansions x^3/3 (1 + 3x^2/10) and
    x^4/4 (1 + 1/x^2).
    """
    if x_F < 0 or not math.isfinite(x_F):
        raise DomainError(f"x_F must be non-negative, got {x_F!r}")
    mode = Regime(mode)
    if mode is Regime.EXACT:
        return _fermi_exact(x_F)
    if mode is Regime.NR:
        return x_F**3 / 3.0 * (1.0 + 0.3 * x_F**2)
    if x_F == 0:
        return 0.0
    return x_F**4 / 4.0 * (1.0 + 1.0 / x_F**2)


def fermi_integral_quad(x_F: float) -> float:
    """Adaptive-quadrature value of the Fermi integral, kept as an oracle."""
    if x_F < 0:
        raise DomainError(f"x_F must be non-negative, got {x_F!r}")
    val, _ = integrate.quad(
        lambda x: x * x * math.sqrt(1.0 + x * x), 0.0, x_F, epsabs=1e-12, epsrel=1e-13, limit=200
    )
    return val


# gas state -------------------------------------------------------------------


@dataclass(frozen=True)
class FermiGasState:
    """Zero-temperature gas of spin-1/2 fermions at ``number_density``."""

    number_density: float
    fermion_mass: float
    regime: Regime = Regime.EXACT
    const: PhysicalConstants = field(default=CODATA2018, repr=False, compare=False)

    def __post_init__(self):
        if not self.number_density >= 0:
            raise DomainError(f"number density must be non-negative, got {self.number_density!r}")
        if not self.fermion_mass > 0:
            raise DomainError(f"fermion mass must be positive, got {self.fermion_mass!r}")
        object.__setattr__(self, "regime", Regime(self.regime))
        x = self.x_F
        if self.regime is Regime.NR and x > NR_SOFT_MAX:
            warnings.warn(f"NR regime with x_F = {x:.3g}", RegimeWarning, stacklevel=3)
        elif self.regime is Regime.ER and x < ER_SOFT_MIN:
            warnings.warn(f"ER regime with x_F = {x:.3g}", RegimeWarning, stacklevel=3)

    @property
    def p_F(self) -> float:
        return (3.0 * math.pi**2 * self.number_density) ** (1.0 / 3.0) * self.const.hbar

    @property
    def k_F(self) -> float:
        return self.p_F / self.const.hbar

    @property
    def x_F(self) -> float:
        return self.p_F / (self.fermion_mass * self.const.c)

    @property
    def compton_wavelength(self) -> float:
        return compton_wavelength(self.fermion_mass, self.const)

    def with_regime(self, regime: Regime | str) -> "FermiGasState":
        return FermiGasState(self.number_density, self.fermion_mass, Regime(regime), self.const)


@units(V="cm^3", returns="erg")
def ground_state_energy(state: FermiGasState, V: float) -> float:
    """E0 = (m^4 c^5 / (pi^2 hbar^3)) V f(x_F)."""
    if not V > 0:
        raise DomainError(f"volume must be positive, got {V!r}")
    c = state.const
    m = state.fermion_mass
    return m**4 * c.c**5 / (math.pi**2 * c.hbar**3) * V * fermi_integral(state.x_F)


@units(r="cm", returns="cm/s^2")
def mean_acceleration(state: FermiGasState, r: float) -> float:
    """Average acceleration per fermion at radius r, 9 c^2 f(x_F) / (x_F^3 r)."""
    if not r > 0:
        raise DomainError(f"radius must be positive, got {r!r}")
    x = state.x_F
    if not x > 0:
        raise DomainError("mean acceleration needs a non-empty gas")
    return 9.0 * state.const.c**2 * fermi_integral(x) / (x**3 * r)


def mean_acceleration_expansion(state: FermiGasState, r: float, regime: Regime | str) -> float:
    """Second-order forms 3c^2/r (1 + 3x^2/10) and 9c^2/(4r) (x + 1/x)."""
    if not r > 0:
        raise DomainError(f"radius must be positive, got {r!r}")
    x = state.x_F
    c2 = state.const.c**2
    if Regime(regime) is Regime.NR:
        return 3.0 * c2 / r * (1.0 + 0.3 * x * x)
    if Regime(regime) is Regime.ER:
        return 9.0 * c2 / (4.0 * r) * (x + 1.0 / x)
    raise ValueError("expansion needs regime NR or ER")


@units(returns="cm")
def ma_radius(state: FermiGasState) -> float:
    """Smallest radius where the mean acceleration stays below MA.

    NR: 3 lambda / (4 pi). ER: (9 / 16 pi) lambda x_F.
    """
    lam = state.compton_wavelength
    if state.regime is Regime.NR:
        return 3.0 * lam / (4.0 * math.pi)
    if state.regime is Regime.ER:
        return 9.0 / (16.0 * math.pi) * lam * state.x_F
    raise DomainError("the MA radius is defined only in the NR and ER limits")


@units(r0="cm", returns="1")
def ma_occupancy(state: FermiGasState, r0: float) -> float:
    """Q(r0) = (4 / 9 pi)(r0 p_F / hbar)^3, ground-state fermions inside r0."""
    if not r0 > 0:
        raise DomainError(f"r0 must be positive, got {r0!r}")
    return 4.0 / (9.0 * math.pi) * (r0 * state.k_F) ** 3


def occupancy_at_nr_radius(state: FermiGasState) -> float:
    """Q at r0 = 3 lambda / 4 pi, i.e. (9 lambda^3 / 16 pi^2) N/V."""
    lam = state.compton_wavelength
    return 9.0 * lam**3 / (16.0 * math.pi**2) * state.number_density


@units(fermion_mass="g", returns="cm^-3")
def occupancy_density(
    fermion_mass: float,
    regime: Regime | str,
    q: float = 1.0,
    const: PhysicalConstants = CODATA2018,
) -> float:
    """Number density at which Q(r0) = q with the regime's own r0.

    NR: r0 is fixed, so N/V = 3 q / (4 pi r0^3). ER: r0 = C (N/V)^(1/3), so
    Q = (4 pi / 3) C^3 (N/V)^2.
    """
    lam = compton_wavelength(fermion_mass, const)
    regime = Regime(regime)
    if regime is Regime.NR:
        r0 = 3.0 * lam / (4.0 * math.pi)
        return 3.0 * q / (4.0 * math.pi * r0**3)
    if regime is Regime.ER:
        cr = 9.0 / (16.0 * math.pi) * lam * const.hbar * (3.0 * math.pi**2) ** (1.0 / 3.0) / (
            fermion_mass * const.c
        )
        return math.sqrt(3.0 * q / (4.0 * math.pi * cr**3))
    raise DomainError("occupancy density needs regime NR or ER")


@units(r0="cm", returns="dyn/cm^2")
def ma_pressure(state: FermiGasState, r0: float) -> float:
    """P_MA = (2 m^2 c^3 / hbar) Q(r0) / (4 pi r0^2)."""
    c = state.const
    m = state.fermion_mass
    q = ma_occupancy(state, r0)
    return 2.0 * m * m * c.c**3 / c.hbar * q / (4.0 * math.pi * r0 * r0)


# stars -----------------------------------------------------------------------


@dataclass(frozen=True)
class StarModel:
    """A star of ``mass`` grams supported by degenerate ``fermion``s.

    ``nucleon_mass`` times ``nucleons_per_fermion`` is the mass carried per
    pressure-providing fermion: 2 m_p for a white dwarf, m_n for a neutron
    star.
    """

    mass: float
    fermion_mass: float
    nucleon_mass: float
    nucleons_per_fermion: float = 2.0
    alpha: float = 1.0
    fermion: str = "electron"
    const: PhysicalConstants = field(default=CODATA2018, repr=False, compare=False)

    def __post_init__(self):
        for name in ("mass", "fermion_mass", "nucleon_mass", "nucleons_per_fermion", "alpha"):
            if not getattr(self, name) > 0:
                raise DomainError(f"star parameter {name} must be positive")

    @classmethod
    def white_dwarf(cls, mass_solar: float, alpha: float = 1.0, const=CODATA2018) -> "StarModel":
        return cls(const.solar_to_grams(mass_solar), const.m_e, const.m_p, 2.0, alpha, "electron", const)

    @classmethod
    def neutron_star(cls, mass_solar: float, alpha: float = 1.0, const=CODATA2018) -> "StarModel":
        return cls(const.solar_to_grams(mass_solar), const.m_n, const.m_n, 1.0, alpha, "neutron", const)

    @classmethod
    def of(cls, fermion: str, mass_solar: float, alpha: float = 1.0, const=CODATA2018):
        if fermion == "electron":
            return cls.white_dwarf(mass_solar, alpha, const)
        if fermion == "neutron":
            return cls.neutron_star(mass_solar, alpha, const)
        raise ValueError(f"unknown fermion {fermion!r}")

    def with_mass(self, mass: float) -> "StarModel":
        return StarModel(mass, self.fermion_mass, self.nucleon_mass, self.nucleons_per_fermion,
                         self.alpha, self.fermion, self.const)

    @property
    def wavelength(self) -> float:
        return compton_wavelength(self.fermion_mass, self.const)

    @property
    def K(self) -> float:
        c = self.const
        return self.fermion_mass**4 * c.c**5 / (12.0 * math.pi**2 * c.hbar**3)

    @property
    def K_prime(self) -> float:
        c = self.const
        return 4.0 * self.alpha * c.G * math.pi / self.wavelength**4 * 64.0 * c.m_p**2 / 81.0

    @property
    def reduced_mass(self) -> float:
        return 9.0 * math.pi * self.mass / (8.0 * self.const.m_p)

    @property
    def reference_reduced_mass(self) -> float:
        return (self.K / self.K_prime) ** 1.5

    @property
    def reference_mass(self) -> float:
        """M0 in grams."""
        return 8.0 * self.const.m_p / (9.0 * math.pi) * self.reference_reduced_mass

    @property
    def mass_in_m0(self) -> float:
        return self.mass / self.reference_mass

    def radius_cm(self, r_tilde: float) -> float:
        return self.wavelength * r_tilde / (2.0 * math.pi)

    def density(self, radius_cm: float) -> float:
        """Fermion number density 3 M / (4 pi R^3 m_per_fermion)."""
        per_fermion = self.nucleons_per_fermion * self.nucleon_mass
        return 3.0 * self.mass / (4.0 * math.pi * radius_cm**3 * per_fermion)

    def gas(self, density: float, regime: Regime | str = Regime.EXACT) -> FermiGasState:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RegimeWarning)
            return FermiGasState(density, self.fermion_mass, Regime(regime), self.const)


NR_THRESHOLD_IN_M0 = (64.0 / 5.0) ** 0.75
ER_CAP_IN_M0 = 8.0


@dataclass(frozen=True)
class EquilibriumSolution:
    """Radii of one equilibrium; NR has branches ("-", "+"), ER a single one."""

    regime: Regime
    real: bool
    branches: tuple[str, ...]
    radii_tilde: tuple[float, ...]
    radii_cm: tuple[float, ...]
    densities: tuple[float, ...]
    q_ma: tuple[float, ...]
    threshold_mass: float  # g; lower limit (NR) or upper cap (ER)
    threshold_in_m0: float
    mass_in_m0: float


def _solution(star: StarModel, regime, real, branches, radii, threshold_in_m0):
    radii_cm = tuple(star.radius_cm(r) for r in radii)
    dens = tuple(star.density(r) if r > 0 else math.inf for r in radii_cm)
    lam = star.wavelength
    q = tuple(9.0 * lam**3 / (16.0 * math.pi**2) * n for n in dens)
    return EquilibriumSolution(
        regime, real, branches, tuple(radii), radii_cm, dens, q,
        threshold_in_m0 * star.reference_mass, threshold_in_m0, star.mass_in_m0,
    )


def nr_equilibrium(star: StarModel) -> EquilibriumSolution:
    """Roots of the NR balance, R~ = (M~ M~0^(-2/3) / 8)(1 -/+ sqrt(1 - (64/5)(M~0/M~)^(4/3))).

    Real only for M >= (64/5)^(3/4) M0; otherwise flagged with no branches.
    """
    Mt = star.reduced_mass
    M0t = star.reference_reduced_mass
    disc = 1.0 - 12.8 * (M0t / Mt) ** (4.0 / 3.0)
    if disc < 0:
        return _solution(star, Regime.NR, False, (), (), NR_THRESHOLD_IN_M0)
    scale = Mt * M0t ** (-2.0 / 3.0) / 8.0
    root = math.sqrt(disc)
    return _solution(
        star, Regime.NR, True, ("-", "+"), (scale * (1.0 - root), scale * (1.0 + root)),
        NR_THRESHOLD_IN_M0,
    )


def nr_residual(star: StarModel, r_tilde: float) -> float:
    """Relative imbalance of the NR hydrostatic equation at R~.

    (8 pi m c^2 / 3 lambda^3) M~/R~^3 + (4K/5) M~^(5/3)/R~^5 = K' M~^2/R~^4.
    """
    c = star.const
    Mt = star.reduced_mass
    ma = 8.0 * math.pi * star.fermion_mass * c.c**2 / (3.0 * star.wavelength**3) * Mt / r_tilde**3
    fermi = 0.8 * star.K * Mt ** (5.0 / 3.0) / r_tilde**5
    grav = star.K_prime * Mt**2 / r_tilde**4
    return (ma + fermi - grav) / grav


def nr_mr_relation(star: StarModel, r_tilde: float) -> BoundResult:
    """MA-corrected NR mass-radius relation and whether the MA term is negligible.

    M~^(1/3) R~ = (4/5) M~0^(2/3) (1 + (10 pi m c^2 / 3 lambda^3 K) R~^2 / M~^(2/3));
    the coefficient is exactly 5. The correction is negligible while
    R~ / M~^(1/3) < 1/sqrt5, which is the tested bound.
    """
    if not r_tilde > 0:
        raise DomainError("R~ must be positive")
    c = star.const
    Mt = star.reduced_mass
    M0t = star.reference_reduced_mass
    coeff = 10.0 * math.pi * star.fermion_mass * c.c**2 / (3.0 * star.wavelength**3 * star.K)
    correction = coeff * r_tilde**2 / Mt ** (2.0 / 3.0)
    lhs = Mt ** (1.0 / 3.0) * r_tilde
    classical = 0.8 * M0t ** (2.0 / 3.0)
    return BoundResult(
        "MA term negligible in NR M-R relation",
        r_tilde / Mt ** (1.0 / 3.0),
        1.0 / math.sqrt(5.0),
        {
            "lhs": lhs,
            "rhs": classical * (1.0 + correction),
            "rhs_classical": classical,
            "correction": correction,
            "coefficient": coeff,
        },
    )


@units(returns="cm^-3")
def negligibility_density(star: StarModel) -> float:
    """Density above which R~/M~^(1/3) < 1/sqrt5: 8 pi 5^(3/2) / (3 lambda^3).

    Written for the white-dwarf composition; other compositions scale by the
    mass per fermion relative to 2 m_p.
    """
    comp = 2.0 * star.const.m_p / (star.nucleons_per_fermion * star.nucleon_mass)
    return 8.0 * math.pi * 5.0**1.5 / (3.0 * star.wavelength**3) * comp


def compatibility_density(star: StarModel) -> float:
    """Density above which the classical M-R relation and negligible MA term agree.

    Returns the coefficient of M/M0: (pi 5^(9/4) / (3 lambda^3)) for a white
    dwarf, scaled by 2 m_p / (mass per fermion) otherwise.
    """
    comp = 2.0 * star.const.m_p / (star.nucleons_per_fermion * star.nucleon_mass)
    return math.pi * 5.0**2.25 / (3.0 * star.wavelength**3) * comp


def occupancy_coefficient(star: StarModel) -> float:
    """Q(r0) per unit M/M0 at the compatibility density."""
    lam = star.wavelength
    return 9.0 * lam**3 / (16.0 * math.pi**2) * compatibility_density(star)


def er_radicand(star: StarModel) -> float:
    """4 - (M~ / M~0)^(2/3); the ER radius is real while this is non-negative.

    Uses M / M0 and a cube root so that M = 8 M0 gives exactly zero.
    """
    return 4.0 - float(np.cbrt(star.mass_in_m0)) ** 2


def er_equilibrium(star: StarModel) -> EquilibriumSolution:
    """ER balance R~ = M~^(1/3) sqrt(4 - (M~ / M~0)^(2/3)); real only for M <= 8 M0."""
    radicand = er_radicand(star)
    Mt = star.reduced_mass
    if radicand < 0:
        return _solution(star, Regime.ER, False, (), (), ER_CAP_IN_M0)
    return _solution(
        star, Regime.ER, True, ("ER",), (Mt ** (1.0 / 3.0) * math.sqrt(radicand),), ER_CAP_IN_M0
    )


def er_residual(star: StarModel, r_tilde: float) -> float:
    """Relative imbalance of the ER equation at R~.

    3K M~^(4/3)/R~^4 + K (M~^(4/3)/R~^4 - M~^(2/3)/R~^2) = K' M~^2/R~^4, where
    3K = m^4 c^5 / (4 pi^2 hbar^3) is the MA pressure coefficient.
    """
    c = star.const
    Mt = star.reduced_mass
    ma = star.fermion_mass**4 * c.c**5 / (4.0 * math.pi**2 * c.hbar**3) * Mt ** (4.0 / 3.0) / r_tilde**4
    fermi = star.K * (Mt ** (4.0 / 3.0) / r_tilde**4 - Mt ** (2.0 / 3.0) / r_tilde**2)
    grav = star.K_prime * Mt**2 / r_tilde**4
    return (ma + fermi - grav) / grav


def neutron_star_occupancy(star: StarModel) -> dict[str, float]:
    """MA-state count for a neutron star treated as a Newtonian polytrope.

    Returns the coefficient of M/M0 at the compatibility density, that
    density's coefficient, and the caveat flag. The polytropic treatment is
    only defensible for low-density stars.
    """
    if star.fermion != "neutron":
        raise DomainError("neutron_star_occupancy needs a neutron star model")
    return {
        "q_per_m0": occupancy_coefficient(star),
        "density_per_m0": compatibility_density(star),
        "newtonian_polytrope_caveat": 1.0,
    }
