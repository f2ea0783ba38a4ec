"""
Computed-vs-quoted reproduction report.

Every published number the library can recompute gets one row. A row's
status is decided by the numbers, never assigned: ``match`` when the
deviation is inside the row's tolerance, ``parameter-sensitive`` when the
value depends on material parameters that were never stated, and
``discrepancy-flagged`` otherwise.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from maxaccel import kinematics as kin
from maxaccel import londonsphere as ls
from maxaccel import stellar as st
from maxaccel import widthbounds as wb
from maxaccel._format import fmt
from maxaccel.rootfind import bisect_secant
from maxaccel.physcore import (
    CODATA2018,
    ParticleRegistry,
    PhysicalConstants,
    default_registry,
    maximal_acceleration,
)

__all__ = ["ReproductionRow", "ROW_KEYS", "format_table", "rows_to_json", "run_report"]

MATCH = "match"
SENSITIVE = "parameter-sensitive"
FLAGGED = "discrepancy-flagged"

ROW_KEYS = (
    "label",
    "citation",
    "paper_value",
    "paper_unit",
    "computed_value",
    "computed_unit",
    "comparison",
    "relative_deviation",
    "tolerance",
    "status",
    "note",
)

# comparison kinds
APPROX = "approx"  # |computed - quoted| / |quoted| <= tolerance
UPPER = "upper"  # computed <= quoted, deviation (computed - quoted)/|quoted|
FACTOR = "factor"  # max(c/p, p/c) <= tolerance


@dataclass(frozen=True)
class ReproductionRow:
    label: str
    citation: str
    paper_value: float
    paper_unit: str
    computed_value: float | None
    computed_unit: str
    comparison: str
    relative_deviation: float | None
    tolerance: float
    status: str
    note: str = ""

    @property
    def within_tolerance(self) -> bool:
        if self.relative_deviation is None:
            return False
        if self.comparison == UPPER:
            return self.relative_deviation <= 0.0
        return self.relative_deviation <= self.tolerance

    def as_dict(self) -> dict:
        return {k: getattr(self, k) for k in ROW_KEYS}


def _deviation(comparison: str, quoted: float, computed: float) -> float:
    if comparison == APPROX:
        return abs(computed - quoted) / abs(quoted)
    if comparison == UPPER:
        return (computed - quoted) / abs(quoted)
    if comparison == FACTOR:
        if computed <= 0 or quoted <= 0:
            return math.inf
        return max(computed / quoted, quoted / computed)
    raise ValueError(f"unknown comparison {comparison!r}")


@dataclass(frozen=True)
class _Spec:
    label: str
    citation: str
    paper_value: float
    paper_unit: str
    computed_unit: str
    compute: Callable[["_Context"], float | tuple[float, str]]
    comparison: str = APPROX
    tolerance: float = 0.01
    sensitive: bool = False
    note: str = ""


def _build(spec: _Spec, ctx: "_Context") -> ReproductionRow:
    try:
        out = spec.compute(ctx)
    except Exception as exc:  # a failing row is recorded, never fatal
        return ReproductionRow(
            spec.label, spec.citation, spec.paper_value, spec.paper_unit, None,
            spec.computed_unit, spec.comparison, None, spec.tolerance, FLAGGED,
            f"evaluation failed: {type(exc).__name__}: {exc}",
        )
    value, extra = out if isinstance(out, tuple) else (out, "")
    value = float(value)
    dev = _deviation(spec.comparison, spec.paper_value, value)
    row = ReproductionRow(
        spec.label, spec.citation, spec.paper_value, spec.paper_unit, value,
        spec.computed_unit, spec.comparison, dev, spec.tolerance, FLAGGED,
        "; ".join(s for s in (spec.note, extra) if s),
    )
    if spec.sensitive:
        status = SENSITIVE
    elif row.within_tolerance:
        status = MATCH
    else:
        status = FLAGGED
    return ReproductionRow(**{**row.as_dict(), "status": status})


@dataclass(frozen=True)
class _Context:
    const: PhysicalConstants
    registry: ParticleRegistry
    sphere: ls.SphereModel

    @property
    def processes(self):
        return wb.default_processes(self.registry)

    @property
    def wd(self) -> st.StarModel:
        return st.StarModel.white_dwarf(1.0, const=self.const)

    @property
    def ns(self) -> st.StarModel:
        return st.StarModel.neutron_star(1.0, const=self.const)

    def gas(self, n: float, regime: str) -> st.FermiGasState:
        return self.wd.gas(n, regime)


# quoted inputs
V0_QUOTED = 4.4e4  # cm/s
EPS_F_QUOTED = 4.5e-12  # erg
WD_DENSITY = 4.6e29  # cm^-3
ER_QUOTED_69 = 69.0  # N/C


def _sphere_params(ctx: _Context) -> str:
    p = ctx.sphere.parameters()
    return "parameters " + ", ".join(f"{k}={fmt(v)}" for k, v in p.items())


# row computations ------------------------------------------------------------


def _electron_ma(ctx):
    return maximal_acceleration(ctx.const.m_e, ctx.const)


def _electron_margin(ctx):
    chk = kin.check_ma(4.7e31, ctx.const.m_e, ctx.const)
    return chk.fraction, f"margin {fmt(chk.margin)} cm/s^2"


def _transform_collapse(ctx):
    c = ctx.const.c
    v = kin.ThreeVector((1.0 - 1e-8) * c, 0.0, 0.0)
    a = kin.ThreeVector(1.0, 0.0, 0.0)
    return kin.transformed_magnitude(a, v, ctx.const) / a.norm(), "|v| = (1 - 1e-8) c parallel to a_p"


def _z_accel(ctx):
    return wb.rms_acceleration(ctx.processes["ee->Z0"], ctx.const), (
        "a_r = c Gamma / (gamma hbar) with gamma = m_Z / 2 m_e"
    )


def _z_accel_fraction(ctx):
    a_r = wb.rms_acceleration(ctx.processes["ee->Z0"], ctx.const)
    a_m = maximal_acceleration(ctx.const.m_e, ctx.const)
    return a_r / a_m, f"quoted 2.8e26 cm/s^2 over electron MA gives {fmt(2.8e26 / a_m)}"


def _sc_bound_fraction(ctx):
    b = kin.mean_acceleration_bound(0.6 * EPS_F_QUOTED, ctx.const)
    return b / maximal_acceleration(ctx.const.m_e, ctx.const), "delta_E = (3/5) eps_F"


def _v0(ctx):
    return ls.surface_velocity(ctx.sphere), _sphere_params(ctx) + "; tolerance is a factor"


def _mu(ctx):
    mu = ls.chemical_potential(ctx.sphere.with_(epsilon_F=EPS_F_QUOTED))
    return mu, f"T = {fmt(ctx.sphere.T)} K"


def _dEdv(ctx):
    dE, dv = ls.fermi_estimates(ctx.sphere)
    return dE * dv / (ctx.const.m_e * ctx.const.c**3), "ratio to m_e c^3"


def _reality(ctx):
    dE, _ = ls.fermi_estimates(ctx.sphere)
    r = ls.reality_condition(dE, ctx.sphere.B_c, ctx.const)
    return r.value / r.bound, f"mu_B B_c / delta_E at B_c = {fmt(ctx.sphere.B_c)} G"


def _er_42(ctx):
    return ls.er_bound_equator(V0_QUOTED, 0.0, const=ctx.const).detail["bound_si"], (
        "v0 = 4.4e4 cm/s, B_theta = 0"
    )


def _back_solved_b_theta(ctx) -> float:
    c = ctx.const
    target = c.field_si_to_gaussian(ER_QUOTED_69)
    return target * c.c / V0_QUOTED - c.m_e * V0_QUOTED**2 / (2.0 * c.mu_B)


def _er_69(ctx):
    m = ctx.sphere
    v0 = ls.surface_velocity(m)
    bt = ls.surface_field(m)
    val = ls.er_bound_equator(v0, bt, const=ctx.const).detail["bound_si"]
    alt = ls.er_bound_equator(V0_QUOTED, bt, const=ctx.const).detail["bound_si"]
    return val, (
        f"v0 = {fmt(v0)} cm/s and B_theta = {fmt(bt)} G from defaults; "
        f"v0 = 4.4e4 with the same B_theta gives {fmt(alt)} N/C; "
        f"back-solved B_theta at v0 = 4.4e4 is {fmt(_back_solved_b_theta(ctx))} G; "
        + _sphere_params(ctx)
    )


def _back_solved_depth(ctx) -> float:
    """Penetration depth that turns v0 = 4.4e4 cm/s into the quoted 0.32 N/C."""
    c = ctx.const
    return c.m_e * V0_QUOTED**2 / (c.e * c.field_si_to_gaussian(0.32))


def _london_032(ctx):
    v0 = ls.surface_velocity(ctx.sphere)
    return ls.london_er_surface(ctx.sphere, v0), (
        f"penetration depth {fmt(ctx.sphere.penetration_depth)} cm; "
        f"back-solved depth at v0 = 4.4e4 is {fmt(_back_solved_depth(ctx))} cm; " + _sphere_params(ctx)
    )


def _ma_london_ratio(ctx):
    c = ctx.const
    back = c.m_e * V0_QUOTED * _back_solved_depth(ctx) / c.hbar
    return ls.ma_to_london_ratio(ctx.sphere), (
        f"ratio equals m_e v0 / (hbar beta); with v0 = 4.4e4 and the back-solved depth it is {fmt(back)}; "
        + _sphere_params(ctx)
    )


def _registry(name, channel=None):
    def f(ctx):
        p = ctx.registry[name]
        return p.widths[channel] if channel else p.mass
    return f


def _cap_ratio(label):
    def f(ctx):
        r = wb.width_cap(ctx.processes[label])
        return r.value / r.bound, f"gamma = {fmt(r.detail['gamma'])}; Gamma / (m_D / 2)"
    return f


def _z_bound(ctx):
    return wb.z_mass_bound(ctx.const, ctx.processes["ee->Z0"])


def _z_ratio(ctx):
    return _z_bound(ctx) / ctx.registry["Z0"].mass


def _w_bound(ctx):
    return wb.w_mass_bound(ctx.const, ctx.processes["W->enu"])


def _w_ratio(ctx):
    return _w_bound(ctx) / ctx.registry["W"].mass


def _jpsi_bound(ctx):
    return wb.jpsi_mass_lower(ctx.const, ctx.processes["ee->J/psi"]), (
        "printed formula (32 pi alpha^2 0.018)^(1/2)"
    )


def _jpsi_ratio(ctx):
    lo = wb.jpsi_mass_lower(ctx.const, ctx.processes["ee->J/psi"])
    return lo / ctx.registry["J/psi"].mass, (
        f"quoted 4.6e-2 GeV over m_J/psi gives {fmt(4.6e-2 / ctx.registry['J/psi'].mass)}"
    )


def _higgs_ee_sweep(ctx):
    m_e = ctx.registry["electron"].mass
    worst = 0.0
    for m in np.geomspace(2.0 * m_e * (1.0 + 1e-6), 1.0e4, 400):
        r = wb.higgs_ee_check(float(m), ctx.const, ctx.registry)
        worst = max(worst, r.value / r.bound)
    return worst, "largest Gamma(H->ee) / (m_H / 2) on 400 log-spaced masses"


def _higgs_lower(ctx):
    return wb.higgs_zz_window(ctx.const, ctx.registry).lower


def _higgs_upper(ctx):
    w = wb.higgs_zz_window(ctx.const, ctx.registry)
    return w.upper, f"heavy-Higgs asymptote {fmt(wb.higgs_zz_asymptote(ctx.const))} GeV"


def _r0(regime):
    def f(ctx):
        return st.ma_radius(ctx.gas(WD_DENSITY, regime)), f"N/V = {fmt(WD_DENSITY)} cm^-3"
    return f


def _q_density(regime):
    def f(ctx):
        return st.occupancy_density(ctx.const.m_e, regime, 1.0, ctx.const)
    return f


def _m0_note(ctx, in_m0: float) -> str:
    wd = ctx.wd
    m0 = ctx.const.grams_to_solar(wd.reference_mass)
    return f"in units of M0; M0 = {fmt(m0)} M_sun from constants, i.e. {fmt(in_m0 * m0)} M_sun"


def _nr_threshold(ctx):
    return st.NR_THRESHOLD_IN_M0, _m0_note(ctx, st.NR_THRESHOLD_IN_M0)


def _threshold_density(ctx):
    wd = ctx.wd
    star = wd.with_mass(st.NR_THRESHOLD_IN_M0 * wd.reference_mass * (1.0 + 1e-12))
    sol = st.nr_equilibrium(star)
    return sol.densities[0], (
        f"branch densities at threshold {fmt(sol.densities[0])} and {fmt(sol.densities[1])}"
    )


def _negligibility(ctx):
    return st.negligibility_density(ctx.wd), "8 pi 5^(3/2) / (3 lambda_e^3)"


def _compatibility(ctx):
    return st.compatibility_density(ctx.wd), "coefficient of M/M0"


def _er_cap(ctx):
    wd = ctx.wd
    cap = bisect_secant(lambda x: st.er_radicand(wd.with_mass(x * wd.reference_mass)), 1.0, 20.0, rtol=1e-14)
    return cap, _m0_note(ctx, cap)


def _wd_coeff(ctx):
    return st.occupancy_coefficient(ctx.wd), (
        f"Q per M/M0 at the compatibility density {fmt(st.compatibility_density(ctx.wd))} (M/M0) cm^-3"
    )


def _ns_coeff(ctx):
    occ = st.neutron_star_occupancy(ctx.ns)
    return occ["q_per_m0"], (
        f"implied density {fmt(occ['density_per_m0'])} (M/M0) cm^-3; Newtonian polytrope"
    )


SPECS: tuple[_Spec, ...] = (
    _Spec("Z0 mass", "particle data", 91.188, "GeV", "GeV", _registry("Z0"), tolerance=1e-12),
    _Spec("Z0 ee width", "particle data", 0.08391, "GeV", "GeV", _registry("Z0", "ee"), tolerance=1e-12),
    _Spec("W mass", "particle data", 80.419, "GeV", "GeV", _registry("W"), tolerance=1e-12),
    _Spec("J/psi mass", "particle data", 3.09687, "GeV", "GeV", _registry("J/psi"), tolerance=1e-12),
    _Spec("electron MA", "MA limit", 4.7e31, "cm/s^2", "cm/s^2", _electron_ma, tolerance=0.02),
    _Spec("transform collapse", "acceleration transform", 1e-3, "1", "1", _transform_collapse, UPPER, 0.0),
    _Spec("electron MA at quoted value", "MA check", 1.0, "1", "1", _electron_margin, tolerance=0.02),
    _Spec("Z0 acceleration fraction of electron MA", "decay acceleration", 6e-6, "1", "1",
          _z_accel_fraction, tolerance=0.1),
    _Spec("superconductor MA bound fraction", "energy-spread bound", 1e-4, "1", "1", _sc_bound_fraction,
          UPPER, 0.0),
    _Spec("surface velocity v0", "London sphere", V0_QUOTED, "cm/s", "cm/s", _v0, FACTOR, 2.0, True),
    _Spec("chemical potential", "Fermi statistics", EPS_F_QUOTED, "erg", "erg", _mu, tolerance=1e-3),
    _Spec("energy-velocity spread product", "Fermi statistics", 1e-3, "1", "1", _dEdv, UPPER, 0.0),
    _Spec("reality condition at critical field", "E_r bound", 1.0, "1", "1", _reality, UPPER, 0.0),
    _Spec("E_r bound at B_theta = 0", "E_r bound", 4.2, "N/C", "N/C", _er_42, tolerance=0.1),
    _Spec("E_r bound with field", "E_r bound", ER_QUOTED_69, "N/C", "N/C", _er_69, FACTOR, 3.0, True),
    _Spec("London surface field", "London field", 0.32, "N/C", "N/C", _london_032, FACTOR, 3.0, True),
    _Spec("MA to London ratio", "London field", 10.0, "1", "1", _ma_london_ratio, FACTOR, 3.0, True),
    _Spec("Z0 ee width cap", "width cap", 1.0, "1", "1", _cap_ratio("ee->Z0"), UPPER, 0.0),
    _Spec("W enu width", "particle data", 0.22599, "GeV", "GeV", _registry("W", "enu"), tolerance=1e-12),
    _Spec("W enu width cap", "width cap", 1.0, "1", "1", _cap_ratio("W->enu"), UPPER, 0.0),
    _Spec("J/psi ee width", "particle data", 5.2e-6, "GeV", "GeV", _registry("J/psi", "ee"), tolerance=1e-12),
    _Spec("J/psi ee width cap", "width cap", 1.0, "1", "1", _cap_ratio("ee->J/psi"), UPPER, 0.0),
    _Spec("Z0 production acceleration", "decay acceleration", 2.8e26, "cm/s^2", "cm/s^2", _z_accel,
          tolerance=0.1),
    _Spec("m_Z upper bound", "Z mass bound", 1512.0, "GeV", "GeV", _z_bound),
    _Spec("m_Z bound ratio", "Z mass bound", 16.6, "1", "1", _z_ratio),
    _Spec("m_W upper bound", "W mass bound", 525.0, "GeV", "GeV", _w_bound),
    _Spec("m_W bound ratio", "W mass bound", 6.53, "1", "1", _w_ratio),
    _Spec("J/psi lower bound", "J/psi mass bound", 4.6e-2, "GeV", "GeV", _jpsi_bound, tolerance=0.1),
    _Spec("J/psi bound ratio", "J/psi mass bound", 1.5e-2, "1", "1", _jpsi_ratio, tolerance=0.1),
    _Spec("H ee width cap sweep", "Higgs ee cap", 1.0, "1", "1", _higgs_ee_sweep, UPPER, 0.0),
    _Spec("Higgs window lower", "Higgs ZZ window", 182.4, "GeV", "GeV", _higgs_lower),
    _Spec("Higgs window upper", "Higgs ZZ window", 1760.0, "GeV", "GeV", _higgs_upper),
    _Spec("r0 NR", "MA radius", 5.8e-11, "cm", "cm", _r0("NR"), tolerance=0.02),
    _Spec("r0 ER", "MA radius", 4e-11, "cm", "cm", _r0("ER"), tolerance=0.05),
    _Spec("Q = 1 density NR", "MA occupancy", 1.2e30, "cm^-3", "cm^-3", _q_density("NR"), tolerance=0.05),
    _Spec("Q = 1 density ER", "MA occupancy", 1.3e30, "cm^-3", "cm^-3", _q_density("ER"), tolerance=0.05),
    _Spec("NR threshold mass", "NR equilibrium", 6.8, "M_sun", "M0", _nr_threshold, tolerance=0.02),
    _Spec("NR branch density at threshold", "NR equilibrium", 6.6e30, "cm^-3", "cm^-3",
          _threshold_density, tolerance=0.1),
    _Spec("negligibility density", "NR mass-radius relation", 6.6e29, "cm^-3", "cm^-3", _negligibility,
          tolerance=0.05),
    _Spec("compatibility density", "NR mass-radius relation", 2.7e30, "cm^-3 per M/M0", "cm^-3 per M/M0",
          _compatibility, tolerance=0.1),
    _Spec("ER mass cap", "ER equilibrium", 8.0, "M0", "M0", _er_cap, tolerance=1e-12),
    _Spec("white dwarf occupancy coefficient", "ER equilibrium", 2.2, "per M/M_sun", "per M/M0",
          _wd_coeff, tolerance=0.1),
    _Spec("neutron star occupancy coefficient", "neutron star", 4.5, "per M/M_sun", "per M/M0",
          _ns_coeff, tolerance=0.1),
)

LABELS = tuple(s.label for s in SPECS)


def run_report(
    const: PhysicalConstants = CODATA2018,
    registry: ParticleRegistry | None = None,
    sphere: ls.SphereModel | None = None,
) -> list[ReproductionRow]:
    """Evaluate every row. Failures are recorded in the row, never raised."""
    registry = registry if registry is not None else default_registry()
    sphere = sphere if sphere is not None else ls.SphereModel(const=const)
    ctx = _Context(const, registry, sphere)
    return [_build(s, ctx) for s in SPECS]


def _json_value(v):
    if isinstance(v, float):
        if not math.isfinite(v):
            return None
        return float(fmt(v))
    return v


def rows_to_json(rows: Iterable[ReproductionRow]) -> str:
    return json.dumps(
        [{k: _json_value(v) for k, v in r.as_dict().items()} for r in rows], indent=2, ensure_ascii=True
    ) + "\n"


def format_table(rows: Iterable[ReproductionRow]) -> str:
    """Tab-separated text table, one row per line."""
    lines = ["\t".join(ROW_KEYS)]
    for r in rows:
        lines.append("\t".join(fmt(v) if not isinstance(v, str) else v for v in r.as_dict().values()))
    return "\n".join(lines) + "\n"
