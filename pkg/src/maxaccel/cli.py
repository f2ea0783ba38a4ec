"""Command-line front end: ``ma <subcommand> ...``.

Exit status is 0 on success, 1 when a computation is asked for outside its
domain (one-line diagnostic on stderr) and 2 for unusable flags.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import dataclasses
import os
import sys
from pathlib import Path
from typing import Sequence

from maxaccel import kinematics as kin
from maxaccel import londonsphere as ls
from maxaccel import report as rp
from maxaccel import stellar as st
from maxaccel import widthbounds as wb
from maxaccel._format import fmt
from maxaccel.physcore import (
    CODATA2018,
    DomainError,
    ParticleRegistry,
    PhysicalConstants,
    default_registry,
    maximal_acceleration,
)

CONFIG_ENV = "MA_CONFIG"
MR_COLUMNS = ("M_solar", "branch", "R_tilde", "R_cm", "NoverV_cm3", "Q_MA", "real_flag")
SPHERE_KEYS = ("R", "B0", "n", "T", "B_c", "epsilon_F")


@dataclasses.dataclass(frozen=True)
class Config:
    const: PhysicalConstants = CODATA2018
    sphere: dict = dataclasses.field(default_factory=dict)
    registry: ParticleRegistry | None = None

    def sphere_model(self, **overrides) -> ls.SphereModel:
        return ls.SphereModel(**{**self.sphere, **overrides}, const=self.const)

    def particles(self) -> ParticleRegistry:
        return self.registry if self.registry is not None else default_registry()


def load_config(path: str | Path | None) -> Config:
    """Read an INI config with optional [constants], [sphere] and [particles] sections.

    [constants] keys are PhysicalConstants field names; [sphere] keys are
    SphereModel parameters; [particles] ``file`` points at a particle table
    whose entries replace the built-in ones by name.
    """
    if path is None:
        return Config()
    parser = configparser.ConfigParser(interpolation=None)
    parser.optionxform = str
    with open(path) as fh:
        parser.read_file(fh)
    const = CODATA2018
    if parser.has_section("constants"):
        known = {f.name for f in dataclasses.fields(PhysicalConstants)}
        overrides = dict(parser["constants"])
        unknown = set(overrides) - known
        if unknown:
            raise DomainError(f"unknown constants in config: {', '.join(sorted(unknown))}")
        const = const.replace(**{k: float(v) for k, v in overrides.items()})
    sphere = {}
    if parser.has_section("sphere"):
        for k, v in parser["sphere"].items():
            if k not in SPHERE_KEYS:
                raise DomainError(f"unknown sphere parameter in config: {k}")
            sphere[k] = float(v)
    registry = None
    if parser.has_section("particles") and "file" in parser["particles"]:
        extra = ParticleRegistry.from_file(Path(path).parent / parser["particles"]["file"])
        registry = default_registry().merged(extra)
    return Config(const, sphere, registry)


# argument types ---------------------------------------------------------------


def _vector(text: str) -> kin.ThreeVector:
    try:
        return kin.ThreeVector.parse(text)
    except (ValueError, DomainError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _grid(text: str) -> tuple[int, int]:
    try:
        n, m = (int(p) for p in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected NxM, got {text!r}") from None
    if n < 2 or m < 2:
        raise argparse.ArgumentTypeError("grid needs at least 2x2 nodes")
    return n, m


def _sweep(text: str) -> list[float]:
    try:
        lo, hi, step = (float(p) for p in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected M1:M2:STEP, got {text!r}") from None
    if not (step > 0 and hi >= lo > 0):
        raise argparse.ArgumentTypeError("sweep needs 0 < M1 <= M2 and STEP > 0")
    count = int(round((hi - lo) / step)) + 1
    return [lo + i * step for i in range(count) if lo + i * step <= hi * (1 + 1e-12)]


# output helpers ---------------------------------------------------------------


def _emit(pairs, out=None) -> None:
    out = out if out is not None else sys.stdout
    for k, v in pairs:
        out.write(f"{k}={fmt(v) if not isinstance(v, str) else v}\n")


# subcommands -----------------------------------------------------------------


def cmd_limit(args, cfg: Config) -> int:
    reg = cfg.particles()
    if args.registry:
        reg = reg.merged(ParticleRegistry.from_file(args.registry))
    try:
        p = reg[args.particle]
    except KeyError:
        raise DomainError(f"unknown particle {args.particle!r}") from None
    m = p.mass_grams(cfg.const)
    _emit([
        ("particle", p.name),
        ("mass_GeV", p.mass),
        ("mass_g", m),
        ("A_m_cm_s2", maximal_acceleration(m, cfg.const)),
    ])
    return 0


def cmd_transform(args, cfg: Config) -> int:
    a_t = kin.transform_acceleration(args.a, args.v, cfg.const)
    _emit([
        ("a_prime", ",".join(fmt(c) for c in a_t.as_tuple())),
        ("a_prime_norm", a_t.norm()),
        ("a_proper_norm", args.a.norm()),
    ])
    return 0


def cmd_sphere(args, cfg: Config) -> int:
    overrides = {}
    if args.radius is not None:
        overrides["R"] = args.radius
    if args.b0 is not None:
        overrides["B0"] = args.b0
    model = cfg.sphere_model(**overrides)
    n_depth, n_theta = args.grid
    fmap = ls.sweep(model, n_depth, n_theta, estimate=args.estimate)
    if args.out:
        fmap.write_csv(args.out)
    v0 = ls.surface_velocity(model)
    pairs = [(k, v) for k, v in model.parameters().items()]
    pairs += [
        ("penetration_depth_cm", model.penetration_depth),
        ("v0_cm_s", v0),
        ("E_r_bound_equator_N_C", ls.er_bound_equator(v0, ls.surface_field(model), const=cfg.const).detail["bound_si"]),
        ("E_r_london_surface_N_C", ls.london_er_surface(model, v0)),
        ("ma_to_london_ratio", ls.ma_to_london_ratio(model, v0)),
        ("max_ma_lhs_cm_s2", float(fmap.lhs.max())),
        ("ma_rhs_cm_s2", float(fmap.rhs.max())),
        ("satisfied", fmap.all_satisfied),
    ]
    _emit(pairs)
    return 0


WIDTH_COLUMNS = (
    "process", "measured_width_GeV", "theoretical_width_GeV", "cap_GeV", "cap_satisfied",
    "bound_kind", "bound_GeV", "paper_bound_GeV", "relative_deviation",
)


def cmd_widths(args, cfg: Config) -> int:
    reg = cfg.particles()
    procs = wb.load_process_file(args.table, reg) if args.table else wb.default_processes(reg)
    if args.process:
        if args.process not in procs:
            raise DomainError(f"unknown process {args.process!r}")
        procs = {args.process: procs[args.process]}
    w = csv.writer(sys.stdout, delimiter="\t", lineterminator="\n")
    w.writerow(WIDTH_COLUMNS)
    for label, p in procs.items():
        cap = wb.width_cap(p)
        theo = bound = kind = None
        if p.formula is not None:
            theo = wb.theoretical_width(p, const=cfg.const)
            mb = wb.mass_bound(p, cfg.const)
            lower = "lower_bound" in mb.detail
            kind = "lower" if lower else "upper"
            bound = mb.detail["lower_bound"] if lower else mb.bound
        dev = None
        if bound is not None and p.quoted_bound is not None:
            dev = abs(bound - p.quoted_bound) / abs(p.quoted_bound)
        w.writerow([fmt(x) if not isinstance(x, str) else x for x in (
            label, p.measured_width, theo, cap.bound, cap.satisfied, kind or "", bound,
            p.quoted_bound, dev,
        )])
    return 0


def _solve(star: st.StarModel, regime: str) -> st.EquilibriumSolution:
    return st.nr_equilibrium(star) if regime == "nr" else st.er_equilibrium(star)


def _mr_rows(star: st.StarModel, m_solar: float, sol: st.EquilibriumSolution):
    if not sol.real:
        return [[fmt(m_solar), "none", "", "", "", "", "false"]]
    return [
        [fmt(m_solar), b, fmt(rt), fmt(rc), fmt(n), fmt(q), "true"]
        for b, rt, rc, n, q in zip(sol.branches, sol.radii_tilde, sol.radii_cm, sol.densities, sol.q_ma)
    ]


def cmd_star(args, cfg: Config) -> int:
    if args.mass is None and args.sweep is None:
        raise _BadFlags("star needs --mass or --sweep")
    masses = args.sweep if args.sweep is not None else [args.mass]
    rows = []
    last = None
    for m in masses:
        star = st.StarModel.of(args.fermion, m, args.alpha, cfg.const)
        sol = _solve(star, args.regime)
        rows.extend(_mr_rows(star, m, sol))
        last = (star, sol)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(MR_COLUMNS)
            w.writerows(rows)
    star, sol = last
    m0 = cfg.const.grams_to_solar(star.reference_mass)
    kind = "threshold" if sol.regime is st.Regime.NR else "cap"
    pairs = [
        ("fermion", args.fermion),
        ("regime", sol.regime.value),
        ("M_solar", star.mass / cfg.const.M_sun),
        ("M_over_M0", sol.mass_in_m0),
        ("M0_solar", m0),
        (f"{kind}_M0", sol.threshold_in_m0),
        (f"{kind}_M_solar", sol.threshold_in_m0 * m0),
        ("real", sol.real),
    ]
    for b, rt, rc, n, q in zip(sol.branches, sol.radii_tilde, sol.radii_cm, sol.densities, sol.q_ma):
        pairs += [(f"R_tilde[{b}]", rt), (f"R_cm[{b}]", rc), (f"NoverV_cm3[{b}]", n), (f"Q_MA[{b}]", q)]
    if args.sweep is None:
        _emit(pairs)
    else:
        _emit([("masses", len(masses)), ("rows", len(rows))])
    return 0


def cmd_report(args, cfg: Config) -> int:
    rows = rp.run_report(cfg.const, cfg.particles(), cfg.sphere_model())
    text = rp.rows_to_json(rows) if args.json else rp.format_table(rows)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


# parser ----------------------------------------------------------------------


class _BadFlags(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ma", description="Maximal-acceleration calculations.")
    ap.add_argument("--config", help=f"INI config file (default: ${CONFIG_ENV})")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("limit", help="maximal acceleration of a particle")
    p.add_argument("--particle", required=True)
    p.add_argument("--registry", help="extra particle table (INI)")
    p.set_defaults(func=cmd_limit)

    p = sub.add_parser("transform", help="acceleration seen from a moving frame")
    p.add_argument("--a", type=_vector, required=True, metavar="AX,AY,AZ")
    p.add_argument("--v", type=_vector, required=True, metavar="VX,VY,VZ")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("sphere", help="London sphere field map and E_r bounds")
    p.add_argument("--radius", type=float, metavar="CM")
    p.add_argument("--b0", type=float, metavar="G")
    p.add_argument("--grid", type=_grid, default=(100, 100), metavar="NxM")
    p.add_argument("--estimate", choices=("statistical", "surface"), default="statistical")
    p.add_argument("--out", metavar="FILE.csv")
    p.set_defaults(func=cmd_sphere)

    p = sub.add_parser("widths", help="width caps and mass bounds")
    p.add_argument("--process", metavar="LABEL")
    p.add_argument("--table", metavar="FILE")
    p.set_defaults(func=cmd_widths)

    p = sub.add_parser("star", help="MA-corrected stellar equilibria")
    p.add_argument("--mass", type=float, metavar="MSOLAR")
    p.add_argument("--regime", choices=("nr", "er"), required=True)
    p.add_argument("--fermion", choices=("electron", "neutron"), default="electron")
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--sweep", type=_sweep, metavar="M1:M2:STEP")
    p.add_argument("--out", metavar="FILE.csv")
    p.set_defaults(func=cmd_star)

    p = sub.add_parser("report", help="computed-vs-quoted reproduction report")
    p.add_argument("--json", action="store_true")
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(func=cmd_report)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        cfg = load_config(args.config or os.environ.get(CONFIG_ENV) or None)
        return args.func(args, cfg)
    except _BadFlags as exc:
        ap.print_usage(sys.stderr)
        print(f"ma: error: {exc}", file=sys.stderr)
        return 2
    except (DomainError, OSError, configparser.Error) as exc:
        print(f"ma: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
