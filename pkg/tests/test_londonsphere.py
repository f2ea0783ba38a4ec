import math

import numpy as np
import pytest

from maxaccel import londonsphere as ls
from maxaccel.physcore import CODATA2018 as C, DomainError

# desk values, defaults n = 1e22 cm^-3, B0 = 200 G, B_c = 300 G
BETA_1E22 = 188178.85770978828
LAMBDA_L = 5.314093263028582e-06
V0_DEFAULT = 28039.600710372633
ER_42 = 4.183593368304904  # N/C at v0 = 4.4e4, B_theta = 0
ER_DEFAULT = 9.494577157557599  # N/C at default v0 and B_theta = 300 G
LONDON_DEFAULT = 8.41188021311179  # N/C
B_THETA_BACKSOLVED = 1473.1001507203432  # G
STAT_FIELD_FREE = 723958.2440806526  # statvolt/cm, T = 0

MODEL = ls.SphereModel()
# a small sphere whose interior still carries field, for finite differences
SMALL = ls.SphereModel(R=4e-5)


def test_beta_and_penetration_depth():
    assert ls.beta(1e22) == pytest.approx(BETA_1E22, rel=1e-12)
    assert MODEL.penetration_depth == pytest.approx(LAMBDA_L, rel=1e-12)
    assert ls.beta(4e22) == pytest.approx(2 * ls.beta(1e22), rel=1e-15)
    assert MODEL.beta_R == pytest.approx(1.88e5, rel=0.01)
    assert MODEL.thin_penetration and not SMALL.thin_penetration
    with pytest.raises(DomainError):
        ls.beta(0.0)


def test_model_validation():
    with pytest.raises(DomainError):
        ls.SphereModel(B0=400.0)
    with pytest.raises(DomainError):
        ls.SphereModel(n=-1.0)


def test_equator_has_no_radial_field():
    for r in (0.3, 0.999, 1.0 - 3 * LAMBDA_L, 1.0):
        assert ls.field_solution(MODEL, r, math.pi / 2).B_r == 0.0
    assert ls.field_solution(SMALL, 2e-5, math.pi / 2).B_r == 0.0


def test_centre_is_finite_and_uniform():
    for theta in (0.0, 0.4, math.pi / 2, 2.5):
        s = ls.field_solution(SMALL, 0.0, theta)
        assert s.j_phi == 0.0
        # uniform axial field: B_r = Bz cos, B_theta = -Bz sin
        bz = s.B_r * math.cos(theta) - s.B_theta * math.sin(theta)
        ref = ls.field_solution(SMALL, 0.0, 0.0).B_r
        assert bz == pytest.approx(ref, rel=1e-12)
    near = ls.field_solution(SMALL, 1e-12, 1.0).j_phi
    assert abs(near) < 1e-6 * abs(ls.field_solution(SMALL, 0.5 * SMALL.R, 1.0).j_phi)


def test_surface_tangential_field():
    s = ls.field_solution(MODEL, MODEL.R, math.pi / 2)
    assert s.B_theta == pytest.approx(-1.5 * MODEL.B0, rel=2.0 / MODEL.beta_R)
    assert s.v_phi == pytest.approx(s.j_phi / (MODEL.n * C.e), rel=1e-15)
    assert abs(s.v_phi) == pytest.approx(V0_DEFAULT, rel=2.0 / MODEL.beta_R)


def test_no_overflow_at_very_large_beta_r():
    m = ls.SphereModel(R=60.0)  # beta R ~ 1.1e7
    assert m.beta_R > 1e7
    with np.errstate(over="raise", invalid="raise"):
        s = ls.field_solution(m, m.R - 2 * m.penetration_depth, 1.0)
    assert all(math.isfinite(v) for v in (s.B_r, s.B_theta, s.j_phi))
    with pytest.raises(DomainError):
        ls.field_solution(m, m.R * 1.01, 1.0)


def test_efold_length_on_equator():
    depth = np.linspace(1.0, 10.0, 40) * MODEL.penetration_depth
    bt = np.array([ls.field_solution(MODEL, MODEL.R - d, math.pi / 2).B_theta for d in depth])
    slope = np.polyfit(depth, np.log(np.abs(bt)), 1)[0]
    assert -1.0 / slope == pytest.approx(MODEL.penetration_depth, rel=0.02)


# finite differences ------------------------------------------------------


def _grid_points(model, n=6):
    lam = model.penetration_depth
    depths = np.linspace(0.5, 5.0, n) * lam
    thetas = np.linspace(0.2, math.pi - 0.2, n)
    for d in depths:
        for t in thetas:
            yield model.R - d, t


@pytest.mark.parametrize("model", [MODEL, SMALL], ids=["thick", "small"])
def test_divergence_free(model):
    hr = 1e-3 * model.penetration_depth
    ht = 1e-4
    for r, t in _grid_points(model):
        def Br(rr, tt):
            return ls.field_solution(model, rr, tt).B_r

        def Bt(rr, tt):
            return ls.field_solution(model, rr, tt).B_theta

        radial = ((r + hr) ** 2 * Br(r + hr, t) - (r - hr) ** 2 * Br(r - hr, t)) / (2 * hr) / r**2
        polar = (math.sin(t + ht) * Bt(r, t + ht) - math.sin(t - ht) * Bt(r, t - ht)) / (
            2 * ht * r * math.sin(t)
        )
        scale = abs(radial) + abs(polar)
        assert abs(radial + polar) <= 1e-4 * scale


@pytest.mark.parametrize("model", [MODEL, SMALL], ids=["thick", "small"])
def test_london_relation(model):
    # curl v = -(e / m c) B with v = v_phi phi_hat
    k = C.e / (C.m_e * C.c)
    hr = 1e-3 * model.penetration_depth
    ht = 1e-4
    for r, t in _grid_points(model):
        def v(rr, tt):
            return ls.field_solution(model, rr, tt).v_phi

        s = ls.field_solution(model, r, t)
        curl_r = (math.sin(t + ht) * v(r, t + ht) - math.sin(t - ht) * v(r, t - ht)) / (
            2 * ht * r * math.sin(t)
        )
        curl_t = -((r + hr) * v(r + hr, t) - (r - hr) * v(r - hr, t)) / (2 * hr) / r
        assert curl_r == pytest.approx(-k * s.B_r, rel=1e-4)
        assert curl_t == pytest.approx(-k * s.B_theta, rel=1e-4)


@pytest.mark.parametrize("model", [MODEL, SMALL], ids=["thick", "small"])
def test_ampere_law(model):
    hr = 1e-3 * model.penetration_depth
    ht = 1e-4
    for r, t in _grid_points(model):
        s = ls.field_solution(model, r, t)
        d_rbt = (
            (r + hr) * ls.field_solution(model, r + hr, t).B_theta
            - (r - hr) * ls.field_solution(model, r - hr, t).B_theta
        ) / (2 * hr)
        d_br = (ls.field_solution(model, r, t + ht).B_r - ls.field_solution(model, r, t - ht).B_r) / (2 * ht)
        curl_phi = (d_rbt - d_br) / r
        assert curl_phi == pytest.approx(4 * math.pi / C.c * s.j_phi, rel=1e-4)


def test_carried_derivatives_match_finite_differences():
    r, t = MODEL.R - 2 * MODEL.penetration_depth, 0.9
    s = ls.field_solution(MODEL, r, t)
    hr = 1e-4 * MODEL.penetration_depth
    ht = 1e-5
    dvdr = (ls.field_solution(MODEL, r + hr, t).v_phi - ls.field_solution(MODEL, r - hr, t).v_phi) / (2 * hr)
    dvdt = (ls.field_solution(MODEL, r, t + ht).v_phi - ls.field_solution(MODEL, r, t - ht).v_phi) / (2 * ht)
    assert s.dv_dr == pytest.approx(dvdr, rel=1e-6)
    assert s.dv_dtheta == pytest.approx(dvdt, rel=1e-6)


# velocities and spreads -----------------------------------------------------


def test_surface_velocity():
    assert ls.surface_velocity(MODEL) == pytest.approx(V0_DEFAULT, rel=1e-12)
    # documented defaults land within a factor 2 of the quoted 4.4e4 cm/s
    assert 0.5 < ls.surface_velocity(MODEL) / 4.4e4 < 2.0
    assert ls.surface_field(ls.SphereModel(B0=100.0)) == 150.0


def test_fermi_estimates():
    mu0 = ls.chemical_potential(MODEL.with_(T=1e-12))
    assert mu0 == pytest.approx(4.5e-12, rel=1e-15)
    assert ls.chemical_potential(MODEL) == pytest.approx(4.5e-12, rel=1e-3)
    dE, dv = ls.fermi_estimates(MODEL)
    assert dE * dv / (C.m_e * C.c**3) < 1e-3
    with pytest.raises(DomainError):
        ls.fermi_estimates(MODEL.with_(epsilon_F=1e-20, T=10.0))


def test_reality_condition():
    assert ls.reality_condition(1e-15, 0.0).satisfied
    at_bc = ls.reality_condition(0.6 * 4.5e-12, 300.0)
    assert at_bc.satisfied and at_bc.value / at_bc.bound < 1e-5
    edge = ls.reality_condition(C.mu_B * 250.0, 250.0)
    assert edge.satisfied and edge.margin == 0.0


def test_statistical_bound():
    zero = ls.FieldSample(MODEL.R, math.pi / 2, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0)
    cold = MODEL.with_(T=1e-12)
    assert ls.er_bound_statistical(cold, zero).bound == pytest.approx(STAT_FIELD_FREE, rel=1e-12)
    surf = ls.field_solution(MODEL, MODEL.R, math.pi / 2)
    res = ls.er_bound_statistical(MODEL, surf)
    assert res.satisfied
    london = ls.london_er_surface(MODEL, V0_DEFAULT)
    assert res.detail["bound_si"] / london > 1e6
    ceiling = 0.6 * MODEL.epsilon_F / C.mu_B
    at_edge = ls.FieldSample(MODEL.R, 1.0, ceiling * (1 - 1e-12), 0.0, 0.0, 0.0, 0.0, 0.0)
    assert ls.er_bound_statistical(cold, at_edge).bound < 1e-5 * STAT_FIELD_FREE
    beyond = ls.FieldSample(MODEL.R, 1.0, 2 * ceiling, 0.0, 0.0, 0.0, 0.0, 0.0)
    with pytest.raises(DomainError, match="reality condition"):
        ls.er_bound_statistical(MODEL, beyond)


def test_equator_bound():
    assert ls.er_bound_equator(4.4e4, 0.0).detail["bound_si"] == pytest.approx(ER_42, rel=1e-12)
    assert ls.er_bound_equator(4.4e4, 0.0).detail["bound_si"] == pytest.approx(4.2, rel=0.1)
    assert ls.er_bound_equator(V0_DEFAULT, 300.0).detail["bound_si"] == pytest.approx(ER_DEFAULT, rel=1e-12)
    assert ls.er_bound_equator(0.0, 300.0).bound == 0.0
    # back-solving the field behind 69 N/C
    assert ls.er_bound_equator(4.4e4, B_THETA_BACKSOLVED).detail["bound_si"] == pytest.approx(69.0, rel=1e-10)
    test = ls.er_bound_equator(4.4e4, 0.0, value=1e-6)
    assert test.satisfied


def test_london_surface_field():
    assert ls.london_er_surface(MODEL, V0_DEFAULT) == pytest.approx(LONDON_DEFAULT, rel=1e-12)
    assert ls.london_er_surface(MODEL, 0.0) == 0.0
    assert ls.london_er_surface(MODEL, 2e4) == pytest.approx(4 * ls.london_er_surface(MODEL, 1e4), rel=1e-15)
    with pytest.raises(DomainError):
        ls.london_er_surface(SMALL, 1e4)


def test_london_surface_matches_field_solution():
    # (m / 2e) d(v^2)/dr at the surface from the exact profile
    s = ls.field_solution(MODEL, MODEL.R, math.pi / 2)
    exact = C.m_e / C.e * s.v_phi * s.dv_dr
    approx = C.field_si_to_gaussian(ls.london_er_surface(MODEL, abs(s.v_phi)))
    assert exact == pytest.approx(approx, rel=5.0 / MODEL.beta_R)


def test_ma_lhs_against_expanded_radicand():
    for r, t in _grid_points(MODEL):
        s = ls.field_solution(MODEL, r, t)
        lhs = ls.ma_lhs(MODEL, s)
        # the expanded form cancels; compare on the scale of its largest terms
        k = C.e / (C.m_e * C.c)
        grad2 = (2 * s.v_phi * s.dv_dr) ** 2 + (2 * s.v_phi * s.dv_dtheta / s.r) ** 2
        scale = 0.25 * grad2 + (k * s.v_phi) ** 2 * (s.B_r**2 + s.B_theta**2)
        assert abs(lhs**2 - ls.ma_radicand(MODEL, s)) <= 1e-12 * scale


def test_ma_inequality_trivial_and_sweep():
    still = ls.FieldSample(0.5, 1.0, 10.0, -10.0, 0.0, 0.0, 0.0, 0.0)
    res = ls.ma_inequality_check(MODEL, still, 1e-12, 1e7)
    assert res.value == 0.0 and res.satisfied
    fmap = ls.sweep(MODEL, 100, 100)
    assert fmap.shape == (100, 100) and len(fmap.samples) == 10_000
    assert fmap.all_satisfied
    assert float(fmap.lhs.max()) == pytest.approx(7.70545954e8, rel=1e-6)
    assert float(fmap.rhs.max()) == pytest.approx(3.81729408e23, rel=1e-6)
    assert ls.sweep(MODEL, 20, 20, estimate="surface").all_satisfied


def test_ma_to_london_ratio_identity():
    # ratio reduces to m v0 / (hbar beta)
    v0 = ls.surface_velocity(MODEL)
    assert ls.ma_to_london_ratio(MODEL) == pytest.approx(C.m_e * v0 / (C.hbar * MODEL.beta), rel=1e-12)


def test_field_map_csv(tmp_path):
    fmap = ls.sweep(MODEL, 4, 3)
    path = tmp_path / "map.csv"
    fmap.write_csv(path)
    lines = path.read_text().splitlines()
    assert lines[0] == "r,theta,B_r,B_theta,j_phi,v_phi,ma_lhs,ma_rhs"
    assert len(lines) == 13
    again = tmp_path / "again.csv"
    ls.sweep(MODEL, 4, 3).write_csv(again)
    assert path.read_bytes() == again.read_bytes()
