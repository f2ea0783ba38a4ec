import inspect
import math

import pytest
from hypothesis import given, strategies as st

import maxaccel
from maxaccel import kinematics, londonsphere, stellar, widthbounds
from maxaccel.physcore import (
    CODATA2018 as C,
    BoundResult,
    DomainError,
    Particle,
    ParticleRegistry,
    PhysicalConstants,
    compton_wavelength,
    default_registry,
    maximal_acceleration,
    thermal_wavelength,
)

# desk values from hand-multiplied CODATA constants
A_M_ELECTRON = 4.654841943753849e31
A_M_PROTON = 8.547000479464281e34
LAMBDA_E = 2.426310238683092e-10
LAMBDA_N = 1.319590905809733e-13
MU_B = 9.274010078362164e-21
LAMBDA_T_1E7 = 2.3571105739357566e-09
DEGENERACY_1E7 = 6024.176671797517
LAMBDA_T_300 = 4.303475439595208e-07


def test_bohr_magneton_identity():
    assert C.mu_B == pytest.approx(C.e * C.hbar / (2 * C.m_e * C.c), rel=1e-10)
    assert C.mu_B == pytest.approx(MU_B, rel=1e-10)


def test_constants_positive_and_validated():
    for name in ("c", "h", "e", "m_e", "m_p", "m_n", "G", "k_B", "G_F", "alpha_em", "M_sun"):
        assert getattr(C, name) > 0
    with pytest.raises(DomainError):
        C.replace(G=-1.0)
    with pytest.raises(DomainError):
        PhysicalConstants(c=0.0)


@given(st.floats(min_value=1e-30, max_value=1e30))
def test_conversions_round_trip(x):
    pairs = [
        (C.gev_to_erg, C.erg_to_gev),
        (C.gev_to_grams, C.grams_to_gev),
        (C.field_si_to_gaussian, C.field_gaussian_to_si),
        (C.solar_to_grams, C.grams_to_solar),
    ]
    for fwd, back in pairs:
        assert back(fwd(x)) == pytest.approx(x, rel=1e-12)


def test_maximal_acceleration_values():
    assert maximal_acceleration(C.m_e) == pytest.approx(A_M_ELECTRON, rel=1e-12)
    assert maximal_acceleration(C.m_e) == pytest.approx(4.7e31, rel=0.02)
    assert maximal_acceleration(C.m_p) == pytest.approx(A_M_PROTON, rel=1e-12)
    assert maximal_acceleration(2 * C.m_e) == 2 * maximal_acceleration(C.m_e)


@pytest.mark.parametrize("bad", [0.0, -1.0, math.nan, math.inf])
def test_mass_domain(bad):
    for f in (maximal_acceleration, compton_wavelength):
        with pytest.raises(DomainError):
            f(bad)
    with pytest.raises(DomainError):
        thermal_wavelength(C.m_e, bad)


def test_compton_wavelengths():
    assert compton_wavelength(C.m_e) == pytest.approx(LAMBDA_E, rel=1e-12)
    assert compton_wavelength(C.m_n) == pytest.approx(LAMBDA_N, rel=1e-12)
    assert compton_wavelength(2 * C.m_e) == pytest.approx(LAMBDA_E / 2, rel=1e-15)
    star = stellar.StarModel.neutron_star(1.0)
    assert star.wavelength == compton_wavelength(C.m_n)


@given(st.floats(min_value=1e-40, max_value=1e10))
def test_ma_times_compton_is_4pi_c2(m):
    assert maximal_acceleration(m) * compton_wavelength(m) == pytest.approx(
        4 * math.pi * C.c**2, rel=1e-12
    )


def test_thermal_wavelength():
    lam = thermal_wavelength(C.m_e, 1e7)
    assert lam == pytest.approx(LAMBDA_T_1E7, rel=1e-12)
    # white-dwarf electron gas is deep in the quantum regime
    assert 4.6e29 * lam**3 == pytest.approx(DEGENERACY_1E7, rel=1e-10)
    assert 4.6e29 * lam**3 > 1
    assert thermal_wavelength(C.m_e, 4e7) == pytest.approx(lam / 2, rel=1e-14)
    assert thermal_wavelength(C.m_e, 300) == pytest.approx(LAMBDA_T_300, rel=1e-12)


def test_bound_result_margin():
    r = BoundResult("x", 1.0, 3.0)
    assert r.margin == 2.0 and r.satisfied
    assert BoundResult("x", 3.0, 3.0).satisfied
    assert not BoundResult("x", 3.5, 3.0).satisfied
    open_ = BoundResult("x", None, 3.0)
    assert open_.margin is None and open_.satisfied is None


def test_default_registry_contents():
    reg = default_registry()
    for name in ("electron", "proton", "neutron", "Z0", "W", "J/psi"):
        assert name in reg
    assert reg["Z0"].mass == 91.188 and reg["Z0"].widths["ee"] == 0.08391
    assert reg["W"].mass == 80.419 and reg["W"].widths["enu"] == 0.22599
    assert reg["J/psi"].mass == 3.09687 and reg["J/psi"].widths["ee"] == 5.2e-6
    p = reg["proton"]
    assert p.mass_g == pytest.approx(p.mass * C.erg_per_GeV / C.c**2, rel=1e-15)
    assert reg["electron"].mass_g == pytest.approx(C.m_e, rel=1e-8)


def test_registry_file_round_trip(tmp_path):
    reg = default_registry()
    path = tmp_path / "particles.ini"
    path.write_text(reg.to_string())
    again = ParticleRegistry.from_file(path)
    assert list(again) == list(reg)
    for name in reg:
        assert again[name] == reg[name]


def test_registry_merge_overrides():
    extra = ParticleRegistry([Particle("Z0", 91.1876, 0, {"ee": 0.08}), Particle("tau", 1.77686, -1)])
    merged = default_registry().merged(extra)
    assert merged["Z0"].mass == 91.1876
    assert "tau" in merged and "electron" in merged
    with pytest.raises(KeyError):
        default_registry()["tau"]


def test_particle_rejects_bad_mass():
    with pytest.raises(DomainError):
        Particle("ghost", 0.0)


# dimensional audit -----------------------------------------------------------

AUDIT = [
    (maxaccel.physcore.maximal_acceleration, {"mass": "g"}, "cm/s^2"),
    (maxaccel.physcore.compton_wavelength, {"mass": "g"}, "cm"),
    (maxaccel.physcore.thermal_wavelength, {"mass": "g", "T": "K"}, "cm"),
    (kinematics.transform_acceleration, {"a_p": "cm/s^2", "v": "cm/s"}, "cm/s^2"),
    (kinematics.transformed_magnitude, {"a_p": "cm/s^2", "v": "cm/s"}, "cm/s^2"),
    (kinematics.check_ma, {"proper_acceleration": "cm/s^2", "mass": "g"}, "cm/s^2"),
    (kinematics.orthogonality_time, {"E": "erg"}, "s"),
    (kinematics.mean_acceleration_bound, {"delta_E": "erg"}, "cm/s^2"),
    (kinematics.line_element_factor, {"proper_acceleration": "cm/s^2", "mass": "g"}, "1"),
    (londonsphere.beta, {"n": "cm^-3"}, "cm^-1"),
    (londonsphere.field_solution, {"r": "cm", "theta": "rad"}, "FieldSample"),
    (londonsphere.surface_velocity, {}, "cm/s"),
    (londonsphere.er_bound_equator, {"v0": "cm/s", "B_theta": "G"}, "statvolt/cm"),
    (londonsphere.london_er_surface, {"v0": "cm/s"}, "N/C"),
    (londonsphere.reality_condition, {"delta_E": "erg", "B_r": "G"}, "erg"),
    (widthbounds.rms_acceleration, {}, "cm/s^2"),
    (widthbounds.z_mass_bound, {}, "GeV"),
    (widthbounds.w_mass_bound, {}, "GeV"),
    (widthbounds.jpsi_mass_lower, {}, "GeV"),
    (widthbounds.higgs_zz_asymptote, {}, "GeV"),
    (widthbounds.higgs_ee_check, {"m_H": "GeV"}, "GeV"),
    (stellar.fermi_integral, {"x_F": "1"}, "1"),
    (stellar.ground_state_energy, {"V": "cm^3"}, "erg"),
    (stellar.mean_acceleration, {"r": "cm"}, "cm/s^2"),
    (stellar.ma_radius, {}, "cm"),
    (stellar.ma_occupancy, {"r0": "cm"}, "1"),
    (stellar.occupancy_density, {"fermion_mass": "g"}, "cm^-3"),
    (stellar.ma_pressure, {"r0": "cm"}, "dyn/cm^2"),
    (stellar.negligibility_density, {}, "cm^-3"),
]


@pytest.mark.parametrize("func,inputs,returns", AUDIT, ids=[f.__name__ for f, _, _ in AUDIT])
def test_dimensional_audit(func, inputs, returns):
    tags = getattr(func, "units", None)
    assert tags is not None, f"{func.__name__} has no unit tags"
    assert tags.get("returns") == returns
    params = inspect.signature(func).parameters
    for name, unit in inputs.items():
        assert name in params
        assert tags.get(name) == unit
