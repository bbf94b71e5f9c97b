import math

import numpy as np
import pytest

from ngas_sqwell import cubic
from ngas_sqwell.model import LevelIndex, OscillatorSpec
from ngas_sqwell.spectrum import (
    depth,
    dwo_ref_energy,
    expectation_H,
    lo_energy,
    sho_asymptotic_ratio,
    solve_levels,
)

SPECS = [
    OscillatorSpec("aho", 1.0, 0.1),
    OscillatorSpec("aho", 1.0, 1.0),
    OscillatorSpec("aho", 1.0, 100.0),
    OscillatorSpec("dwo", 1.0, 0.1),
    OscillatorSpec("dwo", 1.0, 10.0),
    OscillatorSpec("sho", 1.0, 0.0),
    OscillatorSpec("sho", 2.5, 0.0),
]


def test_ground_state_examples():
    # 30-digit reference values
    aho = lo_energy(OscillatorSpec("aho", 1.0, 1.0), 1)
    assert aho.E_lo == pytest.approx(0.903329275352401, rel=1e-13)
    assert aho.params.h == pytest.approx(0.349643124796249, rel=1e-13)
    assert aho.params.u == pytest.approx(0.448801089125752, rel=1e-13)
    sho = lo_energy(OscillatorSpec("sho", 1.0, 0.0), LevelIndex.from_ns(0))
    assert sho.E_lo == pytest.approx(0.567861808386612, rel=1e-13)
    assert sho.params.h == pytest.approx(0.283930904193306, rel=1e-13)


@pytest.mark.parametrize("spec", SPECS, ids=repr)
def test_closed_form_matches_direct_average(spec):
    ns = np.arange(1, 60)
    u, _, E = solve_levels(spec, ns)
    assert np.allclose(E, expectation_H(spec, ns, u), rtol=1e-12, atol=0)


@pytest.mark.parametrize("spec", SPECS, ids=repr)
def test_width_is_stationary_minimum(spec):
    for n in (1, 2, 7, 30):
        u = lo_energy(spec, n).params.u
        eps = 1e-4 * u
        Hp, H0, Hm = (expectation_H(spec, n, u + s) for s in (eps, 0.0, -eps))
        # central first derivative vanishes relative to the curvature scale
        assert abs(Hp - Hm) / (2 * eps) <= 1e-6 * abs(Hp - 2 * H0 + Hm) / eps**2 * u
        assert Hp > H0 and Hm > H0


@pytest.mark.parametrize("spec", SPECS, ids=repr)
def test_depth_reproduces_average(spec):
    # the well eigenvalue n^2 pi^2 u / 8 plus the depth equals <H>
    ns = np.arange(1, 40)
    u, h, E = solve_levels(spec, ns)
    assert np.allclose(ns**2 * np.pi**2 * u / 8 + h, E, rtol=1e-12)
    assert np.allclose(depth(spec, ns, u), h, rtol=0, atol=0)


def test_sho_virial_split():
    # stationarity makes kinetic and potential averages equal
    spec = OscillatorSpec("sho", 1.0, 0.0)
    ns = np.arange(1, 100)
    u, h, E = solve_levels(spec, ns)
    assert np.allclose(ns**2 * np.pi**2 * u / 8, h, rtol=1e-13)


@pytest.mark.parametrize("kappa", [0.5, 8.0, 1000.0])
def test_pure_quartic_scaling(kappa):
    # without the quadratic term E scales as lam**(1/3)
    spec = OscillatorSpec("aho", 1.0, 1.0)
    n = 3
    base = cubic.coefficients(spec, n)
    u1 = cubic.solve_positive_root("aho", cubic.CubicCoefficients(0.0, base.Q, 0.0))
    uk = cubic.solve_positive_root("aho", cubic.CubicCoefficients(0.0, kappa * base.Q, 0.0))
    no_quad = OscillatorSpec("aho", 1e-300, 1.0)
    e1 = expectation_H(no_quad, n, u1)
    ek = expectation_H(OscillatorSpec("aho", 1e-300, kappa), n, uk)
    assert ek == pytest.approx(kappa ** (1 / 3) * e1, rel=1e-12)


@pytest.mark.parametrize("spec", SPECS, ids=repr)
def test_energies_increase_with_level(spec):
    _, _, E = solve_levels(spec, np.arange(1, 500))
    assert np.all(np.diff(E) > 0)


def test_aho_energy_increases_with_lambda():
    lams = np.geomspace(0.01, 1000, 50)
    for n in (1, 4):
        E = [lo_energy(OscillatorSpec("aho", 1.0, lam), n).E_lo for lam in lams]
        assert np.all(np.diff(E) > 0)


def test_sho_asymptotic_ratio():
    assert sho_asymptotic_ratio() == pytest.approx(0.906899682117109, rel=1e-15)
    spec = OscillatorSpec("sho", 1.0, 0.0)
    n_s = 10_000
    E = lo_energy(spec, LevelIndex.from_ns(n_s)).E_lo
    assert E / (n_s + 0.5) == pytest.approx(sho_asymptotic_ratio(), rel=1e-4)


def test_sho_scales_with_frequency():
    # omega = sqrt(g): energies scale linearly with it
    E1 = lo_energy(OscillatorSpec("sho", 1.0, 0.0), 5).E_lo
    E4 = lo_energy(OscillatorSpec("sho", 4.0, 0.0), 5).E_lo
    assert E4 == pytest.approx(2.0 * E1, rel=1e-14)


def test_dwo_reference_shift():
    assert dwo_ref_energy(0.3, 0.1) == pytest.approx(0.3 + 0.625, rel=1e-15)
    assert dwo_ref_energy(0.0, 2.0, g=2.0) == pytest.approx(0.125, rel=1e-15)
    with pytest.raises(ValueError):
        dwo_ref_energy(1.0, 0.0)


def test_lo_energy_accepts_int_as_well_index():
    spec = OscillatorSpec("aho", 1.0, 1.0)
    assert lo_energy(spec, 3) == lo_energy(spec, LevelIndex(3))
    assert lo_energy(spec, 3).level.n_s == 2


def test_scalar_api_matches_vectorized():
    spec = OscillatorSpec("dwo", 1.0, 1.0)
    u, h, E = solve_levels(spec, np.arange(1, 11))
    for i, n in enumerate(range(1, 11)):
        w = lo_energy(spec, n)
        assert (w.params.u, w.params.h, w.E_lo) == pytest.approx((u[i], h[i], E[i]), rel=1e-15)
    assert math.isfinite(expectation_H(spec, 1, 0.5))
