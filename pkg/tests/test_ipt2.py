import numpy as np
import pytest

from ngas_sqwell import ipt2, matel
from ngas_sqwell.errors import NotConverged
from ngas_sqwell.ipt2 import PerturbationOperator, TruncationPolicy
from ngas_sqwell.model import LevelIndex, OscillatorSpec
from ngas_sqwell.spectrum import dwo_ref_energy, lo_energy

GRID = [
    OscillatorSpec(kind, 1.0, lam)
    for kind in ("aho", "dwo")
    for lam in (0.1, 1.0, 10.0, 100.0)
] + [OscillatorSpec("sho", 1.0, 0.0)]


def _op(spec, n):
    well = lo_energy(spec, n)
    return PerturbationOperator.for_level(spec, well), well


def test_operator_signs():
    op, _ = _op(OscillatorSpec("dwo", 2.0, 1.0), 1)
    assert op.quadratic == -1.0
    assert op(0.0) == -op.h
    op, _ = _op(OscillatorSpec("sho", 2.0, 0.0), 1)
    assert op.quadratic == 1.0 and op.lam == 0.0


@pytest.mark.parametrize("spec", GRID, ids=repr)
def test_first_order_vanishes(spec):
    for n_s in range(0, 41):
        op, well = _op(spec, LevelIndex.from_ns(n_s))
        n = well.level.n
        assert abs(ipt2.hprime_element(op, well, n, n)) <= 1e-10 * abs(well.E_lo)
        own = ipt2.hprime_element(op, well, n, n, ket_a=well.params.a)
        assert abs(own) <= 1e-10 * abs(well.E_lo)


def test_parity_selection():
    op, well = _op(OscillatorSpec("aho", 1.0, 1.0), 1)
    assert ipt2.hprime_element(op, well, 1, 2) == 0.0
    assert ipt2.hprime_element(op, well, 1, 2, ket_a=0.9) == 0.0


def test_offdiagonal_element_against_quadrature():
    spec = OscillatorSpec("aho", 1.0, 1.0)
    op, well = _op(spec, 1)
    a = well.params.a

    def by_quadrature(b):
        parts = [
            (op.quadratic, matel.quadrature_integral(2, 1, a, 3, b, a, 1e-15)),
            (op.lam, matel.quadrature_integral(4, 1, a, 3, b, a, 1e-15)),
            (-op.h, matel.quadrature_integral(0, 1, a, 3, b, a, 1e-15)),
        ]
        return sum(c * v for c, v in parts)

    same = ipt2.hprime_element(op, well, 1, 3)
    assert same == pytest.approx(by_quadrature(a), rel=1e-10)
    b = lo_energy(spec, 3).params.a
    own = ipt2.hprime_element(op, well, 1, 3, ket_a=b)
    assert own == pytest.approx(by_quadrature(b), rel=1e-10)


@pytest.mark.parametrize(
    "spec, n_s, expected",
    [
        (OscillatorSpec("sho", 1.0, 0.0), 0, 0.5091),
        (OscillatorSpec("aho", 1.0, 0.1), 0, 0.5748),
        (OscillatorSpec("aho", 1.0, 1.0), 1, 2.7999),
        (OscillatorSpec("sho", 1.0, 0.0), 10, 10.3945),
    ],
)
def test_published_anchors(spec, n_s, expected):
    assert ipt2.e2(spec, LevelIndex.from_ns(n_s)) == pytest.approx(expected, rel=5e-3)


def test_dwo_anchor_with_reference_shift():
    spec = OscillatorSpec("dwo", 1.0, 0.1)
    e = dwo_ref_energy(ipt2.e2(spec, LevelIndex.from_ns(0)), spec.lam, spec.g)
    assert e == pytest.approx(0.4726, rel=5e-3)


@pytest.mark.parametrize("intermediate", ["own", "shared"])
@pytest.mark.parametrize("spec", GRID, ids=repr)
def test_ground_state_correction_is_negative(spec, intermediate):
    res = ipt2.delta2(spec, 1, intermediate=intermediate)
    assert res.delta2 <= 0.0
    assert res.converged
    assert res.achieved_tol <= 1e-12


@pytest.mark.parametrize("intermediate", ["own", "shared"])
@pytest.mark.parametrize("eta", [0.0, 0.3, 1.7, -2.0])
def test_eta_squared_scaling(intermediate, eta):
    spec = OscillatorSpec("aho", 1.0, 1.0)
    trunc = TruncationPolicy(tol=0.0, m_max=4001)
    base = ipt2.delta2(spec, 3, trunc=trunc, intermediate=intermediate).delta2
    scaled = ipt2.delta2(spec, 3, trunc=trunc, intermediate=intermediate, eta=eta).delta2
    assert scaled == pytest.approx(eta * eta * base, rel=1e-14, abs=0)


@pytest.mark.parametrize("spec", GRID, ids=repr)
def test_doubling_cap_is_stable(spec):
    for n_s in (0, 4, 10):
        lv = LevelIndex.from_ns(n_s)
        one = ipt2.delta2(spec, lv)
        # a doubled cap with no early exit sums strictly more terms
        two = ipt2.delta2(spec, lv, trunc=TruncationPolicy(tol=0.0, m_max=2 * one.m_last))
        assert two.m_last > one.m_last
        assert abs(two.delta2 - one.delta2) <= 1e-8 * abs(one.delta2)


def test_strict_mode_raises_with_partial_result():
    spec = OscillatorSpec("aho", 1.0, 1.0)
    trunc = TruncationPolicy(m_max=200)
    res = ipt2.delta2(spec, 1, trunc=trunc)
    assert not res.converged and res.m_last <= 200
    with pytest.raises(NotConverged) as info:
        ipt2.delta2(spec, 1, trunc=trunc, strict=True)
    assert info.value.result == res
    with pytest.raises(NotConverged):
        ipt2.e2(spec, 1, trunc=trunc)


def test_only_same_parity_terms_counted():
    res = ipt2.delta2(OscillatorSpec("sho", 1.0, 0.0), 2, trunc=TruncationPolicy(tol=0.0, m_max=20))
    # m = 4, 6, ..., 20
    assert res.n_terms == 9 and res.m_last == 20


def test_shared_denominators_are_box_gaps():
    spec = OscillatorSpec("aho", 1.0, 0.1)
    op, well = _op(spec, 1)
    u = well.params.u
    ms = np.arange(3, 4001, 2)
    el = ipt2.hprime_element(op, well, 1, ms)
    expected = np.sum(el**2 / ((1 - ms**2) * np.pi**2 * u / 8))
    got = ipt2.delta2(spec, 1, trunc=TruncationPolicy(tol=0.0, m_max=4000), intermediate="shared").delta2
    assert got == pytest.approx(expected, rel=1e-13)


def test_rejects_unknown_intermediate():
    with pytest.raises(ValueError):
        ipt2.delta2(OscillatorSpec("sho"), 1, intermediate="mixed")


def test_truncation_policy_validation():
    with pytest.raises(ValueError):
        TruncationPolicy(tol=-1.0)
    with pytest.raises(ValueError):
        TruncationPolicy(m_max=0)
