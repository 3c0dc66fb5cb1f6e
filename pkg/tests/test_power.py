import math

import pytest

from dense_ee import (DesignPoint, HardwareParams, PropagationParams, apc, apc_shares, ase,
                      avg_tx_power_per_ue, ee, ee_asymptotic, ee_from_se, optimize_at_density,
                      radiated_power_per_ue, se_lower_bound)
from dense_ee.params import InfeasibleTarget
from dense_ee.power import COMPONENTS, EEBreakdown

PROP = PropagationParams()
HW = HardwareParams()
ZERO_HW = HardwareParams(coding_cost=0.0, static_power=0.0, per_ue_power=0.0,
                         per_antenna_power=0.0, per_antenna_ue_power=0.0)


def test_avg_tx_power():
    assert avg_tx_power_per_ue(2.0, 3.0, 2.0, 5.0) == pytest.approx(6.0 / (5 * math.pi))
    want = 1e-20 * 1e13 * math.gamma(2.88) / (10 * math.pi) ** 1.88
    assert avg_tx_power_per_ue(1e-20, 1e13, 3.76, 10.0) == pytest.approx(want)
    assert math.gamma(2.88) == pytest.approx(1.7958, abs=5e-4)
    r = avg_tx_power_per_ue(1.0, 1.0, 3.76, 10.0) / avg_tx_power_per_ue(1.0, 1.0, 3.76, 20.0)
    assert r == pytest.approx(2 ** 1.88)
    with pytest.raises(ValueError):
        avg_tx_power_per_ue(1.0, 1.0, 3.76, 0.0)


def test_radiated_power():
    tx = avg_tx_power_per_ue(1.0, 1.0, 3.76, 10.0)
    assert radiated_power_per_ue(1.0, 1.0, 3.76, 10.0, 40.1, 10, 400) == pytest.approx(0.0, abs=1e-15)
    duty = radiated_power_per_ue(1.0, 1.0, 3.76, 10.0, 7.0757, 10, 400) / tx
    assert duty == pytest.approx(1 - 69.757 / 400)
    assert duty == pytest.approx(0.82561, abs=1e-5)
    amp = radiated_power_per_ue(1.0, 1.0, 3.76, 10.0, 7.0757, 10, 400, eta=0.39)
    assert amp == pytest.approx(duty * tx / 0.39)
    with pytest.raises(ValueError):
        radiated_power_per_ue(1.0, 1.0, 3.76, 10.0, 41.0, 10, 400)


def test_ase():
    assert ase(10, 10, 1.64621) == pytest.approx(164.621)
    assert ase(0, 10, 1.6) == 0
    assert ase(20, 10, 1.6) == pytest.approx(2 * ase(10, 10, 1.6))


def test_apc_circuit_terms_at_reference_point():
    p = DesignPoint(7.0757, 1e-19, 1.0, 91, 10)
    b = apc(p, HW, PROP)
    circuit = b.static_c0 + b.ue_c1 + b.antenna_d0 + b.processing_d1
    assert circuit == pytest.approx(1.60196e-6, rel=1e-9)
    assert b.coding_a == pytest.approx(1.15e-9 * b.ase, rel=1e-15)
    assert b.total == pytest.approx(math.fsum(b.components().values()), rel=1e-12)
    assert b.ee == pytest.approx(b.ase / b.total, rel=1e-12)


def test_apc_zero_hardware_zero_power():
    b = apc(DesignPoint(1.0, 0.0, 10.0, 10, 1), ZERO_HW, PROP)
    assert b.total == 0.0


def test_apc_rejects_dense_limit():
    with pytest.raises(ValueError):
        apc(DesignPoint(7.0, math.inf, math.inf, 91, 10), HW, PROP)


def test_ee_dense_limit_reference():
    p = DesignPoint(None, math.inf, math.inf, 91, 10)
    assert ee(p, HW, PROP, gamma=3.0) / 1e6 == pytest.approx(10.156, rel=1e-4)


def test_ee_infeasible_target():
    with pytest.raises(InfeasibleTarget):
        ee(DesignPoint(None, math.inf, math.inf, 91, 10), HW, PROP, gamma=400.0)


def test_ee_grows_from_10_to_100():
    assert optimize_at_density(100.0, 3.0, HW, PROP).ee > optimize_at_density(10.0, 3.0, HW, PROP).ee


def test_ee_circuit_free():
    p = DesignPoint(5.0, 1e-19, 10.0, 50, 5)
    se = se_lower_bound(p, PROP, HW.epsilon).se
    rad = radiated_power_per_ue(p.rho, PROP.omega, PROP.alpha, p.lam, p.beta, p.K, PROP.S)
    want = HW.eta * ase(p.lam, p.K, se) / (p.lam * p.K * rad)
    assert ee(p, ZERO_HW, PROP) == pytest.approx(want, rel=1e-12)


def test_ee_asymptotic_reference():
    b = ee_asymptotic(91, 10, 3.0, HW, PROP)
    assert b.per_bs and b.radiated == 0.0
    assert b.ase == pytest.approx(16.4621, rel=1e-4)
    assert b.total == pytest.approx(1.62089e-6, rel=1e-4)
    assert b.ee / 1e6 == pytest.approx(10.156, rel=1e-4)
    ratio = b.ee / ee_asymptotic(10, 1, 3.0, HW, PROP).ee
    assert ratio == pytest.approx(3.14, abs=0.01)


def test_shares_at_optimum():
    s = apc_shares(ee_asymptotic(91, 10, 3.0, HW, PROP))
    assert sum(s.values()) == pytest.approx(1.0)
    assert s["antenna_d0"] == pytest.approx(0.56, abs=0.01)
    assert s["static_c0"] == pytest.approx(0.31, abs=0.01)
    top = sorted(s, key=s.get, reverse=True)[:2]
    assert top == ["antenna_d0", "static_c0"]


def test_shares_edge_cases():
    one = EEBreakdown(0, 3.0, 0, 0, 0, 0, ase=1.0, ee=1.0)
    assert apc_shares(one)["static_c0"] == 1.0
    with pytest.raises(ValueError):
        apc_shares(EEBreakdown(0, 0, 0, 0, 0, 0, ase=0.0, ee=math.nan))
    b = ee_asymptotic(91, 10, 3.0, HW, PROP)
    scaled = EEBreakdown(*(2 * getattr(b, c) for c in COMPONENTS), ase=b.ase, ee=b.ee)
    assert apc_shares(scaled) == pytest.approx(apc_shares(b))


def test_finite_density_approaches_dense_limit():
    dense = ee_asymptotic(91, 10, 3.0, HW, PROP).ee
    assert optimize_at_density(1e4, 3.0, HW, PROP).ee == pytest.approx(dense, rel=5e-3)


def test_ee_from_se_matches_bound():
    p = DesignPoint(5.0, 1e-19, 10.0, 50, 5)
    se = se_lower_bound(p, PROP, HW.epsilon).se
    assert ee_from_se(p, se, HW, PROP) == pytest.approx(ee(p, HW, PROP), rel=1e-12)
