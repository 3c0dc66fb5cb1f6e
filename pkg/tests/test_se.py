import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dense_ee import (DesignPoint, GeometryRealization, PropagationParams, asymptotic_sinr,
                      average_sinr, effective_sinr_given_geometry, feasibility_limit,
                      se_lower_bound, sinr_lower_bound)

PROP = PropagationParams()


def point(M=91, K=10, beta=7.0757, rho=math.inf, lam=math.inf):
    return DesignPoint(beta, rho, lam, M, K)


def test_sinr_at_reference_optimum():
    assert sinr_lower_bound(point(), PROP, 0.05) == pytest.approx(3.0, rel=1e-3)


def test_sinr_hand_evaluation():
    # (2)(1 + 1 + 1) + 2*2/2 + (4/4 + 1/3) + 1/3 = 29/3
    prop = PropagationParams(alpha=4.0, noise_var=1.0)
    p = DesignPoint(1.0, 1.0, 5.0, 1, 1)
    assert sinr_lower_bound(p, prop, 0.0) == pytest.approx(3.0 / 29.0, rel=1e-12)


def test_sinr_vanishes_without_power():
    assert sinr_lower_bound(point(rho=0.0, lam=10.0), PROP, 0.05) == 0.0


def test_sinr_rejects_bad_inputs():
    with pytest.raises(ValueError):
        average_sinr(10, 1, 1.0, 0.0, 2.0, 0.0)
    with pytest.raises(ValueError):
        average_sinr(10, 1, 0.5, 0.0, 3.76, 0.0)


def test_se_bound():
    b = se_lower_bound(point(), PROP, 0.05)
    assert b.prelog == pytest.approx(0.823108, rel=1e-5)
    assert b.se == pytest.approx(1.64621, rel=1e-3)
    assert se_lower_bound(point(beta=40.0), PROP, 0.05).se == 0.0
    assert se_lower_bound(point(), PROP, 0.999999).se == pytest.approx(0.0, abs=1e-9)


def test_effective_sinr_without_interference():
    geom = GeometryRealization.interference_free(0.1, 4)
    assert effective_sinr_given_geometry(geom, point(M=100, K=4, beta=1.0), PROP, 0.0) == 25.0
    geom = GeometryRealization.interference_free(0.1, 1)
    # 100 * 0.9975^2 / (1 + 100 * 0.9975 * 0.0025)
    val = effective_sinr_given_geometry(geom, point(M=100, K=1, beta=1.0), PROP, 0.05)
    assert val == pytest.approx(99.500625 / 1.249375, rel=1e-12)
    assert val == pytest.approx(79.64, abs=0.01)


@pytest.mark.parametrize("r", [0.1, 0.5, 1.0])
def test_effective_sinr_one_interferer(r):
    M, K, beta, alpha, eps = 64, 3, 2.0, 3.76, 0.05
    cross = 0.5
    own = cross * r ** (1 / alpha)
    geom = GeometryRealization(0.1, np.array([0.1, 0.0]), np.array([[0.6, 0.0]]),
                               np.full((1, K), own), np.full((1, K), cross))
    e2 = eps ** 2
    want = M * (1 - e2) ** 2 / ((K + K * r) * (1 + r / beta) + M * (1 - e2) * (r * r / beta + e2))
    got = effective_sinr_given_geometry(geom, point(M=M, K=K, beta=beta), PROP, eps)
    assert got == pytest.approx(want, rel=1e-12)


def test_effective_sinr_rejects_nonpositive_distance():
    geom = GeometryRealization(0.1, np.array([0.1, 0.0]), np.array([[0.6, 0.0]]),
                               np.zeros((1, 1)), np.ones((1, 1)))
    with pytest.raises(ValueError):
        effective_sinr_given_geometry(geom, point(K=1, beta=1.0), PROP, 0.0)


def test_feasibility_limit_examples():
    assert feasibility_limit(200, 3, 0.05) == 199.5
    assert feasibility_limit(400, 3.76, 0.0) == pytest.approx(400 * 2.76)
    assert feasibility_limit(400, 3.76, 0.05) == pytest.approx(292.88, abs=0.01)


def test_asymptotic_sinr_examples():
    assert asymptotic_sinr(200, 3, 0.05) == pytest.approx(199.5)
    assert asymptotic_sinr(1, 3, 0.0) == pytest.approx(2.0)
    assert asymptotic_sinr(1e300, 3, 0.0) > 1e299


def test_limit_in_many_antennas():
    p = point(M=10 ** 6, K=10, beta=7.0757)
    assert sinr_lower_bound(p, PROP, 0.05) == pytest.approx(asymptotic_sinr(7.0757, 3.76, 0.05),
                                                              rel=1e-3)


def test_independent_of_density_at_fixed_rho():
    a = sinr_lower_bound(point(rho=1e-19, lam=1.0), PROP, 0.05)
    b = sinr_lower_bound(point(rho=1e-19, lam=1e3), PROP, 0.05)
    assert a == b


@settings(max_examples=200)
@given(M=st.integers(1, 500), K=st.integers(1, 40), beta=st.floats(1, 50),
       x=st.floats(0, 10), alpha=st.floats(2.2, 5), eps=st.floats(0, 0.2))
def test_monotonicity(M, K, beta, x, alpha, eps):
    s = average_sinr(M, K, beta, x, alpha, eps)
    assert average_sinr(M + 1, K, beta, x, alpha, eps) > s
    assert average_sinr(M, K, beta * 1.1, x, alpha, eps) > s
    assert average_sinr(M, K + 1, beta, x, alpha, eps) < s
    assert average_sinr(M, K, beta, x + 0.1, alpha, eps) < s
