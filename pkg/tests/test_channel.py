import math

import numpy as np
import pytest

from dense_ee import (GeometryRealization, TermCheck, draw_channels, example_geometry,
                      validate_effective_sinr_terms)
from dense_ee.channel import closed_form_terms
from dense_ee.geometry import trial_rng


def by_name(report):
    return {t.name: t for t in report}


def test_interference_free_reduction():
    geom = GeometryRealization.interference_free(0.1, 2)
    M, K, x = 4, 2, 0.1
    rep = by_name(validate_effective_sinr_terms(geom, M, K, 1.0, x, 0.0, 200_000, seed=1))
    want = M / ((K + x) * (1 + x))
    assert rep["sinr"].closed_form == pytest.approx(want)
    assert rep["sinr"].passed(0.01)


def test_desired_power_term():
    geom = example_geometry(K=2)
    rep = by_name(validate_effective_sinr_terms(geom, 4, 2, 2.0, 0.1, 0.05, 200_000, seed=2))
    assert rep["desired"].closed_form == pytest.approx(0.9975 * 4)
    assert rep["desired"].passed(0.01)


def test_coherent_contamination_example():
    alpha, M, beta, eps = 3.76, 4, 2.0, 0.0
    cross = 0.4
    geom = GeometryRealization(0.1, np.array([0.1, 0.0]), np.array([[0.4, 0.0]]),
                               np.array([[0.5 * cross, 0.3 * cross]]),
                               np.array([[cross, cross]]))
    cf = closed_form_terms(geom, M, alpha, beta, 0.1, eps)
    assert cf["coherent_contamination"] == pytest.approx((0.5 ** alpha) ** 2 * M / beta)
    rep = by_name(validate_effective_sinr_terms(geom, M, 2, beta, 0.1, eps, 1_000_000, seed=3))
    assert rep["coherent_contamination"].passed(0.02)


def test_exact_at_zero_impairment():
    rep = validate_effective_sinr_terms(example_geometry(K=2), 4, 2, 2.0, 0.1, 0.0, 300_000,
                                        seed=4)
    for t in rep:
        if t.name != "sinr":
            assert abs(t.estimate - t.closed_form) <= 4 * t.sem, t


def test_sampled_statistics():
    geom = example_geometry(K=2)
    b = draw_channels(geom, 4, 3.76, 2.0, 0.1, 0.05, 100_000, trial_rng(0, 0))
    var = np.mean(np.abs(b.h_own[:, 0, :]) ** 2)
    assert var == pytest.approx(0.1 ** -3.76, rel=0.02)
    var = np.mean(np.abs(b.h_other[:, 1, 0, :]) ** 2)
    assert var == pytest.approx(geom.cross_dist[1, 0] ** -3.76, rel=0.02)
    assert b.collide.mean() == pytest.approx(0.5, abs=0.01)
    assert np.mean(np.abs(b.distortion) ** 2) == pytest.approx(0.0025, rel=0.02)
    assert b.size == 100_000


def test_deterministic():
    geom = example_geometry(K=2)
    a = validate_effective_sinr_terms(geom, 4, 2, 2.0, 0.1, 0.05, 20_000, seed=5, chunk=5_000)
    b = validate_effective_sinr_terms(geom, 4, 2, 2.0, 0.1, 0.05, 20_000, seed=5, chunk=5_000)
    assert a == b


def test_term_check():
    t = TermCheck("x", 2.0, 2.02, 0.01)
    assert t.rel_err == pytest.approx(0.01) and t.passed(0.02) and not t.passed(0.005)
    assert TermCheck("z", 0.0, 0.1, 0.0).rel_err == 0.1


def test_rejects():
    geom = example_geometry(K=2)
    with pytest.raises(ValueError):
        validate_effective_sinr_terms(geom, 4, 3, 2.0, 0.1, 0.0, 100)
    with pytest.raises(ValueError):
        validate_effective_sinr_terms(geom, 4, 2, 0.5, 0.1, 0.0, 100)
    with pytest.raises(ValueError):
        example_geometry(ratios=(1.5,))
