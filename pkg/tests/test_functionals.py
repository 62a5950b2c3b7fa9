"""Weighted truncated functionals and elementary comparison bounds."""

import math

import numpy as np
import pytest

from blochfun.functionals import (
    FunctionalSpec,
    crude_bound,
    crude_bound_array,
    functional_value,
    parseval_margin,
    ratio_to_conjectured,
    ratio_to_conjectured_array,
    weight_reduction_check,
)
from blochfun.norm import bn_array, coefficient_bound_Bn
from blochfun.poly import Coefficients


def test_functional_spec_validation():
    with pytest.raises(ValueError):
        FunctionalSpec(0, 1.0)
    with pytest.raises(ValueError):
        FunctionalSpec(3, -0.5)


def test_functional_examples():
    assert functional_value(Coefficients.of(1.0), FunctionalSpec(7, 1.3)) == 1.0
    b2 = coefficient_bound_Bn(2)
    # 2 * B_2^2 = 27/8
    assert abs(functional_value(Coefficients.of(0, b2), FunctionalSpec(2, 1.0)) - 27 / 8) < 1e-13
    # 1 + 9 * 0.25 at (n, t) = (3, 2)
    assert functional_value(Coefficients.of(1, 0, 0.5), FunctionalSpec(3, 2.0)) == pytest.approx(3.25)


def test_functional_ignores_coefficients_beyond_n():
    f = Coefficients.of(1, 0, 0, 5.0)
    assert functional_value(f, FunctionalSpec(2, 1.0)) == 1.0


def test_functional_scaling_quadratic():
    rng = np.random.default_rng(1)
    f = Coefficients(tuple(rng.uniform(-1, 1, 8) + 1j * rng.uniform(-1, 1, 8)))
    spec = FunctionalSpec(6, 1.5)
    base = functional_value(f, spec)
    for _ in range(5):
        c = rng.uniform(0.1, 2.0) * np.exp(1j * rng.uniform(0, 6.28))
        assert functional_value(f.scaled(c), spec) == pytest.approx(abs(c) ** 2 * base, rel=1e-12)


def test_crude_bound_values():
    assert crude_bound(2) == pytest.approx(4.0, abs=1e-14)
    assert crude_bound(3) == pytest.approx(6.75, abs=1e-13)
    assert crude_bound(10) == pytest.approx(25.81174791713197, abs=1e-10)
    with pytest.raises(ValueError):
        crude_bound(1)


def test_ratio_values_and_limit():
    assert abs(ratio_to_conjectured(2) - 32 / 27) < 1e-14
    assert abs(ratio_to_conjectured(10) - 1.40197559792557) < 1e-10
    assert abs(ratio_to_conjectured(10 ** 7) - 4 / math.e) < 1e-6
    with pytest.raises(ValueError):
        ratio_to_conjectured(1)


def test_crude_sandwich_small_range():
    ns = np.arange(2, 2001)
    crude = crude_bound_array(ns)
    nbn2 = ns * bn_array(2000)[1:] ** 2
    assert np.all(crude >= 32 / 27 * nbn2 - 1e-9)
    assert np.all(crude <= 4 / math.e * nbn2 + 1e-9)
    assert np.all(np.diff(ratio_to_conjectured_array(ns)) > 0)


def test_parseval_margin_examples():
    assert parseval_margin(Coefficients.of(1.0), 1, 0.0) == 0.0
    b2 = coefficient_bound_Bn(2)
    # 1/(1-0.5)^2 - 4 B_2^2 0.5 = 4 - 27/8
    assert parseval_margin(Coefficients.of(0, b2), 2, 0.5) == pytest.approx(0.625, abs=1e-13)
    assert parseval_margin(Coefficients.of(0.0), 5, 0.3) == pytest.approx(1 / 0.49, rel=1e-14)


def test_parseval_margin_rejects_bad_rho():
    with pytest.raises(ValueError):
        parseval_margin(Coefficients.of(1.0), 2, 1.0)
    with pytest.raises(ValueError):
        parseval_margin(Coefficients.of(1.0), 2, -0.1)


def test_weight_reduction_examples():
    # 5 <= 2 * 3 at (n, t, s) = (2, 1, 2)
    assert weight_reduction_check(Coefficients.of(1, 1), 2, 1.0, 2.0)
    # equality at s = t
    assert weight_reduction_check(Coefficients.of(1, 1), 2, 1.3, 1.3)
    # single-term equality case
    b3 = coefficient_bound_Bn(3)
    assert weight_reduction_check(Coefficients.of(0, 0, b3), 3, 0.0, 1.0)
    with pytest.raises(ValueError):
        weight_reduction_check(Coefficients.of(1), 2, 1.0, 0.5)


def test_weight_reduction_random():
    rng = np.random.default_rng(4)
    for _ in range(50):
        d = int(rng.integers(1, 10))
        f = Coefficients(tuple(rng.uniform(-1, 1, d) + 1j * rng.uniform(-1, 1, d)))
        t = rng.uniform(0, 2)
        s = t + rng.uniform(0, 2)
        assert weight_reduction_check(f, int(rng.integers(1, 9)), t, s)
