"""Extremal search machinery: objective, gauge, optimizer, oracle, lemmas."""

import cmath
import math

import numpy as np
import pytest

from blochfun.functionals import FunctionalSpec, functional_value
from blochfun.norm import coefficient_bound_Bn, seminorm_radial
from blochfun.poly import Coefficients
from blochfun.search import (
    SearchConfig,
    brute_force_oracle,
    gauge_normalize,
    lemma_bound_check,
    lemma_perturbation,
    marty_residual,
    rayleigh_objective,
    search_extremal,
)


def monomial(n, c):
    return Coefficients(tuple([0.0] * (n - 1) + [c]))


# ---------------------------------------------------------------------------
# Rayleigh objective
# ---------------------------------------------------------------------------

def test_rayleigh_at_certificate():
    b2 = coefficient_bound_Bn(2)
    assert rayleigh_objective(monomial(2, b2), FunctionalSpec(2, 1.0)) == pytest.approx(3.375, abs=1e-9)
    # scale invariance
    assert rayleigh_objective(monomial(2, 2 * b2), FunctionalSpec(2, 1.0)) == pytest.approx(3.375, abs=1e-9)
    assert rayleigh_objective(Coefficients.of(1.0), FunctionalSpec(4, 1.0)) == pytest.approx(1.0, abs=1e-10)


def test_rayleigh_scale_invariance_random():
    rng = np.random.default_rng(6)
    f = Coefficients(tuple(rng.uniform(-1, 1, 5) + 1j * rng.uniform(-1, 1, 5)))
    spec = FunctionalSpec(4, 1.0)
    base = rayleigh_objective(f, spec, tol=1e-12)
    for _ in range(4):
        c = rng.uniform(0.2, 4.0) * cmath.exp(1j * rng.uniform(0, 6.28))
        assert abs(rayleigh_objective(f.scaled(c), spec, tol=1e-12) - base) < 1e-10


def test_rayleigh_rejects_zero():
    with pytest.raises(ValueError):
        rayleigh_objective(Coefficients.of(0.0), FunctionalSpec(2, 1.0))


# ---------------------------------------------------------------------------
# gauge normalization
# ---------------------------------------------------------------------------

def test_gauge_single_coefficient():
    g = gauge_normalize(Coefficients.of(0, 1j))
    assert g.coeffs[1] == 1.0 and g.coeffs[0] == 0


def test_gauge_two_phases_made_real():
    f = Coefficients.of(cmath.exp(1j * math.pi / 3), cmath.exp(2j * math.pi / 3))
    g = gauge_normalize(f)
    assert abs(g.coeffs[0].imag) == 0 and abs(g.coeffs[1].imag) == 0
    assert g.coeffs[0].real >= 0 and g.coeffs[1].real >= 0
    r1 = rayleigh_objective(f, FunctionalSpec(2, 1.0), tol=1e-13)
    r2 = rayleigh_objective(g, FunctionalSpec(2, 1.0), tol=1e-13)
    assert abs(r1 - r2) < 1e-12


def test_gauge_fixes_real_nonneg_input():
    f = Coefficients.of(0.4, 0.0, 1.1)
    assert gauge_normalize(f).coeffs == f.coeffs


def test_gauge_invariance_random():
    rng = np.random.default_rng(8)
    for _ in range(8):
        d = int(rng.integers(2, 8))
        f = Coefficients(tuple(rng.uniform(-1, 1, d) + 1j * rng.uniform(-1, 1, d)))
        g = gauge_normalize(f)
        assert np.allclose(np.abs(g.as_array()), np.abs(f.as_array()), atol=1e-14)
        spec = FunctionalSpec(d, 1.0)
        assert abs(rayleigh_objective(f, spec, tol=1e-12)
                   - rayleigh_objective(g, spec, tol=1e-12)) < 1e-10


def test_gauge_rejects_zero():
    with pytest.raises(ValueError):
        gauge_normalize(Coefficients.of(0.0, 0.0))


# ---------------------------------------------------------------------------
# search (small smoke configurations; the full runs live in acceptance)
# ---------------------------------------------------------------------------

def test_search_small_complex():
    res = search_extremal(SearchConfig(n=2, t=1.0, restarts=6, seed=7))
    assert res.objective == pytest.approx(3.375, abs=1e-6)
    assert res.objective >= 2 * coefficient_bound_Bn(2) ** 2 - 1e-8
    assert res.vs_crude is not None and res.vs_crude <= 1e-8
    assert seminorm_radial(Coefficients(tuple(c.real for c in res.best.coeffs))).value == pytest.approx(1.0, abs=1e-8)
    assert len(res.trace) == 6
    assert res.tail_mass < 1e-6
    assert res.marty_residual <= 1e-6


def test_search_small_nonneg():
    res = search_extremal(SearchConfig(n=3, t=1.0, restarts=6, nonneg=True, seed=1))
    want = 3 * coefficient_bound_Bn(3) ** 2
    assert res.objective == pytest.approx(want, rel=1e-6)
    # degree cap defaults to n for the restricted problem
    assert len(res.best.coeffs) == 3
    assert res.marty_residual == 0.0


def test_search_t2_case():
    # easy sharp case: sup is n^2 B_n^2
    res = search_extremal(SearchConfig(n=2, t=2.0, restarts=6, seed=2))
    assert res.objective == pytest.approx(4 * coefficient_bound_Bn(2) ** 2, rel=1e-5)
    assert res.vs_crude is None


def test_search_config_validation():
    with pytest.raises(ValueError):
        SearchConfig(n=0)
    with pytest.raises(ValueError):
        SearchConfig(n=3, degree_cap=2)
    with pytest.raises(ValueError):
        SearchConfig(n=2, restarts=0)
    with pytest.raises(ValueError):
        SearchConfig(n=2, tol=0.0)


def test_search_result_serialization():
    res = search_extremal(SearchConfig(n=2, t=1.0, restarts=4, seed=5))
    doc = res.to_json()
    assert set(doc) == {"n", "t", "objective", "coeffs", "marty_residual",
                        "tail_mass", "vs_conjectured", "vs_crude", "trace"}
    assert len(doc["trace"]) == 4


# ---------------------------------------------------------------------------
# brute-force oracle
# ---------------------------------------------------------------------------

def test_oracle_guards():
    with pytest.raises(ValueError):
        brute_force_oracle(4, 1.0, 1e-2)
    with pytest.raises(ValueError):
        brute_force_oracle(2, 1.0, 0.05)


def test_oracle_n2_t1_coarse():
    got = brute_force_oracle(2, 1.0, 5e-3)
    assert abs(got - 3.375) < 5e-3


def test_oracle_n2_t2():
    got = brute_force_oracle(2, 2.0, 5e-3)
    assert abs(got - 6.75) < 1e-2


def test_oracle_n2_t0_lower_bound():
    got = brute_force_oracle(2, 0.0, 1e-2)
    assert got >= coefficient_bound_Bn(2) ** 2 - 1e-6


# ---------------------------------------------------------------------------
# lemma operators
# ---------------------------------------------------------------------------

def test_lemma_perturbation_worked_example():
    f = Coefficients.of(0.5, 0.0, 0.5)
    g, delta = lemma_perturbation(f, 1, 3)
    assert np.allclose(g.as_array(), [0, 0, 2 / 3])
    assert delta == pytest.approx(1 / 3, abs=1e-15)
    spec = FunctionalSpec(3, 1.0)
    assert delta == pytest.approx(functional_value(g, spec) - functional_value(f, spec), abs=1e-14)


def test_lemma_perturbation_zero_coefficient():
    f = Coefficients.of(0.0, 0.7)
    g, delta = lemma_perturbation(f, 1, 2)
    assert g.coeffs == f.coeffs and delta == 0.0


def test_lemma_perturbation_z_to_half_z2():
    g, delta = lemma_perturbation(Coefficients.of(1.0), 1, 2)
    assert np.allclose(g.as_array(), [0, 0.5])
    assert delta == pytest.approx(-0.5)


def test_lemma_perturbation_norm_monotone():
    rng = np.random.default_rng(3)
    for _ in range(10):
        d = int(rng.integers(2, 8))
        f = Coefficients(tuple(rng.uniform(0, 1, d).astype(complex)))
        k = int(rng.integers(1, d))
        m = int(rng.integers(k + 1, d + 1))
        g, _ = lemma_perturbation(f, k, m)
        assert seminorm_radial(g).value <= seminorm_radial(f).value + 1e-10


def test_lemma_perturbation_rejections():
    with pytest.raises(ValueError):
        lemma_perturbation(Coefficients.of(1.0, 1.0), 2, 2)
    with pytest.raises(ValueError):
        lemma_perturbation(Coefficients.of(-1.0, 1.0), 1, 2)


def test_lemma_bound_check_examples():
    b9 = coefficient_bound_Bn(9)
    assert lemma_bound_check(monomial(9, b9), 9) == []
    out = lemma_bound_check(Coefficients.of(1.0, 1.0), 2)
    assert out == [(1, 2, pytest.approx(-0.75))]
    out = lemma_bound_check(Coefficients.of(1.0, 0.2), 2)
    assert out[0][2] == pytest.approx(0.05)


def test_marty_residual_examples():
    assert marty_residual(monomial(5, coefficient_bound_Bn(5)), 5) == 0.0
    assert marty_residual(Coefficients.of(1.0, 1.0), 1) == pytest.approx(2.0)
    # degree <= n means b_{n+1} = 0
    assert marty_residual(Coefficients.of(1.0, 1.0), 2) == 0.0
    with pytest.raises(ValueError):
        marty_residual(Coefficients.of(1.0), 0)
