"""Two-term counterexample family and the norm-chain example."""

import math

import numpy as np
import pytest

from blochfun.constructions import (
    counterexample_function,
    counterexample_verify,
    example42_build,
    example42_verify,
    hmax_closed_form,
    proof_bound_values,
    scan_norm_threshold,
    threshold_N,
    u_value,
)
from blochfun.norm import coefficient_bound_Bn


# ---------------------------------------------------------------------------
# threshold and construction
# ---------------------------------------------------------------------------

def test_threshold_values():
    assert threshold_N(0.0) == 219      # ceil(4 e^4)
    assert threshold_N(0.5) == 47696    # ceil(16 e^8)
    assert threshold_N(0.25) == 1316
    # monotone increasing toward t = 1
    assert threshold_N(0.6) > threshold_N(0.5) > threshold_N(0.0)
    with pytest.raises(ValueError):
        threshold_N(1.0)


def test_counterexample_function_values():
    f = counterexample_function(0.0, 2)
    assert f.coeffs[0] == 1.0  # leading coefficient is exactly 1
    assert f.coeffs[1].real == pytest.approx(math.sqrt(27 / 16 - 2 ** -0.5), abs=1e-15)
    f = counterexample_function(0.0, 219)
    want = math.sqrt(coefficient_bound_Bn(219) ** 2 - 219 ** -0.5)
    assert f.coeffs[218].real == pytest.approx(want, abs=1e-15)
    with pytest.raises(ValueError):
        counterexample_function(1.0, 10)
    with pytest.raises(ValueError):
        counterexample_function(0.0, 1)


def test_counterexample_margin_identity():
    # F(f_n; n, t) - n^t B_n^2 collapses to 1 - n^(-(1-t)/2)
    for t, n in [(0.0, 219), (0.5, 47696), (0.25, 7), (0.9, 3)]:
        rep = counterexample_verify(t, n)
        assert rep.epsilon == (1 - t) / 2
        assert abs(rep.functional_margin - (1 - n ** (-(1 - t) / 2))) < 1e-12


def test_counterexample_above_threshold_norm_ok():
    rep = counterexample_verify(0.0, 219)
    assert rep.norm_ok and rep.norm.value <= 1 + 1e-10
    assert rep.functional_margin == pytest.approx(0.932426, abs=1e-6)


def test_counterexample_below_threshold_reports_observation():
    rep = counterexample_verify(0.0, 2)
    assert rep.functional_margin > 0
    # the two-term function with n = 2 lies far outside the unit ball
    assert rep.norm_ok is False and rep.norm.value > 1.4


# ---------------------------------------------------------------------------
# h(r) closed form
# ---------------------------------------------------------------------------

def _hmax_grid_oracle(n, b):
    """Independent 1-D maximization: dense grid plus golden section."""
    r = np.linspace(0.0, 1.0, 20001)
    h = n * b * r ** (n - 3) * (1 - r * r) if n > 3 else n * b * (1 - r * r)
    i = int(np.argmax(h))
    lo, hi = r[max(i - 1, 0)], r[min(i + 1, len(r) - 1)]
    phi = (math.sqrt(5) - 1) / 2

    def f(x):
        return n * b * x ** (n - 3) * (1 - x * x)

    x1, x2 = hi - phi * (hi - lo), lo + phi * (hi - lo)
    f1, f2 = f(x1), f(x2)
    for _ in range(80):
        if f1 >= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - phi * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + phi * (hi - lo)
            f2 = f(x2)
    return max(f1, f2, float(h[i]))


def test_hmax_examples():
    assert hmax_closed_form(5, 0.5) == pytest.approx(0.625, abs=1e-15)
    assert hmax_closed_form(3, 1.0) == 3.0  # 0^0 = 1 convention, max at r = 0
    assert hmax_closed_form(4, 1.0) == pytest.approx(4 * math.sqrt(1 / 3) * 2 / 3, abs=1e-14)
    with pytest.raises(ValueError):
        hmax_closed_form(2, 1.0)
    with pytest.raises(ValueError):
        hmax_closed_form(5, 0.0)


def test_hmax_against_grid_oracle():
    for n in (3, 4, 5, 9, 17, 40):
        for b in (0.1, 0.5, 1.3):
            want = _hmax_grid_oracle(n, b)
            got = hmax_closed_form(n, b)
            assert abs(got - want) <= 1e-10 * max(1.0, abs(want))


# ---------------------------------------------------------------------------
# norm-chain example
# ---------------------------------------------------------------------------

def test_example42_build_shapes():
    f, F, p = example42_build(2, 0.2)
    b2 = coefficient_bound_Bn(2)
    assert np.allclose(f.as_array(), [1, b2, -0.2 / 3])
    assert np.allclose(F.as_array(), [1, b2, +0.2 / 3])
    assert np.allclose(p.as_array(), [1, b2])
    assert sum(1 for c in p.coeffs if c != 0) == 2
    with pytest.raises(ValueError):
        example42_build(1, 0.1)
    with pytest.raises(ValueError):
        example42_build(3, 0.3)


def test_example42_chain_at_anchor():
    rep = example42_verify(2, 0.2)
    assert rep.chain_ok
    assert rep.norm_p.value == pytest.approx(1.7306739079148084, abs=1e-3)
    assert rep.norm_F.value > rep.norm_p.value > rep.norm_f.value > 0
    assert rep.norm_p.value > 1 + 1e-6


def test_example42_chain_small_sweep():
    for n in (2, 5, 10):
        for eps in (0.05, 0.2):
            rep = example42_verify(n, eps)
            assert rep.chain_ok, (n, eps)


# ---------------------------------------------------------------------------
# the u quadratic
# ---------------------------------------------------------------------------

def test_u_value_reductions():
    # R = 0 collapses to 1
    assert u_value(0.37, 5, 0.1, 0.0) == 1.0
    # eps = 0: u(x) = 1 + 2 n B_n R x + n^2 B_n^2 R^2, so u(1) = (1 + n B_n R)^2
    a = 3 * coefficient_bound_Bn(3)
    R = 0.6
    assert u_value(1.0, 3, 0.0, R) == pytest.approx((1 + a * R) ** 2, rel=1e-14)
    assert u_value(0.2, 3, 0.0, R) == pytest.approx(1 + 2 * a * R * 0.2 + a * a * R * R, rel=1e-14)


def test_u_value_anchor_and_alt_form():
    got = u_value(1.0, 2, 0.1, 0.5)
    a = 2 * coefficient_bound_Bn(2)
    eR2 = 0.1 * 0.25
    alt = (1 + a * 0.5) ** 2 + eR2 * (eR2 - 2 - 2 * a * 0.5)
    assert abs(got - alt) < 1e-10
    assert got == pytest.approx(5.171249306069483, abs=1e-9)


def test_u_value_monotone_on_interval():
    rng = np.random.default_rng(12)
    for _ in range(200):
        n = int(rng.integers(2, 11))
        eps = float(rng.uniform(0, 0.2))
        R = float(rng.uniform(0, 1))
        x = float(rng.uniform(-1, 1 - 1e-6))
        h = 1e-6
        assert u_value(x + h, n, eps, R) >= u_value(x, n, eps, R) - 1e-12


def test_u_value_range_rejection():
    with pytest.raises(ValueError):
        u_value(1.5, 3, 0.1, 0.5)
    with pytest.raises(ValueError):
        u_value(0.5, 3, 0.1, 1.5)


def test_circle_maximum_matches_u_at_one():
    # max over theta of |f'(r e^(i theta))|^2 equals u(1) with R = r^(n-1)
    for n, r in ((2, 0.5), (4, 0.8)):
        f, _, _ = example42_build(n, 0.1)
        d = f.as_array() * np.arange(1, len(f.coeffs) + 1)
        th = 2 * np.pi * np.arange(8192) / 8192
        vals = np.abs(np.polynomial.polynomial.polyval(r * np.exp(1j * th), d)) ** 2
        assert abs(float(vals.max()) - u_value(1.0, n, 0.1, r ** (n - 1))) < 1e-9


# ---------------------------------------------------------------------------
# proof-chain bound and the empirical scan
# ---------------------------------------------------------------------------

def test_proof_bound_sample():
    vals = proof_bound_values(np.arange(219, 100_000))
    assert float(vals.max()) <= 8 * math.e ** 2


def test_scan_structure():
    scan = scan_norm_threshold(0.0)
    assert scan["threshold_N"] == 219
    assert scan["first_norm_ok"] is not None
    assert scan["empirical_onset"] <= 219  # construction enters the ball early
    # everything from the onset up to the proven threshold stays inside
    assert scan["last_norm_violation"] < scan["empirical_onset"]
