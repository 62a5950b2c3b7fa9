"""Explicit extremal-adjacent families and their verification.

Two constructions are implemented:

* the two-term family f_n(z) = z + b_n z^n with
  b_n = sqrt(B_n^2 - n^(-(t+eps))), eps = (1-t)/2, which beats the bound
  n^t B_n^2 for every weight exponent t < 1 once n passes an explicit
  threshold N(t) = ceil((2 e^2)^(2/(1-t))), while staying inside the unit
  ball;
* the norm-chain family f = z + B_n z^n - (eps/(2n-1)) z^(2n-1),
  F = z + B_n z^n + (eps/(2n-1)) z^(2n-1), p = z + B_n z^n, for which
  ||F|| > ||p|| > ||f|| and ||p|| > 1: flipping a coefficient sign can
  strictly shrink the norm (the unit ball is not solid), and truncation
  can push a unit-ball function outside the ball.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .functionals import FunctionalSpec, functional_value
from .norm import (
    NormResult,
    coefficient_bound_Bn,
    seminorm_general,
    seminorm_radial,
)
from .poly import Coefficients

__all__ = [
    "CounterexampleReport",
    "Example42Report",
    "threshold_N",
    "counterexample_function",
    "counterexample_verify",
    "hmax_closed_form",
    "example42_build",
    "example42_verify",
    "u_value",
    "proof_bound_values",
    "scan_norm_threshold",
]

NORM_OK_SLACK = 1e-10  # norm_ok means value <= 1 + this evaluation slack


@dataclass(frozen=True)
class CounterexampleReport:
    """One verified instance of the two-term construction."""

    t: float
    epsilon: float
    threshold_N: int
    n: int
    b_n: float
    norm: NormResult
    functional_margin: float
    norm_ok: bool

    def to_json(self) -> dict:
        return {
            "t": self.t,
            "epsilon": self.epsilon,
            "threshold_N": self.threshold_N,
            "n": self.n,
            "b_n": self.b_n,
            "norm": self.norm.to_json(),
            "functional_margin": self.functional_margin,
            "norm_ok": self.norm_ok,
        }


@dataclass(frozen=True)
class Example42Report:
    """Norm chain ||F|| > ||p|| > ||f|| with ||p|| > 1."""

    n: int
    epsilon: float
    norm_f: NormResult
    norm_p: NormResult
    norm_F: NormResult
    chain_ok: bool

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "epsilon": self.epsilon,
            "norm_f": self.norm_f.to_json(),
            "norm_p": self.norm_p.to_json(),
            "norm_F": self.norm_F.to_json(),
            "chain_ok": self.chain_ok,
        }


def threshold_N(t: float) -> int:
    """Smallest integer >= (2 e^2)^(2/(1-t)), t < 1; log-space evaluation."""
    if not (t < 1.0):
        raise ValueError("threshold requires t < 1")
    return int(math.ceil(math.exp(2.0 / (1.0 - t) * (math.log(2.0) + 2.0))))


def counterexample_function(t: float, n: int) -> Coefficients:
    """f_n(z) = z + b_n z^n with b_n = sqrt(B_n^2 - n^(-(1+t)/2)).

    The exponent is t + eps with eps = (1-t)/2.  The radicand is positive
    for every n >= 2 since B_n >= B_2 > 1 (guarded anyway).
    """
    if not (t < 1.0):
        raise ValueError("construction requires t < 1")
    if n < 2:
        raise ValueError("construction requires n >= 2")
    bn_sq = coefficient_bound_Bn(n) ** 2 - float(n) ** (-(1.0 + t) / 2.0)
    if bn_sq <= 0.0:
        raise ValueError(f"radicand non-positive at t={t}, n={n}")
    coeffs = np.zeros(n, dtype=complex)
    coeffs[0] = 1.0
    coeffs[n - 1] = math.sqrt(bn_sq)
    return Coefficients(tuple(coeffs))


def counterexample_verify(t: float, n: int) -> CounterexampleReport:
    """Certify one instance: radial norm at most 1 and functional margin.

    The margin F(f_n; n, t) - n^t B_n^2 collapses to 1 - n^(-(1-t)/2) in
    closed form.  For n >= threshold_N(t) the norm test must pass; below
    the threshold the observed boolean is reported as-is (the smallest n
    where the construction enters the ball is interesting output, and
    nothing is guaranteed there).
    """
    f = counterexample_function(t, n)
    eps = (1.0 - t) / 2.0
    nv = seminorm_radial(f, 1e-10)
    bn2 = coefficient_bound_Bn(n) ** 2
    margin = functional_value(f, FunctionalSpec(n, t)) - float(n) ** t * bn2
    return CounterexampleReport(
        t=t,
        epsilon=eps,
        threshold_N=threshold_N(t),
        n=n,
        b_n=float(f.coeffs[n - 1].real),
        norm=nv,
        functional_margin=margin,
        norm_ok=bool(nv.value <= 1.0 + NORM_OK_SLACK),
    )


def hmax_closed_form(n: int, b: float) -> float:
    """max over [0, 1] of h(r) = n b r^(n-3) (1 - r^2).

    Equals n b ((n-3)/(n-1))^((n-3)/2) * 2/(n-1), attained at
    r = sqrt((n-3)/(n-1)); the convention 0^0 = 1 covers n = 3, where the
    maximum sits at r = 0 with value 3b.  Log-space power for large n.
    """
    if n < 3:
        raise ValueError("closed form requires n >= 3")
    if not (b > 0):
        raise ValueError("b must be positive")
    if n == 3:
        return 3.0 * b
    power = math.exp((n - 3) / 2.0 * math.log1p(-2.0 / (n - 1)))
    return n * b * power * 2.0 / (n - 1)


def example42_build(n: int, epsilon: float) -> tuple[Coefficients, Coefficients, Coefficients]:
    """(f, F, p) with f = z + B_n z^n - (eps/(2n-1)) z^(2n-1), F its
    sign-flipped companion, p = z + B_n z^n."""
    if n < 2:
        raise ValueError("n must be >= 2")
    if not (0.0 < epsilon <= 0.2):
        raise ValueError("epsilon must lie in (0, 1/5]")
    bn = coefficient_bound_Bn(n)
    c = epsilon / (2 * n - 1)
    f = np.zeros(2 * n - 1, dtype=complex)
    f[0] = 1.0
    f[n - 1] = bn
    F = f.copy()
    f[2 * n - 2] = -c
    F[2 * n - 2] = c
    p = np.zeros(n, dtype=complex)
    p[0] = 1.0
    p[n - 1] = bn
    return Coefficients(tuple(f)), Coefficients(tuple(F)), Coefficients(tuple(p))


def example42_verify(n: int, epsilon: float) -> Example42Report:
    """Certify the strict chain ||F|| > ||p|| > ||f|| and ||p|| > 1.

    F and p have nonnegative coefficients (radial path); f has a negative
    one and goes through the general path.  chain_ok demands strictness
    beyond the combined certification error bounds.
    """
    f, F, p = example42_build(n, epsilon)
    nf = seminorm_general(f, 1e-9)
    nF = seminorm_radial(F, 1e-10)
    npp = seminorm_radial(p, 1e-10)
    ok = (
        nF.value - npp.value > nF.error_bound + npp.error_bound
        and npp.value - nf.value > npp.error_bound + nf.error_bound
        and npp.value > 1.0 + npp.error_bound
    )
    return Example42Report(n=n, epsilon=epsilon, norm_f=nf, norm_p=npp, norm_F=nF, chain_ok=bool(ok))


def u_value(x: float, n: int, epsilon: float, R: float) -> float:
    """The quadratic u(x) controlling |1 + n B_n z^(n-1) - eps z^(2n-2)|^2.

    With z^(n-1) = R e^(it) and x = cos t,
    |...|^2 = -4 eps R^2 x^2 + 2 n B_n R (1 - eps R^2) x
              + 1 + n^2 B_n^2 R^2 + 2 eps R^2 + eps^2 R^4 = u(x).
    For eps <= 1/5 the quadratic is nondecreasing on [-1, 1], so the
    circle maximum is u(1) = (1 + n B_n R)^2 + eps R^2 (eps R^2 - 2 - 2 n B_n R),
    strictly below (1 + n B_n R)^2 for eps, R > 0.
    """
    if not (-1.0 <= x <= 1.0):
        raise ValueError("x must lie in [-1, 1]")
    if n < 2:
        raise ValueError("n must be >= 2")
    if not (0.0 <= R <= 1.0):
        raise ValueError("R must lie in [0, 1]")
    if epsilon < 0.0:
        raise ValueError("epsilon must be >= 0")
    a = n * coefficient_bound_Bn(n)
    return (
        -4.0 * epsilon * R * R * x * x
        + 2.0 * a * R * (1.0 - epsilon * R * R) * x
        + 1.0
        + a * a * R * R
        + 2.0 * epsilon * R * R
        + epsilon ** 2 * R ** 4
    )


def proof_bound_values(n: np.ndarray) -> np.ndarray:
    """((n+1)^2 (1+2/(n-1))^(n-1) - (n-1)^2 (1+2/(n-3))^(n-3)) / n.

    Bounded by 8 e^2 for all n >= 4 via (1+1/x)^x < e < (1+1/x)^(x+1);
    evaluated in log space so it stays finite up to n ~ 1e6 and beyond.
    """
    n = np.asarray(n, dtype=float)
    if np.any(n < 4):
        raise ValueError("proof bound values need n >= 4")
    first = (n + 1) ** 2 * np.exp((n - 1) * np.log1p(2.0 / (n - 1)))
    second = (n - 1) ** 2 * np.exp((n - 3) * np.log1p(2.0 / (n - 3)))
    return (first - second) / n


def scan_norm_threshold(t: float, n_max: int | None = None) -> dict:
    """Empirical onset of ||f_n|| <= 1 for the two-term construction.

    Uses the exact equivalence ||z + b z^n|| <= 1  <=>  max h <= 1 with
    h(r) = n b r^(n-3)(1-r^2) (divide the norm condition by r^2), so the
    scan is closed-form per n; n = 2 is checked via the radial norm
    directly.  Everything at or above the proven threshold is guaranteed;
    the reported onset below it is empirical only.
    """
    if not (t < 1.0):
        raise ValueError("scan requires t < 1")
    N = threshold_N(t)
    top = n_max if n_max is not None else N + 32
    top = max(top, 3)
    ns = np.arange(3, top + 1, dtype=float)
    bn2 = np.empty(ns.size)
    from .norm import bn_array

    all_bn = bn_array(top)
    bn2 = all_bn[2:] ** 2 - ns ** (-(1.0 + t) / 2.0)
    b = np.sqrt(np.maximum(bn2, 0.0))
    hmax = np.empty(ns.size)
    hmax[0] = 3.0 * b[0]
    big = ns[1:]
    hmax[1:] = big * b[1:] * np.exp((big - 3) / 2.0 * np.log1p(-2.0 / (big - 1))) * 2.0 / (big - 1)
    ok = hmax <= 1.0
    fails = [2] if counterexample_verify(t, 2).norm_ok is False else []
    fails += [int(v) for v in ns[~ok]]
    first_ok = None
    for n in range(2, top + 1):
        if n not in fails:
            first_ok = n
            break
    last_fail = max(fails) if fails else None
    return {
        "t": t,
        "threshold_N": N,
        "scanned_up_to": int(top),
        "first_norm_ok": first_ok,
        "last_norm_violation": last_fail,
        "empirical_onset": (last_fail + 1) if last_fail is not None else first_ok,
        "note": "onset below the proven threshold is empirical, not guaranteed",
    }
