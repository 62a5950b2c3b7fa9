"""Truncated weighted coefficient functionals and the crude growth bound.

The central object is F(f; n, t) = sum_{k=1}^n k^t |b_k|^2.  The exponent
t = 1 gives the truncated area functional (the degree-n truncation of the
Dirichlet integral); t = 2 is the easy sharp case.  Alongside the
functional itself this module carries the elementary comparison machinery:
the bound n^n/(n-1)^(n-1), its ratio to n B_n^2 (increasing to 4/e), the
Parseval-type margin, and the s >= t weight-reduction inequality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .poly import Coefficients

__all__ = [
    "FunctionalSpec",
    "functional_value",
    "crude_bound",
    "crude_bound_array",
    "ratio_to_conjectured",
    "ratio_to_conjectured_array",
    "parseval_margin",
    "weight_reduction_check",
]


@dataclass(frozen=True)
class FunctionalSpec:
    """Truncation order n >= 1 and weight exponent t >= 0."""

    n: int
    t: float

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("truncation order n must be >= 1")
        if not (self.t >= 0):
            raise ValueError("weight exponent t must be >= 0")


def functional_value(f: Coefficients, spec: FunctionalSpec) -> float:
    """F(f; n, t) = sum_{k<=n} k^t |b_k|^2; coefficients beyond n are ignored."""
    b = f.as_array()[: spec.n]
    k = np.arange(1, b.size + 1, dtype=float)
    return float(np.sum(k ** spec.t * (b.real ** 2 + b.imag ** 2)))


def crude_bound(n: int) -> float:
    """n^n / (n-1)^(n-1) for n >= 2, computed as n * (1 + 1/(n-1))^(n-1).

    The log1p form keeps this exact-ish for any n; the raw powers would
    overflow a double near n = 144 even though the value itself is only
    about e * n.
    """
    if n < 2:
        raise ValueError("crude bound requires n >= 2")
    return n * math.exp((n - 1) * math.log1p(1.0 / (n - 1)))


def crude_bound_array(n: np.ndarray) -> np.ndarray:
    n = np.asarray(n, dtype=float)
    if np.any(n < 2):
        raise ValueError("crude bound requires n >= 2")
    return n * np.exp((n - 1) * np.log1p(1.0 / (n - 1)))


def ratio_to_conjectured(n: int) -> float:
    """crude_bound(n) / (n B_n^2) = 4 / (1 + 1/n)^(n+1).

    Strictly increasing in n with limit 4/e.
    """
    if n < 2:
        raise ValueError("ratio requires n >= 2")
    return 4.0 * math.exp(-(n + 1) * math.log1p(1.0 / n))


def ratio_to_conjectured_array(n: np.ndarray) -> np.ndarray:
    n = np.asarray(n, dtype=float)
    if np.any(n < 2):
        raise ValueError("ratio requires n >= 2")
    return 4.0 * np.exp(-(n + 1) * np.log1p(1.0 / n))


def parseval_margin(f: Coefficients, n: int, rho: float) -> float:
    """1/(1-rho)^2 - sum_{k<=n} k^2 |b_k|^2 rho^(k-1).

    Nonnegative (up to norm-certification error) whenever the caller has
    certified ||f|| <= 1: on the circle |z|^2 = rho the mean of |f'|^2 is
    the truncated sum plus a nonnegative tail, while the sup is at most
    1/(1-rho)^2.
    """
    if not (0.0 <= rho < 1.0):
        raise ValueError("rho must lie in [0, 1)")
    if n < 1:
        raise ValueError("n must be >= 1")
    b = f.as_array()[:n]
    k = np.arange(1, b.size + 1, dtype=float)
    s = float(np.sum(k ** 2 * (b.real ** 2 + b.imag ** 2) * rho ** (k - 1)))
    return 1.0 / (1.0 - rho) ** 2 - s


def weight_reduction_check(f: Coefficients, n: int, t: float, s: float) -> bool:
    """Check F(f; n, s) <= n^(s-t) * F(f; n, t) for s >= t.

    This is an identity-level inequality (k^s = k^t k^(s-t) <= k^t n^(s-t)
    for k <= n); a False return signals an arithmetic bug, not mathematics.
    """
    if s < t:
        raise ValueError("weight reduction requires s >= t")
    lhs = functional_value(f, FunctionalSpec(n, s))
    rhs = float(n) ** (s - t) * functional_value(f, FunctionalSpec(n, t))
    return lhs <= rhs * (1.0 + 1e-12) + 1e-300
