"""Complex polynomial carrier for analytic functions vanishing at the origin.

A function f(z) = sum_{k>=1} b_k z^k on the unit disc is stored by its
coefficient vector (b_1, ..., b_D); the constant term is implicitly zero.
Everything here is a pure function of its inputs and safe to call from
any number of threads.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Coefficients",
    "evaluate",
    "derivative",
    "mobius_recenter",
    "marty_first_order",
    "mobius_map",
    "mobius_deriv",
    "coefficients_to_json",
    "coefficients_from_json",
    "load_coefficients",
    "save_coefficients",
]


@dataclass(frozen=True)
class Coefficients:
    """Coefficient vector (b_1, ..., b_D), D >= 1, of a polynomial with f(0) = 0."""

    coeffs: tuple[complex, ...]

    def __post_init__(self) -> None:
        vals = tuple(complex(c) for c in self.coeffs)
        if len(vals) < 1:
            raise ValueError("Coefficients requires at least one entry (D >= 1)")
        for c in vals:
            if not (math.isfinite(c.real) and math.isfinite(c.imag)):
                raise ValueError("coefficients must be finite complex numbers")
        object.__setattr__(self, "coeffs", vals)

    @classmethod
    def of(cls, *coeffs: complex) -> "Coefficients":
        return cls(tuple(coeffs))

    def degree(self) -> int:
        """Largest index k with b_k != 0 (0 for the zero polynomial)."""
        for k in range(len(self.coeffs), 0, -1):
            if self.coeffs[k - 1] != 0:
                return k
        return 0

    def as_array(self) -> np.ndarray:
        """(b_1, ..., b_D) as a complex ndarray."""
        return np.asarray(self.coeffs, dtype=complex)

    def coefficient(self, k: int) -> complex:
        """b_k, with out-of-range indices (including k = 0) read as 0."""
        if 1 <= k <= len(self.coeffs):
            return self.coeffs[k - 1]
        return 0j

    def is_real_nonnegative(self) -> bool:
        """Exact check: every entry real with nonnegative real part."""
        return all(c.imag == 0.0 and c.real >= 0.0 for c in self.coeffs)

    def scaled(self, c: complex) -> "Coefficients":
        return Coefficients(tuple(c * b for b in self.coeffs))


def evaluate(f: Coefficients, z: complex) -> complex:
    """Evaluate f(z) = sum b_k z^k by nested multiplication.

    Horner on (b_D, ..., b_1) followed by one multiplication with z,
    which accounts for the missing constant term.
    """
    acc = 0j
    for b in reversed(f.coeffs):
        acc = acc * z + b
    return acc * complex(z)


def derivative(f: Coefficients) -> np.ndarray:
    """Coefficients of f' in ascending powers: entry j is the z^j coefficient.

    The output carrier is a plain array because f' legitimately has a
    constant term (equal to b_1).
    """
    b = f.as_array()
    k = np.arange(1, len(b) + 1)
    return b * k


def _series_mul(a: np.ndarray, b: np.ndarray, K: int) -> np.ndarray:
    """Product of two truncated power series mod z^(K+1)."""
    out = np.zeros(K + 1, dtype=complex)
    for i in range(K + 1):
        ai = a[i]
        if ai == 0:
            continue
        out[i:] += ai * b[: K + 1 - i]
    return out


def mobius_recenter(f: Coefficients, lam: complex, K: int) -> Coefficients:
    """First K Taylor coefficients of F(z) = f(phi(z)) - f(lam).

    phi(z) = (z + lam) / (1 + conj(lam) z) maps the disc to itself with
    phi(0) = lam, so F vanishes at the origin by construction.  The series
    of phi is lam + (1 - |lam|^2) * sum_{j>=1} (-conj(lam))^(j-1) z^j;
    composition is done by Horner on truncated series, O(K^2 * deg f)
    complex multiplies.
    """
    lam = complex(lam)
    if abs(lam) >= 1.0:
        raise ValueError(f"recentering point must satisfy |lambda| < 1, got |{lam}| = {abs(lam)}")
    if K < 1:
        raise ValueError("K must be a positive integer")

    phi = np.zeros(K + 1, dtype=complex)
    phi[0] = lam
    w = 1.0 - abs(lam) ** 2
    lc = -lam.conjugate()
    p = w
    for j in range(1, K + 1):
        phi[j] = p
        p *= lc

    b = f.coeffs
    D = len(b)
    acc = np.zeros(K + 1, dtype=complex)
    acc[0] = b[D - 1]
    for k in range(D - 2, -1, -1):
        acc = _series_mul(acc, phi, K)
        acc[0] += b[k]
    acc = _series_mul(acc, phi, K)
    # acc[0] equals f(lam); dropping it is the "- f(lam)" recentering.
    return Coefficients(tuple(acc[1 : K + 1]))


def marty_first_order(f: Coefficients, k: int) -> complex:
    """First-order variation coefficient c_k of |B_k(lambda)|^2 at lambda = 0.

    c_k = (k+1) b_{k+1} conj(b_k) - (k-1) conj(b_{k-1}) b_k, with b_0 = 0
    and out-of-range coefficients read as 0.  Along lambda = s e^{i theta},
    d/ds |B_k|^2 at s = 0 equals 2 Re(e^{i theta} c_k).
    """
    if k < 1:
        raise ValueError("index k must be >= 1")
    bk = f.coefficient(k)
    return (k + 1) * f.coefficient(k + 1) * bk.conjugate() - (k - 1) * f.coefficient(k - 1).conjugate() * bk


def mobius_map(lam: complex, z: complex) -> complex:
    """phi_lam(z) = (z + lam) / (1 + conj(lam) z)."""
    lam, z = complex(lam), complex(z)
    return (z + lam) / (1.0 + lam.conjugate() * z)


def mobius_deriv(lam: complex, z: complex) -> complex:
    """phi_lam'(z) = (1 - |lam|^2) / (1 + conj(lam) z)^2."""
    lam, z = complex(lam), complex(z)
    return (1.0 - abs(lam) ** 2) / (1.0 + lam.conjugate() * z) ** 2


# ---------------------------------------------------------------------------
# Shared coefficient file format: {"coeffs": [[re, im], ...]} for b_1..b_D.
# ---------------------------------------------------------------------------

def coefficients_to_json(f: Coefficients) -> dict:
    return {"coeffs": [[c.real, c.imag] for c in f.coeffs]}


def coefficients_from_json(doc: dict) -> Coefficients:
    try:
        pairs = doc["coeffs"]
    except (KeyError, TypeError):
        raise ValueError('coefficient document must be {"coeffs": [[re, im], ...]}')
    if not isinstance(pairs, list) or not pairs:
        raise ValueError("coefficient list must be non-empty")
    out = []
    for p in pairs:
        if not isinstance(p, (list, tuple)) or len(p) != 2:
            raise ValueError("each coefficient must be a [re, im] pair")
        out.append(complex(float(p[0]), float(p[1])))
    return Coefficients(tuple(out))


def load_coefficients(path: str) -> Coefficients:
    with open(path, "r", encoding="utf-8") as fh:
        return coefficients_from_json(json.load(fh))


def save_coefficients(f: Coefficients, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(coefficients_to_json(f), fh)
        fh.write("\n")
