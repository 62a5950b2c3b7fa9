"""Numerical estimation of the extremal values M(n, t) = sup F(f; n, t)
over the unit ball of the Bloch space (functions vanishing at 0).

Since F(cf; n, t) = |c|^2 F(f; n, t), maximizing over the unit ball equals
maximizing the scale-invariant Rayleigh quotient F(f)/||f||^2 over nonzero
f, and extremals necessarily sit on the unit sphere.  The search is
multi-start derivative-free pattern descent on the negated quotient: the
seminorm is a max-type function whose gradient jumps where the maximizer
is non-unique, so derivative-free steps with shrinking step sizes avoid
false convergence at kinks.

Optimizer internals use a fast uncertified seminorm; every restart's final
candidate is re-certified with the tight paths before the cross-restart
reduction, which breaks near-ties deterministically (lexicographically
smallest gauge-normalized magnitude vector, which prefers sparse
candidates).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .functionals import FunctionalSpec, crude_bound, functional_value
from .norm import (
    coefficient_bound_Bn,
    fast_seminorm_from_coeffs,
    seminorm,
)
from .poly import Coefficients

__all__ = [
    "SearchConfig",
    "SearchResult",
    "rayleigh_objective",
    "gauge_normalize",
    "search_extremal",
    "brute_force_oracle",
    "lemma_perturbation",
    "lemma_bound_check",
    "marty_residual",
]

_CERT_TOL = 1e-10  # certification tolerance for reported objectives
_STEP_FLOOR = 1e-9  # pattern-search steps halve down to this


@dataclass(frozen=True)
class SearchConfig:
    """Configuration of one extremal-search run.

    degree_cap defaults to n for the nonnegative problem (extremals are
    polynomials of degree at most n there) and to n + 2 in general, where
    no such reduction is proven; the reported tail_mass quantifies how
    much the search placed above index n.
    """

    n: int
    t: float = 1.0
    degree_cap: int | None = None
    restarts: int = 32
    nonneg: bool = False
    seed: int = 0
    tol: float = 1e-8
    max_iters: int = 3000

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if not (self.t >= 0):
            raise ValueError("t must be >= 0")
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if self.tol <= 0:
            raise ValueError("tol must be positive")
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")
        if self.degree_cap is not None and self.degree_cap < self.n:
            raise ValueError("degree_cap must be >= n")

    @property
    def cap(self) -> int:
        if self.degree_cap is not None:
            return self.degree_cap
        return self.n if self.nonneg else self.n + 2


@dataclass(frozen=True)
class SearchResult:
    best: Coefficients
    objective: float
    n: int
    t: float
    marty_residual: float
    tail_mass: float
    vs_conjectured: float
    vs_crude: float | None
    trace: tuple[float, ...] = field(default_factory=tuple)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "t": self.t,
            "objective": self.objective,
            "coeffs": [[c.real, c.imag] for c in self.best.coeffs],
            "marty_residual": self.marty_residual,
            "tail_mass": self.tail_mass,
            "vs_conjectured": self.vs_conjectured,
            "vs_crude": self.vs_crude,
            "trace": list(self.trace),
        }


def rayleigh_objective(f: Coefficients, spec: FunctionalSpec, tol: float | None = None) -> float:
    """F(f; n, t) / ||f||^2 with a certified seminorm.

    Invariant under scaling and under the gauge b_k -> b_k e^(i(a + k b)).
    """
    if f.degree() == 0:
        raise ValueError("rayleigh objective undefined for the zero function")
    nv = seminorm(f, tol).value
    return functional_value(f, spec) / (nv * nv)


def gauge_normalize(f: Coefficients) -> Coefficients:
    """Rotate out the two-parameter gauge e^(ia) f(e^(ib) z).

    The two largest-magnitude coefficients (ties to the smaller index) are
    made real and nonnegative by solving a + k1 b = -arg(b_k1),
    a + k2 b = -arg(b_k2); with a single nonzero coefficient its phase is
    zeroed and b = 0.  Magnitudes, seminorm, and the Rayleigh objective
    are unchanged.
    """
    arr = f.as_array()
    mags = np.abs(arr)
    if not np.any(mags > 0):
        raise ValueError("gauge normalization undefined for the zero function")
    order = sorted(range(arr.size), key=lambda i: (-mags[i], i))
    nz = [i for i in order if mags[i] > 0]
    if len(nz) == 1:
        k1 = nz[0]
        a = -cmath.phase(arr[k1])
        beta = 0.0
    else:
        k1, k2 = sorted(nz[:2])
        th1 = cmath.phase(arr[k1])
        th2 = cmath.phase(arr[k2])
        beta = (th1 - th2) / ((k2 + 1) - (k1 + 1))
        a = -th1 - (k1 + 1) * beta
    k = np.arange(1, arr.size + 1)
    out = arr * np.exp(1j * (a + k * beta))
    for i in nz[:2]:
        out[i] = mags[i]
    return Coefficients(tuple(out))


# ---------------------------------------------------------------------------
# Pattern search core
# ---------------------------------------------------------------------------

def _compass_maximize(objective, x0: np.ndarray, max_evals: int,
                      nonneg: bool, step0: float = 0.25, renorm=None,
                      early_stop=None):
    """Cyclic compass search with greedy line repetition and step halving.

    ``renorm`` exploits scale invariance: it rescales the iterate to unit
    size at every step halving, which stops coordinates from drifting to
    large magnitudes along the objective's flat scaling direction.
    ``early_stop(step, fx)`` may abandon a restart once its value is
    clearly dominated and the step is already small; the returned point is
    still that basin's best-so-far.
    """
    x = x0.copy()
    fx = objective(x)
    evals = 1
    step = step0
    dims = x.size
    while step >= _STEP_FLOOR and evals < max_evals:
        if early_stop is not None and early_stop(step, fx):
            break
        # sufficient-decrease forcing: without it the iterate can spiral
        # around curved level sets (the gauge orbit) collecting O(step^2)
        # gains forever and the step never contracts
        accept = max(1e-13, 1e-2 * step * step * (1.0 + abs(fx)))
        improved = False
        for i in range(dims):
            for sgn in (1.0, -1.0):
                if evals >= max_evals:
                    break
                xt = x.copy()
                xt[i] += sgn * step
                if nonneg and xt[i] < 0.0:
                    xt[i] = 0.0
                    if xt[i] == x[i]:
                        continue
                ft = objective(xt)
                evals += 1
                if ft > fx + accept:
                    x, fx = xt, ft
                    improved = True
                    while evals < max_evals:
                        xt = x.copy()
                        xt[i] += sgn * step
                        if nonneg and xt[i] < 0.0:
                            break
                        ft = objective(xt)
                        evals += 1
                        if ft > fx + accept:
                            x, fx = xt, ft
                        else:
                            break
                    break
        if not improved:
            step *= 0.5
            if renorm is not None:
                xs = renorm(x)
                if xs is not None:
                    x = xs
                    fx = objective(x)
                    evals += 1
    return x, fx, evals


def _decode(x: np.ndarray, nonneg: bool) -> np.ndarray:
    if nonneg:
        return np.maximum(x, 0.0).astype(complex)
    return x[0::2] + 1j * x[1::2]


def _encode(b: np.ndarray, nonneg: bool) -> np.ndarray:
    if nonneg:
        return np.real(np.asarray(b)).astype(float)
    out = np.empty(2 * b.size)
    out[0::2] = np.real(b)
    out[1::2] = np.imag(b)
    return out


def _certified_objective(b: np.ndarray, spec: FunctionalSpec) -> float:
    f = Coefficients(tuple(b))
    return rayleigh_objective(f, spec, tol=_CERT_TOL)


def search_extremal(config: SearchConfig) -> SearchResult:
    """Multi-start estimate of M(n, t) = sup F(f; n, t) over the unit ball.

    Start set: the feasible certificate B_n z^n (so the reported value is
    never below n^t B_n^2 - tol), three z / B_n z^n mixtures, and seeded
    random points (generator seeded with seed + restart index).  Each
    restart runs compass descent on the fast objective, tries a sparsifying
    zero-snap of stray small coefficients, and is then re-certified.
    """
    n, t, D = config.n, config.t, config.cap
    spec = FunctionalSpec(n, t)
    bn = coefficient_bound_Bn(n)

    starts: list[np.ndarray] = []
    cert = np.zeros(D, dtype=complex)
    cert[n - 1] = bn
    starts.append(cert)
    for w in (0.1, 0.5, 0.9):
        mix = np.zeros(D, dtype=complex)
        mix[0] = 1.0 - w
        mix[n - 1] += w * bn
        starts.append(mix)
    for idx in range(len(starts), config.restarts):
        rng = np.random.default_rng(config.seed + idx)
        if config.nonneg:
            b = rng.uniform(0.0, 1.0, D).astype(complex)
        else:
            b = rng.uniform(-1.0, 1.0, D) + 1j * rng.uniform(-1.0, 1.0, D)
        nv = fast_seminorm_from_coeffs(b, config.nonneg)
        starts.append(b / nv if nv > 0 else b + (1.0 if config.nonneg else 1.0 + 0j))
    starts = starts[: config.restarts]

    def objective(x: np.ndarray) -> float:
        b = _decode(x, config.nonneg)
        if not np.any(b):
            return -math.inf
        nv = fast_seminorm_from_coeffs(b, config.nonneg)
        if nv <= 0.0:
            return -math.inf
        kk = np.arange(1, min(n, D) + 1, dtype=float)
        fv = float(np.sum(kk ** t * np.abs(b[:n]) ** 2))
        return fv / (nv * nv)

    def renorm(x: np.ndarray):
        b = _decode(x, config.nonneg)
        nv = fast_seminorm_from_coeffs(b, config.nonneg)
        if nv > 0:
            return _encode(b / nv, config.nonneg)
        return None

    candidates: list[tuple[float, np.ndarray]] = []
    trace: list[float] = []
    incumbent = -math.inf
    for start in starts:
        x0 = _encode(start, config.nonneg)

        def dominated(step: float, fx: float) -> bool:
            # fast-path values sit within ~1e-4 of certified ones, so a 2%
            # margin cannot discard the true basin
            return step < 1e-5 and fx < incumbent - 0.02 * abs(incumbent) - 1e-6

        x, _, _ = _compass_maximize(objective, x0, config.max_iters, config.nonneg,
                                    renorm=renorm, early_stop=dominated)
        b = _decode(x, config.nonneg)
        if not np.any(b):
            b = start.copy()
        obj = _certified_objective(b, spec)
        incumbent = max(incumbent, obj)
        # sparsifying trial step: drop stray small coefficients and keep
        # the snap only if the certified objective does not degrade
        thr = 1e-4 * float(np.max(np.abs(b)))
        snapped = np.where(np.abs(b) < thr, 0.0, b)
        if np.any(snapped != b) and np.any(snapped):
            obj_s = _certified_objective(snapped, spec)
            if obj_s >= obj - 1e-9:
                b, obj = snapped, obj_s
        candidates.append((obj, b))
        trace.append(obj)

    best_obj = max(c[0] for c in candidates)
    tied = [c for c in candidates if c[0] >= best_obj - config.tol]
    tied.sort(key=lambda c: tuple(np.abs(c[1])))
    obj, braw = tied[0]

    g = gauge_normalize(Coefficients(tuple(braw)))
    nv = seminorm(g, _CERT_TOL)
    best = g.scaled(1.0 / nv.value)

    barr = best.as_array()
    tail = float(np.sum(np.abs(barr[n:]) ** 2))
    conj = float(n) ** t * bn * bn
    return SearchResult(
        best=best,
        objective=obj,
        n=n,
        t=t,
        marty_residual=marty_residual(best, n),
        tail_mass=tail,
        vs_conjectured=obj - conj,
        vs_crude=(obj - crude_bound(n)) if (t == 1.0 and n >= 2) else None,
        trace=tuple(trace),
    )


# ---------------------------------------------------------------------------
# Small-instance brute-force oracle
# ---------------------------------------------------------------------------

def brute_force_oracle(n: int, t: float, grid_step: float) -> float:
    """Exhaustive grid maximization of the Rayleigh quotient over
    nonnegative coefficient vectors of dimension n on [0, 1.5]^n.

    Gauge reduction to nonnegative reals is exact whenever at most two
    coefficients are nonzero, so n = 2 covers the full problem; n = 3 is a
    lower-bound oracle only.  n > 3 is rejected as a cost guard.  The grid
    is prefiltered with a vectorized radial evaluation; the leaders are
    re-scored with the certified objective.
    """
    if n not in (2, 3):
        raise ValueError("brute-force oracle supports n in {2, 3} only")
    if not (0.0 < grid_step <= 1e-2 + 1e-15):
        raise ValueError("grid_step must lie in (0, 1e-2]")
    axis = np.arange(0.0, 1.5 + grid_step / 2.0, grid_step)
    rg = np.linspace(0.0, 1.0, 513)
    # seminorm of sum b_k z^k on the radius is max_r sum b_k w_k(r)
    w = np.stack([(k + 1) * rg ** k * (1.0 - rg * rg) for k in range(n)])
    kt = np.arange(1, n + 1, dtype=float) ** t

    grids = np.meshgrid(*([axis] * n), indexing="ij")
    pts = np.stack([g.ravel() for g in grids], axis=1)
    mask = np.any(pts > 0.0, axis=1)
    pts = pts[mask]

    best_vals = np.empty(pts.shape[0])
    chunk = max(1, 20_000_000 // rg.size)
    for lo in range(0, pts.shape[0], chunk):
        part = pts[lo : lo + chunk]
        norms = np.max(part @ w, axis=1)
        fvals = (part ** 2) @ kt
        best_vals[lo : lo + part.shape[0]] = fvals / norms ** 2

    approx_max = float(best_vals.max())
    lead = np.nonzero(best_vals >= approx_max - 5e-3)[0]
    if lead.size > 4096:
        lead = lead[np.argsort(-best_vals[lead], kind="stable")[:4096]]
    spec = FunctionalSpec(n, t)
    best = -math.inf
    for i in lead:
        f = Coefficients(tuple(pts[i].astype(complex)))
        best = max(best, rayleigh_objective(f, spec, tol=_CERT_TOL))
    return best


# ---------------------------------------------------------------------------
# Perturbation operator and extremality diagnostics
# ---------------------------------------------------------------------------

def lemma_perturbation(f: Coefficients, k: int, m: int) -> tuple[Coefficients, float]:
    """Move the k-th coefficient mass up to index m: g = f - b_k z^k + (k/m) b_k z^m.

    Returns g together with the functional change
    Delta = F(g; n, 1) - F(f; n, 1) = 2 k b_k b_m + (k^2/m) b_k^2 - k b_k^2
    (any n >= m).  g keeps nonnegative coefficients and g'(r) <= f'(r) on
    [0, 1), so its seminorm cannot exceed that of f.
    """
    if not (1 <= k < m):
        raise ValueError("indices must satisfy 1 <= k < m")
    if not f.is_real_nonnegative():
        raise ValueError("perturbation requires real nonnegative coefficients")
    size = max(len(f.coeffs), m)
    b = np.zeros(size)
    b[: len(f.coeffs)] = np.real(f.as_array())
    bk = b[k - 1]
    bm = b[m - 1]
    b[k - 1] = 0.0
    b[m - 1] = bm + (k / m) * bk
    delta = 2.0 * k * bk * bm + (k * k / m) * bk * bk - k * bk * bk
    return Coefficients(tuple(b.astype(complex))), float(delta)


def lemma_bound_check(f: Coefficients, n: int) -> list[tuple[int, int, float]]:
    """Extremality constraints for the nonnegative problem.

    For every pair 1 <= k < m <= n with b_k > 0, a candidate extremal must
    satisfy b_m <= (m-k)/(2m) b_k; the returned slack is that bound minus
    b_m, so a negative slack certifies non-extremality.
    """
    if not f.is_real_nonnegative():
        raise ValueError("lemma bound check requires real nonnegative coefficients")
    b = np.zeros(max(len(f.coeffs), n))
    b[: len(f.coeffs)] = np.real(f.as_array())
    out: list[tuple[int, int, float]] = []
    for k in range(1, n):
        if b[k - 1] <= 0.0:
            continue
        for m in range(k + 1, n + 1):
            slack = (m - k) / (2.0 * m) * b[k - 1] - b[m - 1]
            out.append((k, m, float(slack)))
    return out


def marty_residual(f: Coefficients, n: int) -> float:
    """|n (n+1) b_{n+1} conj(b_n)|: zero at every extremal of F(.; n, 1),
    by the first-order rotation-invariant variation."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return abs(n * (n + 1) * f.coefficient(n + 1) * f.coefficient(n).conjugate())
