"""Property suites: every inequality the toolkit relies on, run at desk
scale with deterministic seeds and explicit margins.

Each suite returns {"suite": name, "passed": bool, "checks": [...]} where
a check carries its observed extreme value and the bound it was held to;
the CLI turns these into pass/fail lines and exit codes.
"""

from __future__ import annotations

import functools
import math

import numpy as np

from . import constructions as cons
from .functionals import (
    FunctionalSpec,
    crude_bound_array,
    functional_value,
    parseval_margin,
    ratio_to_conjectured,
    ratio_to_conjectured_array,
    weight_reduction_check,
)
from .norm import bn_array, coefficient_bound_Bn, seminorm_radial
from .poly import Coefficients, mobius_deriv, mobius_map, mobius_recenter, marty_first_order
from .sampling import unit_ball_samples
from .search import SearchConfig, lemma_bound_check, lemma_perturbation, search_extremal

__all__ = ["SUITES", "run_suite", "available_suites"]


def _check(name: str, passed: bool, observed: float, bound: float, note: str = "") -> dict:
    out = {"name": name, "passed": bool(passed), "observed": float(observed), "bound": float(bound)}
    if note:
        out["note"] = note
    return out


@functools.lru_cache(maxsize=4)
def _samples(count: int, seed: int, complex_valued: bool) -> tuple[Coefficients, ...]:
    return tuple(unit_ball_samples(count, seed=seed, complex_valued=complex_valued))


# ---------------------------------------------------------------------------
# Suites
# ---------------------------------------------------------------------------

def suite_lemma(seed: int = 0) -> dict:
    """Perturbation identities and extremality slacks for the nonnegative
    problem."""
    checks = []
    rng = np.random.default_rng(seed)

    worst_delta = 0.0
    worst_norm = -math.inf
    worst_grid = -math.inf
    for _ in range(200):
        d = int(rng.integers(2, 9))
        b = rng.uniform(0.0, 1.0, d)
        f = Coefficients(tuple(b.astype(complex)))
        k = int(rng.integers(1, d))
        m = int(rng.integers(k + 1, d + 1))
        g, delta = lemma_perturbation(f, k, m)
        n = len(g.coeffs)
        direct = functional_value(g, FunctionalSpec(n, 1.0)) - functional_value(f, FunctionalSpec(n, 1.0))
        worst_delta = max(worst_delta, abs(delta - direct))
        nf = seminorm_radial(f, 1e-10)
        ng = seminorm_radial(g, 1e-10)
        worst_norm = max(worst_norm, ng.value - nf.value)
        rr = np.linspace(0.0, 0.999, 257)
        fd = np.real(f.as_array())
        gd = np.real(g.as_array())
        kk_f = np.arange(1, fd.size + 1)
        kk_g = np.arange(1, gd.size + 1)
        fprime = (fd * kk_f) @ rr[None, :] ** (kk_f[:, None] - 1)
        gprime = (gd * kk_g) @ rr[None, :] ** (kk_g[:, None] - 1)
        worst_grid = max(worst_grid, float((gprime - fprime).max()))
    checks.append(_check("perturbation functional identity", worst_delta <= 1e-12, worst_delta, 1e-12))
    checks.append(_check("perturbation norm monotone", worst_norm <= 1e-10, worst_norm, 1e-10))
    checks.append(_check("perturbation derivative pointwise", worst_grid <= 1e-12, worst_grid, 1e-12))

    worst_slack = math.inf
    for n in (2, 3, 4, 5):
        res = search_extremal(SearchConfig(n=n, t=1.0, restarts=8, nonneg=True, seed=seed))
        real = Coefficients(tuple(c.real for c in res.best.coeffs))
        for _, _, slack in lemma_bound_check(real, n):
            worst_slack = min(worst_slack, slack)
    if worst_slack is math.inf:
        worst_slack = 0.0
    checks.append(_check("extremal slacks nonnegative", worst_slack >= -1e-8, worst_slack, -1e-8))
    return {"suite": "lemma", "passed": all(c["passed"] for c in checks), "checks": checks}


def suite_prop41(seed: int = 0) -> dict:
    """Crude bound sandwich, ratio monotonicity and limit, plus the
    empirical bound and the easy t = 2 case on normalized samples."""
    checks = []
    ns = np.arange(2, 10_001)
    crude = crude_bound_array(ns)
    nbn2 = ns * bn_array(10_000)[1:] ** 2
    low = 32.0 / 27.0 * nbn2
    high = 4.0 / math.e * nbn2
    sandwich_lo = float((crude - low).min())
    sandwich_hi = float((high - crude).min())
    checks.append(_check("crude bound lower sandwich", sandwich_lo >= -1e-9, sandwich_lo, -1e-9))
    checks.append(_check("crude bound upper sandwich", sandwich_hi >= -1e-9, sandwich_hi, -1e-9))

    ratio = ratio_to_conjectured_array(ns)
    mono = float(np.diff(ratio).min())
    checks.append(_check("ratio strictly increasing", mono > 0.0, mono, 0.0))
    r2 = abs(ratio_to_conjectured(2) - 32.0 / 27.0)
    checks.append(_check("ratio at n=2 equals 32/27", r2 <= 1e-12, r2, 1e-12))
    rl = abs(ratio_to_conjectured(10_000) - 4.0 / math.e)
    checks.append(_check("ratio near 4/e at n=1e4", rl <= 1e-4, rl, 1e-4))

    worst_crude = -math.inf
    worst_t2 = -math.inf
    worst_red = True
    for f in _samples(1000, seed, True):
        n = f.degree()
        fv = functional_value(f, FunctionalSpec(n, 1.0))
        worst_crude = max(worst_crude, fv - float(crude_bound_array(np.array([n]))[0]))
        fv2 = functional_value(f, FunctionalSpec(n, 2.0))
        worst_t2 = max(worst_t2, fv2 - n * n * coefficient_bound_Bn(n) ** 2)
        worst_red = worst_red and weight_reduction_check(f, n, 1.0, 2.0)
    checks.append(_check("crude bound on unit-ball samples", worst_crude <= 1e-9, worst_crude, 1e-9))
    checks.append(_check("t=2 sharp case on samples", worst_t2 <= 1e-8, worst_t2, 1e-8))
    checks.append(_check("weight reduction identity", worst_red, 1.0 if worst_red else 0.0, 1.0))
    return {"suite": "prop41", "passed": all(c["passed"] for c in checks), "checks": checks}


def suite_parseval(seed: int = 0) -> dict:
    """Truncated Parseval margins on the rho grid for normalized samples."""
    rhos = np.arange(0.0, 0.91, 0.1)
    worst = math.inf
    for f in _samples(1000, seed, True):
        n = f.degree()
        for rho in rhos:
            worst = min(worst, parseval_margin(f, n, float(rho)))
    checks = [_check("parseval margins on rho grid", worst >= -1e-8, worst, -1e-8)]
    return {"suite": "parseval", "passed": all(c["passed"] for c in checks), "checks": checks}


def suite_example42(seed: int = 0) -> dict:
    """Norm chain strictness, the u-quadratic, and circle-max consistency."""
    checks = []
    worst_factor = math.inf
    all_ok = True
    for n in range(2, 11):
        for eps in (0.05, 0.1, 0.2):
            rep = cons.example42_verify(n, eps)
            all_ok = all_ok and rep.chain_ok and rep.norm_p.value > 1.0 + 1e-6
            errs = rep.norm_F.error_bound + rep.norm_p.error_bound
            worst_factor = min(worst_factor, (rep.norm_F.value - rep.norm_p.value) / max(errs, 1e-300))
            errs = rep.norm_p.error_bound + rep.norm_f.error_bound
            worst_factor = min(worst_factor, (rep.norm_p.value - rep.norm_f.value) / max(errs, 1e-300))
    checks.append(_check("norm chain strict, ||p|| > 1", all_ok, 1.0 if all_ok else 0.0, 1.0))
    checks.append(_check("chain margins over error bounds", worst_factor > 10.0, worst_factor, 10.0))

    rep = cons.example42_verify(2, 0.2)
    dev = abs(rep.norm_p.value - 1.7306739079148084)
    checks.append(_check("norm_p(2, 0.2) anchor", dev <= 1e-3, dev, 1e-3,
                         note="stationary-point oracle value"))

    rng = np.random.default_rng(seed)
    worst_slope = math.inf
    for _ in range(1000):
        n = int(rng.integers(2, 11))
        eps = float(rng.uniform(0.0, 0.2))
        R = float(rng.uniform(0.0, 1.0))
        x = float(rng.uniform(-1.0, 1.0 - 1e-6))
        h = min(1e-6, (1.0 - x) / 2)
        slope = (cons.u_value(x + h, n, eps, R) - cons.u_value(x, n, eps, R)) / h
        worst_slope = min(worst_slope, slope)
    checks.append(_check("u nondecreasing on [-1, 1]", worst_slope >= -1e-9, worst_slope, -1e-9))

    worst_circ = 0.0
    for n in (2, 3, 5):
        f, _, _ = cons.example42_build(n, 0.1)
        d = np.asarray(f.as_array()) * np.arange(1, len(f.coeffs) + 1)
        for r in (0.3, 0.7, 0.95):
            th = 2.0 * np.pi * np.arange(4096) / 4096
            z = r * np.exp(1j * th)
            vals = np.abs(np.polynomial.polynomial.polyval(z, d)) ** 2
            u1 = cons.u_value(1.0, n, 0.1, r ** (n - 1))
            worst_circ = max(worst_circ, abs(float(vals.max()) - u1))
    checks.append(_check("circle max equals u(1)", worst_circ <= 1e-9, worst_circ, 1e-9))
    return {"suite": "example42", "passed": all(c["passed"] for c in checks), "checks": checks}


def suite_counterexample(seed: int = 0) -> dict:
    """Margin identity, threshold soundness, and the proof-chain bound."""
    checks = []
    worst_margin = 0.0
    for t in (0.0, 0.25, 0.5, 0.9):
        for n in (2, 3, 10, 219):
            rep = cons.counterexample_verify(t, n)
            closed = 1.0 - float(n) ** (-(1.0 - t) / 2.0)
            worst_margin = max(worst_margin, abs(rep.functional_margin - closed))
    checks.append(_check("margin identity 1 - n^(-(1-t)/2)", worst_margin <= 1e-12, worst_margin, 1e-12))

    sound = True
    for t in (0.0, 0.25, 0.5):
        N = cons.threshold_N(t)
        for n in (N, N + 1, N + 17):
            rep = cons.counterexample_verify(t, n)
            sound = sound and rep.norm_ok
    checks.append(_check("norm_ok at and above threshold", sound, 1.0 if sound else 0.0, 1.0))

    pb = cons.proof_bound_values(np.arange(219, 1_000_001))
    worst_pb = float(pb.max())
    checks.append(_check("proof-chain bound <= 8 e^2", worst_pb <= 8.0 * math.e ** 2, worst_pb, 8.0 * math.e ** 2))

    below = cons.counterexample_verify(0.0, 2)
    checks.append(_check("below-threshold margin positive", below.functional_margin > 0.0,
                         below.functional_margin, 0.0,
                         note=f"norm_ok observed: {below.norm_ok} (not guaranteed below threshold)"))
    return {"suite": "counterexample", "passed": all(c["passed"] for c in checks), "checks": checks}


def suite_marty(seed: int = 0) -> dict:
    """First-order variation against finite differences, the pointwise
    conformal-weight identity, and the residual at a search best."""
    checks = []
    rng = np.random.default_rng(seed)
    worst_fd = 0.0
    h = 1e-5
    for _ in range(100):
        d = int(rng.integers(2, 9))
        b = rng.uniform(-1.0, 1.0, d) + 1j * rng.uniform(-1.0, 1.0, d)
        f = Coefficients(tuple(b))
        k = int(rng.integers(1, d + 1))
        theta = float(rng.uniform(0.0, 2.0 * math.pi))
        u = complex(math.cos(theta), math.sin(theta))
        bp = mobius_recenter(f, h * u, k).coeffs[k - 1]
        bm = mobius_recenter(f, -h * u, k).coeffs[k - 1]
        fd = (abs(bp) ** 2 - abs(bm) ** 2) / (2.0 * h)
        pred = 2.0 * (u * marty_first_order(f, k)).real
        worst_fd = max(worst_fd, abs(fd - pred))
    checks.append(_check("first-order variation vs finite differences", worst_fd <= 1e-5, worst_fd, 1e-5))

    worst_id = 0.0
    rads = 0.95 * np.sqrt(rng.uniform(0.0, 1.0, (10_000, 2)))
    angs = rng.uniform(0.0, 2.0 * math.pi, (10_000, 2))
    for i in range(10_000):
        z = rads[i, 0] * complex(math.cos(angs[i, 0]), math.sin(angs[i, 0]))
        lam = rads[i, 1] * complex(math.cos(angs[i, 1]), math.sin(angs[i, 1]))
        lhs = (1.0 - abs(z) ** 2) * abs(mobius_deriv(lam, z))
        rhs = 1.0 - abs(mobius_map(lam, z)) ** 2
        worst_id = max(worst_id, abs(lhs - rhs))
    checks.append(_check("conformal weight identity", worst_id <= 1e-12, worst_id, 1e-12))

    res = search_extremal(SearchConfig(n=2, t=1.0, restarts=8, seed=seed))
    checks.append(_check("residual at search best (n=2)", res.marty_residual <= 1e-6,
                         res.marty_residual, 1e-6))
    return {"suite": "marty", "passed": all(c["passed"] for c in checks), "checks": checks}


SUITES = {
    "lemma": suite_lemma,
    "prop41": suite_prop41,
    "example42": suite_example42,
    "parseval": suite_parseval,
    "counterexample": suite_counterexample,
    "marty": suite_marty,
}


def available_suites() -> list[str]:
    return ["all", *SUITES.keys()]


def run_suite(selector: str, seed: int = 0) -> dict:
    """Run one named suite, or all of them under selector='all'."""
    if selector == "all":
        results = [fn(seed) for fn in SUITES.values()]
        return {
            "suite": "all",
            "passed": all(r["passed"] for r in results),
            "checks": [c for r in results for c in
                       ({**c, "name": f"{r['suite']}: {c['name']}"} for c in r["checks"])],
        }
    if selector not in SUITES:
        raise ValueError(f"unknown suite {selector!r}; choose from {available_suites()}")
    return SUITES[selector](seed)
