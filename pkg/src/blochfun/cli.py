"""Command-line experiment runner.

Every operation is exposed as a subcommand; results are wrapped in a
report envelope carrying the tool version, seed, timestamp, command echo,
and wall time.  Identical configuration and seed produce byte-identical
payloads (timestamps and wall time live only in the envelope).

Exit codes: 0 success, 1 a verify suite found a violated invariant,
2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from datetime import datetime, timezone

import numpy as np

from . import __version__
from .constructions import (
    counterexample_verify,
    example42_verify,
    scan_norm_threshold,
    threshold_N,
)
from .functionals import (
    FunctionalSpec,
    crude_bound,
    functional_value,
    ratio_to_conjectured,
)
from .norm import (
    NormConvergenceError,
    bn_array,
    seminorm,
    seminorm_general,
    seminorm_radial,
)
from .poly import load_coefficients
from .search import SearchConfig, search_extremal
from .verify import available_suites, run_suite

__all__ = ["main", "run_command", "make_envelope", "validate_payload", "PAYLOAD_SCHEMAS"]


def _fmt17(x) -> str:
    """Lossless decimal formatting for CSV cells (17 significant digits)."""
    if x is None:
        return ""
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".17g")


# ---------------------------------------------------------------------------
# Payload builders, one per subcommand
# ---------------------------------------------------------------------------

def _payload_bn(args) -> dict:
    if args.n_max < 1:
        raise ValueError("--n-max must be >= 1")
    bn = bn_array(args.n_max)
    rows = []
    for n in range(1, args.n_max + 1):
        rows.append({
            "n": n,
            "B_n": float(bn[n - 1]),
            "n_Bn_sq": float(n * bn[n - 1] ** 2),
            "crude_bound": crude_bound(n) if n >= 2 else None,
            "ratio": ratio_to_conjectured(n) if n >= 2 else None,
        })
    return {"rows": rows}


def _payload_norm(args) -> dict:
    f = load_coefficients(args.coeffs)
    tol = args.tol
    if args.method == "radial":
        res = seminorm_radial(f, tol if tol is not None else 1e-10)
    elif args.method == "general":
        res = seminorm_general(f, tol if tol is not None else 1e-8)
    else:
        res = seminorm(f, tol)
    return {"norm": res.to_json(), "degree": f.degree()}


def _payload_functional(args) -> dict:
    f = load_coefficients(args.coeffs)
    value = functional_value(f, FunctionalSpec(args.n, args.t))
    return {"n": args.n, "t": args.t, "value": value}


def _payload_search(args) -> dict:
    config = SearchConfig(
        n=args.n, t=args.t, degree_cap=args.degree, restarts=args.restarts,
        nonneg=args.nonneg, seed=args.seed, tol=args.tol,
    )
    result = search_extremal(config)
    payload = result.to_json()
    payload["exceeds_conjectured"] = bool(result.vs_conjectured > 1e-4)
    return payload


def _payload_counterexample(args) -> dict:
    n = args.n if args.n is not None else threshold_N(args.t)
    report = counterexample_verify(args.t, n)
    payload = report.to_json()
    if args.scan_min_failing:
        payload["scan"] = scan_norm_threshold(args.t)
    return payload


def _payload_example42(args) -> dict:
    return example42_verify(args.n, args.epsilon).to_json()


def _payload_verify(args) -> dict:
    return run_suite(args.suite, seed=args.seed)


# ---------------------------------------------------------------------------
# Payload schemas (shape validation for emitted JSON)
# ---------------------------------------------------------------------------

_NORM_KEYS = {"value": float, "witness": list, "method": str, "error_bound": float}

PAYLOAD_SCHEMAS: dict[str, dict] = {
    "bn": {"rows": list},
    "norm": {"norm": dict, "degree": int},
    "functional": {"n": int, "t": float, "value": float},
    "search": {
        "n": int, "t": float, "objective": float, "coeffs": list,
        "marty_residual": float, "tail_mass": float, "vs_conjectured": float,
        "vs_crude": (float, type(None)), "trace": list, "exceeds_conjectured": bool,
    },
    "counterexample": {
        "t": float, "epsilon": float, "threshold_N": int, "n": int, "b_n": float,
        "norm": dict, "functional_margin": float, "norm_ok": bool,
    },
    "example42": {"n": int, "epsilon": float, "norm_f": dict, "norm_p": dict,
                  "norm_F": dict, "chain_ok": bool},
    "verify": {"suite": str, "passed": bool, "checks": list},
}


def validate_payload(command: str, payload: dict) -> None:
    """Shape-check an emitted payload; raises ValueError on mismatch."""
    schema = PAYLOAD_SCHEMAS.get(command)
    if schema is None:
        raise ValueError(f"no schema for command {command!r}")
    for key, typ in schema.items():
        if key not in payload:
            raise ValueError(f"payload for {command} missing key {key!r}")
        val = payload[key]
        if isinstance(typ, tuple):
            if not isinstance(val, typ):
                raise ValueError(f"payload key {key!r} has type {type(val).__name__}")
        elif typ is float:
            if not isinstance(val, (int, float)):
                raise ValueError(f"payload key {key!r} is not numeric")
        elif not isinstance(val, typ):
            raise ValueError(f"payload key {key!r} has type {type(val).__name__}")
    for res in (payload.get("norm"), payload.get("norm_f"), payload.get("norm_p"), payload.get("norm_F")):
        if res is not None:
            for key in _NORM_KEYS:
                if key not in res:
                    raise ValueError(f"norm result missing key {key!r}")


# ---------------------------------------------------------------------------
# Envelope and output formatting
# ---------------------------------------------------------------------------

def make_envelope(command: str, parameters: dict, payload: dict, wall_time: float,
                  seed: int = 0) -> dict:
    return {
        "tool_version": __version__,
        "seed": seed,
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "command": command,
        "parameters": parameters,
        "payload": payload,
        "wall_time_seconds": wall_time,
    }


def _emit_bn(payload: dict, fmt: str, out) -> None:
    if fmt == "csv":
        out.write("n,B_n,n_Bn_sq,crude_bound,ratio\n")
        for row in payload["rows"]:
            cells = [row["n"], row["B_n"], row["n_Bn_sq"], row["crude_bound"], row["ratio"]]
            out.write(",".join(_fmt17(c) for c in cells) + "\n")
    elif fmt == "text":
        out.write(f"{'n':>6} {'B_n':>20} {'n*B_n^2':>20} {'crude':>20} {'ratio':>12}\n")
        for row in payload["rows"]:
            crude = f"{row['crude_bound']:.12g}" if row["crude_bound"] is not None else "-"
            ratio = f"{row['ratio']:.8g}" if row["ratio"] is not None else "-"
            out.write(f"{row['n']:>6} {row['B_n']:>20.15f} {row['n_Bn_sq']:>20.15f} "
                      f"{crude:>20} {ratio:>12}\n")


def _emit_verify_text(payload: dict, out) -> None:
    for c in payload["checks"]:
        flag = "PASS" if c["passed"] else "FAIL"
        note = f"  ({c['note']})" if "note" in c else ""
        out.write(f"[{flag}] {c['name']}: observed {c['observed']:.6g}, bound {c['bound']:.6g}{note}\n")
    out.write(("PASS" if payload["passed"] else "FAIL") + f": suite {payload['suite']}\n")


# ---------------------------------------------------------------------------
# Argument parsing and dispatch
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="blochfun",
                                description="Bloch-space truncated area functional toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("bn", help="table of B_n, n B_n^2, crude bound, ratio")
    q.add_argument("--n-max", type=int, required=True)
    q.add_argument("--format", choices=("json", "csv", "text"), default="json")

    q = sub.add_parser("norm", help="Bloch seminorm of a coefficient file")
    q.add_argument("--coeffs", required=True, help="path to {'coeffs': [[re, im], ...]}")
    q.add_argument("--method", choices=("auto", "general", "radial"), default="auto")
    q.add_argument("--tol", type=float, default=None)

    q = sub.add_parser("functional", help="weighted truncated functional value")
    q.add_argument("--coeffs", required=True)
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--t", type=float, required=True)

    q = sub.add_parser("search", help="multi-start extremal search")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--t", type=float, default=1.0)
    q.add_argument("--degree", type=int, default=None)
    q.add_argument("--restarts", type=int, default=32)
    q.add_argument("--nonneg", action="store_true")
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--tol", type=float, default=1e-8)
    q.add_argument("--out", default=None, help="write the JSON envelope here")

    q = sub.add_parser("counterexample", help="two-term construction verifier")
    q.add_argument("--t", type=float, required=True)
    q.add_argument("--n", type=int, default=None, help="defaults to the threshold N(t)")
    q.add_argument("--scan-min-failing", action="store_true",
                   help="scan for the empirical norm onset below the threshold")

    q = sub.add_parser("example42", help="norm-chain family verifier")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--epsilon", type=float, required=True)

    q = sub.add_parser("verify", help="run property suites")
    q.add_argument("--suite", choices=available_suites(), default="all")
    q.add_argument("--seed", type=int, default=0)
    return p


_BUILDERS = {
    "bn": _payload_bn,
    "norm": _payload_norm,
    "functional": _payload_functional,
    "search": _payload_search,
    "counterexample": _payload_counterexample,
    "example42": _payload_example42,
    "verify": _payload_verify,
}


def run_command(args) -> tuple[dict, dict]:
    """Build (payload, envelope) for parsed arguments; deterministic given
    the configuration and seed."""
    t0 = time.time()
    payload = _BUILDERS[args.command](args)
    validate_payload(args.command, payload)
    params = {k: v for k, v in vars(args).items() if k not in ("command",)}
    seed = getattr(args, "seed", 0)
    env = make_envelope(args.command, params, payload, time.time() - t0, seed=seed)
    return payload, env


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        payload, env = run_command(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NormConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    if args.command == "bn" and args.format in ("csv", "text"):
        _emit_bn(payload, args.format, sys.stdout)
    elif args.command == "verify":
        _emit_verify_text(payload, sys.stdout)
    else:
        doc = json.dumps(env, indent=2)
        out_path = getattr(args, "out", None)
        if out_path:
            with open(out_path, "w", encoding="utf-8") as fh:
                fh.write(doc + "\n")
            print(f"wrote {out_path}")
        else:
            print(doc)

    if args.command == "verify" and not payload["passed"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
