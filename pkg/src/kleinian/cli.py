"""Command-line front end with JSON input and output.

Verbs:

    describe            curve invariants (genus, gaps, monomial order)
    uniformize          divisor -> basis wp-values
    invert-basis        basis wp-values -> divisor
    add / negate        divisor group law
    verify-identities   model residuals at a divisor (or random trials)
    periods             period matrices, Legendre residual, tau, kappa
    theta-bridge        wp from theta vs wp from algebra at random divisors
    selftest            the full acceptance suite (seeded, deterministic)

Exit codes: 0 all checks pass, 1 a check failed its tolerance, 2 bad
input, 3 numerical failure.  `--tol name=value` overrides any named
tolerance; `--seed` fixes every randomized trial.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field

import numpy as np

from . import jsonio
from .acceptance import CRITERIA, run_acceptance
from .addition import add as divisor_add
from .addition import negate as divisor_negate
from .errors import InputError, InvalidCurveError, KleinianError
from .identities import four_index_derivatives_34, residuals_27, residuals_34
from .sampling import random_divisor
from .tolerances import resolve
from .transcendental import abel, period_matrices, riemann_characteristic, wp_theta
from .uniformization import basis_to_divisor, divisor_to_basis, extended_34

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT = 2
EXIT_NUMERIC = 3


@dataclass
class RunConfig:
    command: str
    curve_path: str | None = None
    input_paths: list = field(default_factory=list)
    tol_overrides: dict = field(default_factory=dict)
    seed: int = 0
    output: str | None = None
    trials: int = 5
    suites: list = field(default_factory=list)
    extended: bool = False
    with_timings: bool = False


def _parse_tol(items) -> dict:
    out = {}
    for item in items or []:
        if "=" not in item:
            raise InputError(f"--tol expects name=value, got {item!r}")
        name, val = item.split("=", 1)
        out[name] = float(val)
    return out


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="kleinian", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, curve=True):
        if curve:
            p.add_argument("--curve", required=True, help="curve JSON file")
        p.add_argument("--tol", action="append", metavar="NAME=VALUE", help="tolerance override")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--output", help="write the JSON report here instead of stdout")

    p = sub.add_parser("describe", help="curve invariants")
    common(p)
    p = sub.add_parser("uniformize", help="divisor -> basis record")
    common(p)
    p.add_argument("--divisor", required=True)
    p.add_argument("--extended", action="store_true", help="add the (3,4) extension values")
    p = sub.add_parser("invert-basis", help="basis record -> divisor")
    common(p)
    p.add_argument("--basis", required=True)
    p = sub.add_parser("add", help="sum of two divisor classes")
    common(p)
    p.add_argument("--divisors", nargs=2, required=True, metavar=("D1", "D2"))
    p = sub.add_parser("negate", help="inverse divisor class")
    common(p)
    p.add_argument("--divisor", required=True)
    p = sub.add_parser("verify-identities", help="model residuals")
    common(p)
    p.add_argument("--divisor", help="divisor JSON; omit for random trials")
    p.add_argument("--trials", type=int, default=5)
    p = sub.add_parser("periods", help="period matrices and Legendre check")
    common(p)
    p = sub.add_parser("theta-bridge", help="wp from theta vs algebra")
    common(p)
    p.add_argument("--divisor", help="divisor JSON; omit for random trials")
    p.add_argument("--trials", type=int, default=3)
    p = sub.add_parser("selftest", help="acceptance suite")
    common(p, curve=False)
    p.add_argument("--suite", action="append", dest="suites",
                   choices=[k for k, _, _ in CRITERIA], help="run only these suites")
    p.add_argument("--with-timings", action="store_true",
                   help="include wall-clock timings (breaks byte-for-byte determinism)")
    return ap


def config_from_args(args) -> RunConfig:
    cfg = RunConfig(command=args.command)
    cfg.curve_path = getattr(args, "curve", None)
    cfg.tol_overrides = _parse_tol(getattr(args, "tol", None))
    cfg.seed = getattr(args, "seed", 0)
    cfg.output = getattr(args, "output", None)
    cfg.trials = getattr(args, "trials", 5)
    cfg.suites = getattr(args, "suites", None) or []
    cfg.extended = getattr(args, "extended", False)
    cfg.with_timings = getattr(args, "with_timings", False)
    for name in ("divisor", "basis"):
        v = getattr(args, name, None)
        if v:
            cfg.input_paths.append(v)
    for v in getattr(args, "divisors", None) or []:
        cfg.input_paths.append(v)
    return cfg


def run(config: RunConfig) -> tuple[int, dict]:
    """Execute one verb; returns (exit_status, JSON report)."""
    try:
        tols = resolve(config.tol_overrides)
    except KeyError as exc:
        raise InputError(str(exc)) from exc
    t0 = time.time()
    handler = _HANDLERS[config.command]
    status, body = handler(config, tols)
    report = {"command": config.command, "seed": config.seed, **body}
    if config.command != "selftest" or config.with_timings:
        report["elapsed_s"] = round(time.time() - t0, 3)
    return status, report


def _load_curve(config: RunConfig):
    if not config.curve_path:
        raise InputError("this command requires --curve")
    return jsonio.curve_from_json(jsonio.load_json(config.curve_path))


def _cmd_describe(config, tols):
    curve = _load_curve(config)
    body = {
        "inputs": {"curve": jsonio.curve_to_json(curve)},
        "genus": curve.genus,
        "gaps": list(curve.gaps),
        "family": curve.family,
        "wgt_sigma": curve.sigma_weight(),
        "monomials": [str(m) for m in curve.monomials_up_to(3 * curve.genus)],
    }
    return EXIT_OK, body


def _cmd_uniformize(config, tols):
    curve = _load_curve(config)
    D = jsonio.divisor_from_json(curve, jsonio.load_json(config.input_paths[0]),
                                 tol=tols["on-curve"])
    rec = divisor_to_basis(curve, D)
    if config.extended and (curve.n, curve.s) == (3, 4):
        rec = extended_34(curve, rec)
    body = {
        "inputs": {"curve": jsonio.curve_to_json(curve), "divisor": jsonio.divisor_to_json(D)},
        "record": jsonio.record_to_json(rec),
    }
    return EXIT_OK, body


def _cmd_invert_basis(config, tols):
    curve = _load_curve(config)
    rec = jsonio.record_from_json(jsonio.load_json(config.input_paths[0]))
    D = basis_to_divisor(curve, rec)
    worst = D.max_curve_residual()
    body = {
        "inputs": {"curve": jsonio.curve_to_json(curve)},
        "divisor": jsonio.divisor_to_json(D),
        "max_curve_residual": worst,
    }
    return (EXIT_OK if worst < tols["on-curve"] else EXIT_CHECK_FAILED), body


def _cmd_negate(config, tols):
    curve = _load_curve(config)
    D = jsonio.divisor_from_json(curve, jsonio.load_json(config.input_paths[0]),
                                 tol=tols["on-curve"])
    N = divisor_negate(curve, D)
    worst = N.max_curve_residual()
    body = {
        "inputs": {"curve": jsonio.curve_to_json(curve), "divisor": jsonio.divisor_to_json(D)},
        "divisor": jsonio.divisor_to_json(N),
        "max_curve_residual": worst,
    }
    return (EXIT_OK if worst < tols["on-curve"] else EXIT_CHECK_FAILED), body


def _cmd_add(config, tols):
    curve = _load_curve(config)
    D1 = jsonio.divisor_from_json(curve, jsonio.load_json(config.input_paths[0]),
                                  tol=tols["on-curve"])
    D2 = jsonio.divisor_from_json(curve, jsonio.load_json(config.input_paths[1]),
                                  tol=tols["on-curve"])
    S = divisor_add(curve, D1, D2)
    worst = S.max_curve_residual()
    body = {
        "inputs": {
            "curve": jsonio.curve_to_json(curve),
            "divisors": [jsonio.divisor_to_json(D1), jsonio.divisor_to_json(D2)],
        },
        "divisor": jsonio.divisor_to_json(S),
        "max_curve_residual": worst,
    }
    return (EXIT_OK if worst < tols["on-curve"] else EXIT_CHECK_FAILED), body


def _identity_residuals(curve, D):
    rec = divisor_to_basis(curve, D)
    if (curve.n, curve.s) == (2, 7):
        return residuals_27(rec, curve)
    if (curve.n, curve.s) == (3, 4):
        rec = extended_34(curve, rec)
        rec.extended.update(four_index_derivatives_34(curve, D))
        return residuals_34(rec, curve)
    raise InputError("verify-identities supports the (2,7) and (3,4) curves")


def _cmd_verify_identities(config, tols):
    curve = _load_curve(config)
    rng = np.random.default_rng(config.seed)
    worst: dict = {}
    if config.input_paths:
        divisors = [jsonio.divisor_from_json(curve, jsonio.load_json(config.input_paths[0]),
                                             tol=tols["on-curve"])]
    else:
        divisors = [random_divisor(curve, curve.genus, rng) for _ in range(config.trials)]
    for D in divisors:
        for k, v in _identity_residuals(curve, D).items():
            worst[k] = max(worst.get(k, 0.0), v)
    ok = all(
        v < (tols["identity-extended"] if k.startswith("E") else tols["identity"])
        for k, v in worst.items()
    )
    body = {
        "inputs": {"curve": jsonio.curve_to_json(curve)},
        "trials": len(divisors),
        "residuals": worst,
        "tolerances": {"identity": tols["identity"], "identity-extended": tols["identity-extended"]},
    }
    return (EXIT_OK if ok else EXIT_CHECK_FAILED), body


def _cmd_periods(config, tols):
    curve = _load_curve(config)
    pd = period_matrices(curve)
    riemann_characteristic(pd)
    ok = pd.legendre_residual < tols["legendre"]
    body = {
        "inputs": {"curve": jsonio.curve_to_json(curve)},
        "periods": jsonio.period_to_json(pd),
    }
    return (EXIT_OK if ok else EXIT_CHECK_FAILED), body


def _cmd_theta_bridge(config, tols):
    curve = _load_curve(config)
    pd = period_matrices(curve)
    ch = riemann_characteristic(pd)
    rng = np.random.default_rng(config.seed)
    if config.input_paths:
        divisors = [jsonio.divisor_from_json(curve, jsonio.load_json(config.input_paths[0]),
                                             tol=tols["on-curve"])]
    else:
        divisors = [random_divisor(curve, curve.genus, rng) for _ in range(config.trials)]
    rows = []
    worst = 0.0
    for D in divisors:
        rec = divisor_to_basis(curve, D)
        u = abel(curve, D, pd)
        row = {"u": [[z.real, z.imag] for z in u]}
        for w in curve.gaps:
            p_alg, p_theta = rec.p[w], wp_theta(pd, ch, u, (1, w))
            q_alg, q_theta = rec.q[w], wp_theta(pd, ch, u, (1, 1, w))
            row[f"p[{w}]"] = abs(p_alg - p_theta) / (1.0 + abs(p_alg))
            row[f"q[{w}]"] = abs(q_alg - q_theta) / (1.0 + abs(q_alg))
            worst = max(worst, row[f"p[{w}]"], row[f"q[{w}]"])
        rows.append(row)
    body = {
        "inputs": {"curve": jsonio.curve_to_json(curve)},
        "legendre_residual": pd.legendre_residual,
        "bridge": rows,
        "worst": worst,
        "tolerance": tols["bridge"],
    }
    return (EXIT_OK if worst < tols["bridge"] else EXIT_CHECK_FAILED), body


def _cmd_selftest(config, tols):
    report = run_acceptance(
        seed=config.seed,
        suites=config.suites or None,
        tol_overrides=config.tol_overrides,
        echo=lambda line: print(line, file=sys.stderr),
    )
    if not config.with_timings:
        for c in report["criteria"]:
            c.pop("elapsed_s", None)
    return (EXIT_OK if report["ok"] else EXIT_CHECK_FAILED), report


_HANDLERS = {
    "describe": _cmd_describe,
    "uniformize": _cmd_uniformize,
    "invert-basis": _cmd_invert_basis,
    "add": _cmd_add,
    "negate": _cmd_negate,
    "verify-identities": _cmd_verify_identities,
    "periods": _cmd_periods,
    "theta-bridge": _cmd_theta_bridge,
    "selftest": _cmd_selftest,
}


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
        config = config_from_args(args)
        status, report = run(config)
    except (InputError, InvalidCurveError, FileNotFoundError) as exc:
        # domain violations (unsupported family, wrong degrees, bad weights)
        # are input problems, not numerical failures
        print(json.dumps({"error": str(exc), "kind": "input"}), file=sys.stderr)
        return EXIT_INPUT
    except KleinianError as exc:
        print(json.dumps({"error": str(exc), "kind": type(exc).__name__}), file=sys.stderr)
        return EXIT_NUMERIC
    text = json.dumps(report, indent=2, sort_keys=True)
    if config.output:
        with open(config.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
