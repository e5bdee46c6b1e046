"""JSON schemas for curves, divisors, records, and period data.

Complex numbers serialize as [re, im]; weight keys as decimal strings;
wp index tuples as comma-joined weights ("2,2"); matrices row-major as
nested lists of [re, im] pairs.
"""

from __future__ import annotations

import json

import numpy as np

from .curves import CurveModel, curve_model
from .divisors import Divisor, PolyFunction
from .errors import InputError, InvalidCurveError
from .theta import Characteristic
from .transcendental import PeriodData
from .uniformization import BasisRecord


def _c2j(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


def _j2c(v) -> complex:
    if isinstance(v, (int, float)):
        return complex(v)
    if isinstance(v, (list, tuple)) and len(v) == 2:
        return complex(v[0], v[1])
    raise InputError(f"expected [re, im], got {v!r}")


def _mat2j(M) -> list:
    return [[_c2j(z) for z in row] for row in np.asarray(M)]


def curve_to_json(curve: CurveModel) -> dict:
    return {
        "n": curve.n,
        "s": curve.s,
        "lambda": {str(k): _c2j(v) for k, v in sorted(curve.lam.items())},
    }


def curve_from_json(data: dict) -> CurveModel:
    try:
        n, s = int(data["n"]), int(data["s"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"curve JSON needs integer n and s: {exc}") from exc
    lam = {int(k): _j2c(v) for k, v in (data.get("lambda") or {}).items()}
    extra = set(data) - {"n", "s", "lambda"}
    if extra:
        raise InputError(f"unknown curve keys: {sorted(extra)}")
    try:
        return curve_model(n, s, lam)
    except InvalidCurveError as exc:
        raise InputError(str(exc)) from exc


def divisor_to_json(D: Divisor) -> dict:
    return {"points": [[p.x.real, p.x.imag, p.y.real, p.y.imag] for p in D.points]}


def divisor_from_json(curve: CurveModel, data: dict, validate: bool = True, tol: float = 1e-8) -> Divisor:
    pts = []
    for row in data.get("points", []):
        if len(row) != 4:
            raise InputError(f"divisor point must be [xre, xim, yre, yim], got {row!r}")
        pts.append((complex(row[0], row[1]), complex(row[2], row[3])))
    return Divisor(curve, pts, validate=validate, tol=tol)


def poly_to_json(R: PolyFunction) -> dict:
    return {"coeffs": {f"{i},{j}": _c2j(c) for (i, j), c in sorted(R.coeffs.items())}}


def poly_from_json(curve: CurveModel, data: dict) -> PolyFunction:
    coeffs = {}
    for key, v in (data.get("coeffs") or {}).items():
        i, j = (int(t) for t in key.split(","))
        coeffs[(i, j)] = _j2c(v)
    return PolyFunction(curve, coeffs)


def record_to_json(rec: BasisRecord) -> dict:
    out = {
        "p": {str(w): _c2j(v) for w, v in sorted(rec.p.items())},
        "q": {str(w): _c2j(v) for w, v in sorted(rec.q.items())},
    }
    if rec.extended:
        out["extended"] = {
            ",".join(str(i) for i in key): _c2j(v) for key, v in sorted(rec.extended.items())
        }
    return out


def record_from_json(data: dict) -> BasisRecord:
    try:
        p = {int(w): _j2c(v) for w, v in data["p"].items()}
        q = {int(w): _j2c(v) for w, v in data["q"].items()}
    except KeyError as exc:
        raise InputError(f"basis record JSON needs p and q maps: {exc}") from exc
    ext = {
        tuple(int(t) for t in key.split(",")): _j2c(v)
        for key, v in (data.get("extended") or {}).items()
    }
    return BasisRecord(p, q, ext)


def period_to_json(pd: PeriodData) -> dict:
    out = {
        "omega": _mat2j(pd.omega),
        "omega_prime": _mat2j(pd.omega_prime),
        "eta": _mat2j(pd.eta),
        "eta_prime": _mat2j(pd.eta_prime),
        "tau": _mat2j(pd.tau),
        "kappa": _mat2j(pd.kappa),
        "legendre_residual": pd.legendre_residual,
        "branch_points": [_c2j(z) for z in pd.branch],
    }
    if pd.char is not None:
        out["characteristic"] = {
            "eps_prime": list(pd.char.eps_prime),
            "eps": list(pd.char.eps),
        }
    return out


def load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read JSON from {path}: {exc}") from exc


def characteristic_from_json(data: dict) -> Characteristic:
    return Characteristic(tuple(data["eps_prime"]), tuple(data["eps"]))
