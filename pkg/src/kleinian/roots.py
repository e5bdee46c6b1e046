"""Complex polynomial roots tuned for the divisor-algebra workloads.

Companion-matrix eigenvalues are the default; the Aberth--Ehrlich
simultaneous iteration takes over for high degree, where the companion
approach becomes the bottleneck and loses accuracy.  Every root is
polished by a few Newton steps on the original coefficients, and a
clustering pass recovers multiplicities from nearly-coincident roots.
"""

from __future__ import annotations

import numpy as np

from .errors import PrecisionError

ABERTH_DEGREE_CUTOFF = 30


def _strip(coeffs: np.ndarray) -> np.ndarray:
    """Drop negligible leading coefficients (highest degree first)."""
    c = np.asarray(coeffs, dtype=complex)
    scale = np.max(np.abs(c)) if c.size else 0.0
    if scale == 0.0:
        return c[:0]
    keep = np.abs(c) > 1e-14 * scale
    first = int(np.argmax(keep))
    return c[first:]


def poly_roots(coeffs, polish: bool = True) -> np.ndarray:
    """Roots of sum coeffs[k] x^(deg-k); coeffs[0] is the leading term."""
    c = _strip(coeffs)
    if len(c) <= 1:
        return np.zeros(0, dtype=complex)
    deg = len(c) - 1
    if deg <= ABERTH_DEGREE_CUTOFF:
        r = np.roots(c)
    else:
        r = _aberth(c)
    if polish:
        r = newton_polish(c, r)
    return r


def newton_polish(coeffs, roots, steps: int = 3) -> np.ndarray:
    c = np.asarray(coeffs, dtype=complex)
    dc = np.polyder(c)
    r = np.asarray(roots, dtype=complex).copy()
    for _ in range(steps):
        p = np.polyval(c, r)
        dp = np.polyval(dc, r)
        ok = np.abs(dp) > 1e-30
        step = np.zeros_like(r)
        step[ok] = p[ok] / dp[ok]
        # near-multiple roots make Newton overshoot; damp large steps
        big = np.abs(step) > 0.1 * (1.0 + np.abs(r))
        step[big] = 0.0
        r = r - step
    return r


def _aberth(c: np.ndarray, maxiter: int = 600, tol: float = 1e-14) -> np.ndarray:
    deg = len(c) - 1
    radius = 1.0 + np.max(np.abs(c[1:] / c[0]))
    k = np.arange(deg)
    z = radius * np.exp(2j * np.pi * (k + 0.35) / deg)
    dc = np.polyder(c)
    for _ in range(maxiter):
        p = np.polyval(c, z)
        dp = np.polyval(dc, z)
        with np.errstate(divide="ignore", invalid="ignore"):
            newt = np.where(np.abs(dp) > 0, p / dp, 0.0)
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, np.inf)
            s = np.sum(1.0 / diff, axis=1)
            corr = newt / (1.0 - newt * s)
        z = z - corr
        if np.max(np.abs(corr)) < tol * (1.0 + np.max(np.abs(z))):
            return z
    raise PrecisionError("Aberth iteration did not converge")


def cluster_roots(roots, rel_tol: float = 1e-6):
    """Group nearly-equal roots; returns list of (center, multiplicity).

    Centers are multiplicity-weighted means, which averages out the
    characteristic eps^(1/m) splitting of an m-fold numerical root.
    """
    r = sorted(np.asarray(roots, dtype=complex), key=lambda z: (z.real, z.imag))
    scale = 1.0 + max((abs(z) for z in r), default=0.0)
    tol = rel_tol * scale
    groups: list[list[complex]] = []
    for z in r:
        for grp in groups:
            if abs(z - np.mean(grp)) < tol:
                grp.append(z)
                break
        else:
            groups.append([z])
    return [(complex(np.mean(g)), len(g)) for g in groups]
