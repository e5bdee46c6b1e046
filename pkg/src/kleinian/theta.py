"""Riemann theta functions with characteristics, with exact derivatives.

The series

    theta[eps](v; tau) = sum_n exp( i pi (n+e')^t tau (n+e')
                                    + 2 i pi (n+e')^t (v+e) )

is summed over an integer box covering the ellipsoid where terms exceed
the target tolerance relative to the largest term; the Gaussian decay
rate is read off the smallest eigenvalue of Im tau.  Because each term
is an exponential, partial derivatives of any order are termwise exact:
a multi-index alpha contributes the factor prod_a (2 i pi (n+e')_a), and
a directional derivative of order k the factor (2 i pi (n+e') . w)^k.

Values can overflow double range only for far-off-lattice arguments;
callers that need wp-values reduce modulo the lattice first (the second
logarithmic derivative is blind to the exponential factors involved).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidCurveError, PrecisionError


@dataclass(frozen=True)
class Characteristic:
    """Half-characteristic [eps] = (eps', eps), components usually in {0, 1/2}."""

    eps_prime: tuple
    eps: tuple

    @staticmethod
    def zero(g: int) -> "Characteristic":
        return Characteristic((0.0,) * g, (0.0,) * g)

    def vectors(self):
        return np.asarray(self.eps_prime, dtype=float), np.asarray(self.eps, dtype=float)

    def is_half_integer(self) -> bool:
        ep, e = self.vectors()
        return bool(np.all(np.isin(2 * ep, (0.0, 1.0))) and np.all(np.isin(2 * e, (0.0, 1.0))))

    def parity(self) -> int:
        """(-1)^(4 e'.e) for half-integer characteristics."""
        ep, e = self.vectors()
        return int((-1) ** int(round(4.0 * float(ep @ e))))


def _check_tau(tau: np.ndarray) -> np.ndarray:
    tau = np.asarray(tau, dtype=complex)
    if tau.ndim != 2 or tau.shape[0] != tau.shape[1]:
        raise InvalidCurveError("tau must be square")
    if np.max(np.abs(tau - tau.T)) > 1e-8 * (1.0 + np.max(np.abs(tau))):
        raise InvalidCurveError("tau must be symmetric")
    Y = tau.imag
    if np.min(np.linalg.eigvalsh(Y)) <= 0:
        raise InvalidCurveError("Im(tau) must be positive definite")
    return tau


def _lattice(v, tau, char, tol):
    """Shifted lattice points m = n + eps' covering all relevant terms."""
    g = tau.shape[0]
    Y = tau.imag
    ep, e = (char or Characteristic.zero(g)).vectors()
    b = np.asarray(v, dtype=complex).imag
    lam_min = float(np.min(np.linalg.eigvalsh(Y)))
    center = -np.linalg.solve(Y, b)
    R = np.sqrt((np.log(1.0 / tol) + 25.0) / (np.pi * lam_min)) + 1.5
    if R > 120.0:
        raise PrecisionError(f"theta truncation radius {R:.1f} too large (ill-conditioned tau)")
    los = np.floor(center - R - ep).astype(int)
    his = np.ceil(center + R - ep).astype(int)
    grids = np.meshgrid(*[np.arange(lo, hi + 1) for lo, hi in zip(los, his)], indexing="ij")
    n = np.stack([G.ravel() for G in grids], axis=0).astype(float)
    return n + ep[:, None], e


def _exponents(v, tau, m, e):
    v = np.asarray(v, dtype=complex)
    quad = 1j * np.pi * np.einsum("ik,ij,jk->k", m, tau, m)
    lin = 2j * np.pi * (m.T @ (v + e))
    return quad + lin


def theta(v, tau, char: Characteristic | None = None, tol: float = 1e-14) -> complex:
    """theta[char](v; tau) by direct lattice summation."""
    tau = _check_tau(tau)
    m, e = _lattice(v, tau, char, tol)
    expo = _exponents(v, tau, m, e)
    shift = float(np.max(expo.real))
    return complex(np.exp(shift) * np.sum(np.exp(expo - shift)))


def theta_derivatives(
    v, tau, orders, char: Characteristic | None = None, tol: float = 1e-14
) -> dict:
    """Partial derivatives for every multi-index in ``orders``.

    A multi-index is a tuple of coordinate positions, e.g. () for the
    value, (0,) for d/dv_0, (0, 1, 1) for the third-order mixed partial.
    All requested values come from a single lattice pass.
    """
    tau = _check_tau(tau)
    m, e = _lattice(v, tau, char, tol)
    expo = _exponents(v, tau, m, e)
    shift = float(np.max(expo.real))
    base = np.exp(expo - shift)
    scale = np.exp(shift)
    out = {}
    for alpha in orders:
        factor = np.ones(m.shape[1], dtype=complex)
        for a in alpha:
            factor = factor * (2j * np.pi * m[a])
        out[tuple(alpha)] = complex(scale * np.sum(base * factor))
    return out


def theta_directional(
    v, tau, direction, max_order: int, char: Characteristic | None = None, tol: float = 1e-14
) -> np.ndarray:
    """[theta, d theta/dt, ..., d^k theta/dt^k] along v + t*direction at t=0."""
    tau = _check_tau(tau)
    m, e = _lattice(v, tau, char, tol)
    expo = _exponents(v, tau, m, e)
    shift = float(np.max(expo.real))
    base = np.exp(expo - shift)
    w = np.asarray(direction, dtype=complex)
    dots = 2j * np.pi * (m.T @ w)
    out = np.empty(max_order + 1, dtype=complex)
    factor = np.ones_like(dots)
    for k in range(max_order + 1):
        out[k] = np.exp(shift) * np.sum(base * factor)
        factor = factor * dots
    return out


def all_half_characteristics(g: int):
    """The 4^g characteristics with entries in {0, 1/2}."""
    vals = (0.0, 0.5)
    out = []
    for bits in range(4**g):
        ep, e = [], []
        b = bits
        for _ in range(g):
            ep.append(vals[b & 1])
            b >>= 1
            e.append(vals[b & 1])
            b >>= 1
        out.append(Characteristic(tuple(ep), tuple(e)))
    return out


# -- logarithmic derivatives ---------------------------------------------------


def _set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1 :]
        yield [[first]] + part


def log_theta_derivatives(v, tau, orders, char=None, tol: float = 1e-14) -> dict:
    """Partials of log theta[char] for every multi-index in ``orders``.

    Uses the moment-to-cumulant recursion over set partitions:
    theta_A / theta = sum over partitions of A of prod_B L_B.
    """
    need = set()
    for alpha in orders:
        for r in range(len(alpha) + 1):
            # all sub-multisets appear in the recursion
            pass
        need.add(tuple(sorted(alpha)))
    # close under subsets
    closure = set()

    def add_subsets(alpha):
        alpha = tuple(sorted(alpha))
        if alpha in closure:
            return
        closure.add(alpha)
        for i in range(len(alpha)):
            add_subsets(alpha[:i] + alpha[i + 1 :])

    for alpha in need:
        add_subsets(alpha)
    thetas = theta_derivatives(v, tau, sorted(closure, key=len), char=char, tol=tol)
    t0 = thetas[()]
    if abs(t0) == 0:
        raise PrecisionError("theta vanishes: logarithmic derivatives undefined")
    L: dict = {(): np.log(t0)}
    for alpha in sorted(closure, key=len):
        if not alpha:
            continue
        m_val = thetas[alpha] / t0
        acc = 0j
        for part in _set_partitions(list(alpha)):
            if len(part) == 1:
                continue  # the L_alpha term itself
            prod = 1.0 + 0j
            for block in part:
                prod *= L[tuple(sorted(block))]
            acc += prod
        L[alpha] = m_val - acc
    return {tuple(sorted(a)): L[tuple(sorted(a))] for a in orders}
