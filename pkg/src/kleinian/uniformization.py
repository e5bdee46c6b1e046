"""Jacobi inversion dictionary: degree-g divisors <-> basis wp-values.

For n = 2 and n = 3 the inverse of the Abel map is cut out by two
polynomial functions of weights 2g and 2g+1,

    R_lo = m_2g     - sum_i  u_i(x, y) p[w_i]
    R_hi = 2 m_2g+1 + sum_i  s_i u_i(x, y) q[w_i]

over the basis monomials u_i of weight 2g-1-w_i, where p[w] is the
wp-value with index (1, w) and q[w] the odd combination (1,1,w) in the
hyperelliptic case or (1,1,w) - (2,w) in the trigonal case.  The sign
table s_i is +1 for every slot in every family; the convention is pinned
down numerically by the derivative cross-check d/du_2 of p[1] against
the rational (2,2)-value and is exercised in the tests.

Reading the coefficients off interpolations through a divisor gives the
forward map; extracting common zeros of (R_lo, R_hi, f) gives the inverse.
The module also provides exact directional derivatives along Jacobian
coordinates (finite differences through the inverse Abel Jacobian, plus a
jet-based flow for higher order), which downstream identity checks use to
manufacture multi-index wp-values.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import series
from .curves import HYPERELLIPTIC, CurveModel, CurvePoint
from .divisors import (
    Divisor,
    PolyFunction,
    interpolation_rows,
    zero_divisor,
)
from .errors import (
    AmbiguousSelectionError,
    BranchPointError,
    DerivativeError,
    IncompleteRecordError,
    InconsistentRecordError,
    InvalidCurveError,
    PoleOfRepresentationError,
    SpecialDivisorError,
)
from .roots import poly_roots


@dataclass
class BasisRecord:
    """Values of the basis wp-functions at one Jacobian point.

    ``p[w]`` and ``q[w]`` are keyed by gap weight; ``extended`` holds
    further wp-values keyed by index tuples such as (2, 2) or (1, 1, 1, 1).
    """

    p: dict
    q: dict
    extended: dict = field(default_factory=dict)

    def negated(self, curve=None) -> "BasisRecord":
        """The record at -u; extended values are dropped.

        p is even.  Hyperelliptic q is purely odd, so it flips sign.  The
        trigonal q mixes parities, q(-u) = -q(u) - 2 wp_{2,w}(u), which
        needs the even values wp_{2,w}: pass the curve and call on a
        record already carrying the (2,2) and (2,5) extension.
        """
        if curve is None or curve.n == 2:
            return BasisRecord(dict(self.p), {w: -v for w, v in self.q.items()}, {})
        if (curve.n, curve.s) != (3, 4):
            raise InvalidCurveError("record negation needs wp_{2,w}; only (3,4) is wired")
        wp2 = {1: self.p[2], 2: self.extended.get((2, 2)), 5: self.extended.get((2, 5))}
        if wp2[2] is None or wp2[5] is None:
            raise IncompleteRecordError("trigonal negation needs the (2,2)/(2,5) extension")
        return BasisRecord(
            dict(self.p), {w: -v - 2.0 * wp2[w] for w, v in self.q.items()}, {}
        )

    def copy(self) -> "BasisRecord":
        return BasisRecord(dict(self.p), dict(self.q), dict(self.extended))


def q_signs(curve: CurveModel) -> dict:
    """Per-gap sign s_i relating q-values to R_hi coefficients.

    All +1: R_hi = 2 m_2g+1 + sum_i u_i q[w_i] across families, the
    convention validated by the derivative ladder and identity suites.
    """
    return {w: 1.0 for w in curve.gaps}


def solution_monomials(curve: CurveModel):
    """(basis monomials by gap, m_2g, m_2g+1) for the inversion system."""
    if curve.n not in (2, 3):
        raise InvalidCurveError("Jacobi inversion implemented for n = 2 and n = 3 only")
    g2 = 2 * curve.genus
    return curve.basis_monomials(), curve.monomial(g2), curve.monomial(g2 + 1)


def divisor_to_basis(curve: CurveModel, D: Divisor) -> BasisRecord:
    """Read basis wp-values off the weight 2g and 2g+1 interpolations.

    The divisor must be reduced, of degree g, and non-special; a singular
    interpolation raises SpecialDivisorError (the divisor sits on a
    sigma-derivative stratum, which is reported but not classified).
    """
    g = curve.genus
    if D.degree != g:
        raise InvalidCurveError(f"need a degree-{g} divisor, got degree {D.degree}")
    D.assert_reduced()
    basis, m_lo, m_hi = solution_monomials(curve)
    A = interpolation_rows(curve, basis, D)
    rhs = interpolation_rows(curve, [m_lo, m_hi], D)
    try:
        from .divisors import _solve_equilibrated

        sol = _solve_equilibrated(A, -np.column_stack([rhs[:, 0], 2.0 * rhs[:, 1]]))
    except np.linalg.LinAlgError as exc:
        raise SpecialDivisorError(
            "singular inversion system: divisor is special (on a stratum of the theta divisor)"
        ) from exc
    resid = np.abs(A @ sol + np.column_stack([rhs[:, 0], 2.0 * rhs[:, 1]]))
    if resid.size and np.max(resid) > 1e-6 * (1.0 + float(np.max(np.abs(rhs)))):
        raise SpecialDivisorError("ill-conditioned inversion system: divisor is nearly special")
    signs = q_signs(curve)
    p = {w: -sol[i, 0] for i, w in enumerate(curve.gaps)}
    q = {w: signs[w] * sol[i, 1] for i, w in enumerate(curve.gaps)}
    return BasisRecord(p, q)


def solution_polynomials(curve: CurveModel, rec: BasisRecord):
    """The pair (R_lo, R_hi) determined by a basis record."""
    basis, m_lo, m_hi = solution_monomials(curve)
    signs = q_signs(curve)
    lo = {(m_lo.i, m_lo.j): 1.0 + 0j}
    hi = {(m_hi.i, m_hi.j): 2.0 + 0j}
    for m, w in zip(basis, curve.gaps):
        lo[(m.i, m.j)] = lo.get((m.i, m.j), 0) - rec.p[w]
        hi[(m.i, m.j)] = hi.get((m.i, m.j), 0) + signs[w] * rec.q[w]
    return PolyFunction(curve, lo), PolyFunction(curve, hi)


def basis_to_divisor(curve: CurveModel, rec: BasisRecord) -> Divisor:
    """Common zeros of (R_lo, R_hi, f): the unique degree-g preimage."""
    g = curve.genus
    if set(rec.p) != set(curve.gaps) or set(rec.q) != set(curve.gaps):
        raise InconsistentRecordError("record keys must be exactly the gap weights")
    R_lo, R_hi = solution_polynomials(curve, rec)
    if curve.family == HYPERELLIPTIC:
        # R_lo depends on x alone: x^g - sum p x^(g-i); y from R_hi linearly
        coeffs = np.zeros(g + 1, dtype=complex)
        coeffs[0] = 1.0
        for i, w in enumerate(curve.gaps):
            coeffs[i + 1] = -rec.p[w]
        xs = poly_roots(coeffs)
        pts = []
        for xk in xs:
            yk = -0.5 * sum(rec.q[w] * xk ** (g - 1 - i) for i, w in enumerate(curve.gaps))
            pts.append((xk, yk))
        try:
            return Divisor(curve, pts, tol=1e-6)
        except InvalidCurveError as exc:
            raise InconsistentRecordError(f"record defines off-curve points: {exc}") from exc

    Z = zero_divisor(curve, R_lo)
    if Z.degree != 2 * g:
        raise InconsistentRecordError(
            f"R_lo has {Z.degree} affine zeros, expected {2 * g}: inconsistent record"
        )
    res = np.array(
        [abs(R_hi.eval(p.x, p.y)) / max(1.0, R_hi.term_scale(p.x, p.y)) for p in Z.points]
    )
    order = np.argsort(res)
    picked, rejected = res[order[g - 1]], res[order[g]]
    if picked > 1e-6:
        raise InconsistentRecordError(
            f"selected points fail R_hi by {picked:.2e}: inconsistent record"
        )
    if rejected < 10.0 * picked + 1e-9:
        raise AmbiguousSelectionError(
            f"R_hi residual gap too small ({picked:.2e} vs {rejected:.2e})"
        )
    return Divisor(curve, [Z.points[i] for i in order[:g]], validate=False)


# -- derivatives along Jacobian coordinates ----------------------------------


def abel_jacobian(curve: CurveModel, D: Divisor):
    """Matrix du_i/dx_k = u_i(P_k) / f_y(P_k) and its inverse."""
    g = curve.genus
    if D.degree != g:
        raise InvalidCurveError(f"need a degree-{g} divisor")
    basis = curve.basis_monomials()
    M = np.zeros((g, g), dtype=complex)
    for k, pt in enumerate(D.points):
        fy = curve.eval_fy(pt.x, pt.y)
        if abs(fy) < 1e-8 * max(1.0, abs(pt.x), abs(pt.y)) ** (curve.n - 1):
            raise BranchPointError(f"branch point in divisor at x = {pt.x}")
        for i, m in enumerate(basis):
            M[i, k] = m.eval(pt.x, pt.y) / fy
    try:
        Minv = np.linalg.inv(M)
    except np.linalg.LinAlgError as exc:
        raise SpecialDivisorError("Abel Jacobian singular: divisor is special") from exc
    return M, Minv


def _shift_point(curve: CurveModel, pt: CurvePoint, dx: complex) -> CurvePoint:
    """Move a point along its branch: x -> x + dx, y by Newton continuation."""
    x = pt.x + dx
    y = pt.y
    for _ in range(40):
        step = curve.eval_f(x, y) / curve.eval_fy(x, y)
        y = y - step
        if abs(step) < 1e-15 * (1.0 + abs(y)):
            break
    return CurvePoint(x, y)


def _perturbed(curve: CurveModel, D: Divisor, k: int, dx: complex) -> Divisor:
    pts = list(D.points)
    pts[k] = _shift_point(curve, pts[k], dx)
    return Divisor(curve, pts, validate=False)


def d_along_u(curve: CurveModel, D: Divisor, w_dir: int, F, h: float = 1e-5, tol: float = 1e-4):
    """Directional derivative dF/du_w at D of a divisor functional F.

    Central differences in each point coordinate (y following the branch)
    are chained through the inverse Abel Jacobian; a two-level Richardson
    step both improves the value and estimates the error.
    """
    if w_dir not in curve.gaps:
        raise InvalidCurveError(f"{w_dir} is not a gap weight of the curve")
    j = curve.gaps.index(w_dir)
    _, Minv = abel_jacobian(curve, D)

    def dF_dx(k: int, step: float) -> complex:
        hp = step * (1.0 + abs(D.points[k].x))
        plus = F(_perturbed(curve, D, k, hp))
        minus = F(_perturbed(curve, D, k, -hp))
        return (plus - minus) / (2.0 * hp)

    total = 0.0 + 0j
    worst = 0.0
    for k in range(D.degree):
        d1 = dF_dx(k, h)
        d2 = dF_dx(k, h / 2.0)
        rich = (4.0 * d2 - d1) / 3.0
        worst = max(worst, abs(d2 - d1) / (1.0 + abs(rich)))
        total += rich * Minv[k, j]
    if worst > tol:
        raise DerivativeError(f"finite differences did not settle: {worst:.2e}")
    return total


# -- jet flow: high-order derivatives along one coordinate --------------------


def _y_jet_on_x_jet(curve: CurveModel, xj: series.Jet, y0: complex) -> series.Jet:
    yj = series.const(y0, xj.order)
    for _ in range(max(1, xj.order).bit_length() + 2):
        g = curve.eval_f(xj, yj)
        if np.max(np.abs(g.c)) < 1e-13 * max(1.0, abs(y0)) ** curve.n:
            break
        yj = yj - g / curve.eval_fy(xj, yj)
    return yj


def flow_jets(curve: CurveModel, D: Divisor, w_dir: int, order: int):
    """Taylor jets of the divisor flowed along the u_w coordinate line.

    Solves dx_k/dt = (M^-1 e_dir)_k order by order; exact to truncation,
    so high derivatives of divisor functionals come out at close to
    machine precision (unlike nested finite differences).
    """
    g = curve.genus
    if D.degree != g:
        raise InvalidCurveError(f"need a degree-{g} divisor")
    jdir = curve.gaps.index(w_dir)
    basis = curve.basis_monomials()
    xjs = [series.var(p.x, order) for p in D.points]
    for k in range(g):
        xjs[k].c[1] = 0.0  # slope comes from the flow itself
    rhs = [series.const(1.0 if i == jdir else 0.0, order) for i in range(g)]
    for m in range(order):
        yjs = [_y_jet_on_x_jet(curve, xjs[k], D.points[k].y) for k in range(g)]
        A = [
            [basis[i].eval(xjs[k], yjs[k]) / curve.eval_fy(xjs[k], yjs[k]) for k in range(g)]
            for i in range(g)
        ]
        v = series.solve_linear(A, rhs)
        for k in range(g):
            xjs[k].c[m + 1] = v[k].c[m] / (m + 1)
    yjs = [_y_jet_on_x_jet(curve, xjs[k], D.points[k].y) for k in range(g)]
    return xjs, yjs


def basis_jets(curve: CurveModel, xjs, yjs):
    """Basis wp-values as jets along a flow; mirrors divisor_to_basis."""
    g = curve.genus
    basis, m_lo, m_hi = solution_monomials(curve)
    A = [[basis[i].eval(xjs[k], yjs[k]) for i in range(g)] for k in range(g)]
    lo = [-m_lo.eval(xjs[k], yjs[k]) for k in range(g)]
    hi = [-2.0 * m_hi.eval(xjs[k], yjs[k]) for k in range(g)]
    c = series.solve_linear([row[:] for row in A], lo)
    d = series.solve_linear([row[:] for row in A], hi)
    signs = q_signs(curve)
    p = {w: -c[i] for i, w in enumerate(curve.gaps)}
    q = {w: signs[w] * d[i] for i, w in enumerate(curve.gaps)}
    return p, q


def basis_flow_derivative(curve: CurveModel, D: Divisor, w_dir: int, kind: str, w: int, k: int = 1):
    """d^k/du_dir^k of p[w] or q[w] at D via the jet flow."""
    xjs, yjs = flow_jets(curve, D, w_dir, k)
    p, q = basis_jets(curve, xjs, yjs)
    jet = p[w] if kind == "p" else q[w]
    return jet.derivative_at_zero(k)


# -- the (3,4) extension -------------------------------------------------------


def extended_34(curve: CurveModel, rec: BasisRecord) -> BasisRecord:
    """Extend a (3,4) record with the rational and quadric wp-identities.

    Populates the even values (2,2), (2,5), (5,5), the 3-index values
    (1,1,1), (1,1,2), (1,1,5) implied by the q-definitions, and the
    4-index values (1,1,1,1), (1,1,1,2), (1,1,1,5).  Requires p[1] != 0
    (the rational formulas carry 1/p[1] poles).
    """
    if (curve.n, curve.s) != (3, 4):
        raise InvalidCurveError("extension formulas are specific to the (3,4)-curve")
    lam = curve.lam_get
    p2, p3, p6 = rec.p[1], rec.p[2], rec.p[5]
    q3, q4, q7 = rec.q[1], rec.q[2], rec.q[5]
    if abs(p2) < 1e-8:
        raise PoleOfRepresentationError("p[1] vanishes: rational extension has a pole here")
    l2, l5, l6, l8, l9, l12 = (lam(2), lam(5), lam(6), lam(8), lam(9), lam(12))
    aux = 0.25 * q3 * (q3 + 2.0 * p3) - p6
    wp22 = -aux / p2 + p2 * (p2 + l2)
    wp25 = (
        -0.5 * (q3 + p3) * q4
        - 0.5 * p2 * (p2 + l2) * q3
        + p2 * (p2 * p3 + l5)
        + 0.5 * aux * (q3 + 2.0 * p3) / p2
    )
    wp111 = q3 + p3
    wp112 = q4 + wp22
    wp115 = q7 + wp25
    quad = -(wp112**2) + 4.0 * p2 * (p3**2 + l6) + wp22**2
    out = rec.copy()
    out.extended.update(
        {
            (1, 1, 1): wp111,
            (1, 1, 2): wp112,
            (1, 1, 5): wp115,
            (2, 2): wp22,
            (2, 5): wp25,
            (1, 1, 1, 1): p2 * (6.0 * p2 + 4.0 * l2) - 3.0 * wp22,
            (1, 1, 1, 2): p3 * (6.0 * p2 + l2) + l5,
            (1, 1, 1, 5): p6 * (6.0 * p2 + l2) + l8 + 0.75 * quad,
            # the -l2^2 p3^2 / 2 term is forced by the mixed-derivative
            # consistency d(5,5)/du_1 = d(1,5)/du_5 and d(5,5)/du_2 = d(2,5)/du_5
            (5, 5): (
                wp112**2 * (0.5 * (p2 + l2) - 0.375 * wp22 / p2)
                + wp25 * (2.0 * p3 + 0.5 * (l2 * p3 + l5) / p2)
                - 0.125 * wp22**3 / p2
                + 0.5 * wp22 * (p3**2 - l6 + (l2 * (p3**2 + p6) + l5 * p3 + l8) / p2)
                - 2.0 * (p2 + l2) * p2 * p3**2
                - 2.0 * l5 * p2 * p3
                - 0.5 * l2**2 * p3**2
                - l2 * l5 * p3
                - 2.0 / 3.0 * l2 * l8
                - 0.5 * l5**2
                + (
                    0.5 * p3**4
                    + p6**2
                    + 2.0 * p3**2 * p6
                    + l6 * (0.5 * p3**2 + p6)
                    + 0.5 * l9 * p3
                    + l12
                )
                / p2
            ),
        }
    )
    return out
