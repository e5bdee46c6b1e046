"""Arithmetic in the coordinate ring and divisor-level constructions.

The coordinate ring C[x, y] / f is represented by coefficient tables over
monomials x^i y^j with j < n; reduction rewrites higher y-powers through
the curve equation.  The two workhorses are

* :func:`interpolate` -- the unique monic polynomial function of weight w
  through a positive divisor of degree w - g (repeated points contribute
  derivative conditions along the branch y(x)); and
* :func:`zero_divisor` -- the full degree-w divisor of zeros of a
  polynomial function, via the y-resultant with the curve equation.

Together they realize complements of divisors inside divisors of zeros,
which is all the group law needs.
"""

from __future__ import annotations

import itertools

import numpy as np
from scipy.optimize import linear_sum_assignment

from . import series
from .curves import CurveModel, CurvePoint, Monomial
from .errors import (
    BranchPointError,
    DegenerateComplementError,
    InconsistencyError,
    InvalidCurveError,
    NonReducedDivisorError,
    PrecisionError,
    SpecialDivisorError,
)
from .roots import cluster_roots, newton_polish, poly_roots

PAIR_TOL = 1e-9  # involution-pair detection, relative
MATCH_TOL = 1e-8  # multiset matching, relative


class PolyFunction:
    """Element of C[x,y]/f as a table {(i, j): coeff} with j < n."""

    def __init__(self, curve: CurveModel, coeffs: dict):
        self.curve = curve
        self.coeffs = {
            (int(i), int(j)): complex(c) for (i, j), c in coeffs.items() if c != 0
        }
        if any(j >= curve.n for (_, j) in self.coeffs):
            raise InvalidCurveError("unreduced y-power in PolyFunction")

    @property
    def weight(self) -> int:
        if not self.coeffs:
            return -1
        n, s = self.curve.n, self.curve.s
        return max(i * n + j * s for (i, j) in self.coeffs)

    @property
    def leading(self):
        """(monomial, coefficient) of the highest Sato weight."""
        n, s = self.curve.n, self.curve.s
        (i, j) = max(self.coeffs, key=lambda ij: ij[0] * n + ij[1] * s)
        return Monomial(i, j, i * n + j * s), self.coeffs[(i, j)]

    @property
    def monic(self) -> bool:
        return bool(self.coeffs) and abs(self.leading[1] - 1.0) < 1e-12

    def eval(self, x, y):
        acc = 0
        for (i, j), c in self.coeffs.items():
            acc = acc + c * x**i * y**j
        return acc

    def eval_dx(self, x, y):
        acc = 0
        for (i, j), c in self.coeffs.items():
            if i:
                acc = acc + c * i * x ** (i - 1) * y**j
        return acc

    def eval_dy(self, x, y):
        acc = 0
        for (i, j), c in self.coeffs.items():
            if j:
                acc = acc + c * j * x**i * y ** (j - 1)
        return acc

    def term_scale(self, x, y) -> float:
        """max |coeff x^i y^j|; the natural residual normalizer at (x, y)."""
        ax, ay = max(1.0, abs(x)), max(1.0, abs(y))
        return max((abs(c) * ax**i * ay**j for (i, j), c in self.coeffs.items()), default=0.0)

    def y_degree(self) -> int:
        return max((j for (_, j) in self.coeffs), default=0)

    def x_degree(self) -> int:
        return max((i for (i, _) in self.coeffs), default=0)

    def y_coefficient_polys(self) -> list[np.ndarray]:
        """Entry j: coefficients (descending in x) of the y^j part."""
        dy = self.y_degree()
        dx = self.x_degree()
        out = []
        for j in range(dy + 1):
            c = np.zeros(dx + 1, dtype=complex)
            for (i, jj), v in self.coeffs.items():
                if jj == j:
                    c[dx - i] = v
            out.append(c)
        return out

    def __repr__(self):
        n, s = self.curve.n, self.curve.s
        items = sorted(self.coeffs.items(), key=lambda kv: kv[0][0] * n + kv[0][1] * s)
        body = " + ".join(f"({c:.6g})*{Monomial(i, j, 0)}" for (i, j), c in items)
        return f"PolyFunction[{body}]"


def reduce_poly(curve: CurveModel, raw: dict) -> PolyFunction:
    """Ring representative with y-degree < n, equal to ``raw`` mod f.

    ``raw`` is any {(i, j): coeff} table; y^n is rewritten as
    x^s + sum lambda_k y^j x^i until no power of y reaches n.
    """
    n = curve.n
    work = {tuple(k): complex(v) for k, v in raw.items() if v != 0}
    done: dict = {}
    while work:
        (i, j), c = work.popitem()
        if c == 0:
            continue
        if j < n:
            done[(i, j)] = done.get((i, j), 0) + c
            continue
        base = j - n
        key = (i + curve.s, base)
        work[key] = work.get(key, 0) + c
        for ii, jj, k in curve.terms:
            lk = curve.lam.get(k)
            if lk:
                key = (i + ii, base + jj)
                work[key] = work.get(key, 0) + c * lk
    return PolyFunction(curve, done)


def poly_mul_raw(a: PolyFunction, b: PolyFunction) -> dict:
    """Plain product in C[x, y], no reduction."""
    out: dict = {}
    for (i1, j1), c1 in a.coeffs.items():
        for (i2, j2), c2 in b.coeffs.items():
            key = (i1 + i2, j1 + j2)
            out[key] = out.get(key, 0) + c1 * c2
    return out


# -- divisors ----------------------------------------------------------------


class Divisor:
    """Positive part of a reduced divisor: a multiset of affine points."""

    def __init__(self, curve: CurveModel, points, validate: bool = True, tol: float = 1e-10):
        self.curve = curve
        pts = []
        for p in points:
            if isinstance(p, CurvePoint):
                pts.append(curve.point(p.x, p.y, tol) if validate else p)
            else:
                x, y = p
                pts.append(
                    curve.point(x, y, tol) if validate else CurvePoint(complex(x), complex(y))
                )
        self.points = tuple(pts)

    @property
    def degree(self) -> int:
        return len(self.points)

    def xs(self) -> np.ndarray:
        return np.array([p.x for p in self.points], dtype=complex)

    def ys(self) -> np.ndarray:
        return np.array([p.y for p in self.points], dtype=complex)

    def __iter__(self):
        return iter(self.points)

    def __add__(self, other: "Divisor") -> "Divisor":
        return Divisor(self.curve, self.points + other.points, validate=False)

    def __repr__(self):
        body = ", ".join(f"({p.x:.4g}, {p.y:.4g})" for p in self.points)
        return f"Divisor[{body}]"

    def max_curve_residual(self) -> float:
        worst = 0.0
        for p in self.points:
            scale = max(1.0, abs(p.x) ** self.curve.s, abs(p.y) ** self.curve.n)
            worst = max(worst, abs(self.curve.eval_f(p.x, p.y)) / scale)
        return worst

    def involution_groups(self, rel_tol: float = PAIR_TOL) -> list[tuple[int, ...]]:
        """Index tuples forming a full fiber over one x (all n points).

        A doubled point plus a second fiber point over the same x is NOT
        a group: the divisor must contain every y of the fiber, each
        matched to a distinct divisor point.
        """
        n = self.curve.n
        if self.degree < n:
            return []
        xs, ys = self.xs(), self.ys()
        scale = 1.0 + float(np.max(np.abs(xs)))
        yscale = 1.0 + float(np.max(np.abs(ys)))
        groups = []
        used: set = set()
        for i in range(len(xs)):
            if i in used:
                continue
            shared = [i] + [
                j
                for j in range(i + 1, len(xs))
                if j not in used and abs(xs[j] - xs[i]) < rel_tol * scale
            ]
            if len(shared) < n:
                continue
            fiber_ys = fiber_points(self.curve, xs[i])
            picked: list[int] = []
            for yf in fiber_ys:
                hit = next(
                    (j for j in shared if j not in picked and abs(ys[j] - yf) < rel_tol * yscale),
                    None,
                )
                if hit is None:
                    break
                picked.append(hit)
            if len(picked) == n:
                groups.append(tuple(sorted(picked)))
                used.update(picked)
        return groups

    def is_reduced(self) -> bool:
        return not self.involution_groups()

    def assert_reduced(self):
        if not self.is_reduced():
            raise NonReducedDivisorError("divisor contains a full group of points in involution")


def match_multisets(A: Divisor, B: Divisor, rel_tol: float = MATCH_TOL) -> float:
    """Best pairing distance between equal-degree divisors (relative).

    Raises InconsistencyError when degrees differ or the worst matched
    pair exceeds the tolerance.
    """
    worst = multiset_distance(A, B)
    if worst > rel_tol:
        raise InconsistencyError(f"multiset mismatch: {worst:.3e} relative")
    return worst


def multiset_distance(A: Divisor, B: Divisor) -> float:
    """Hungarian-matched worst point distance, relative to the point scale."""
    if A.degree != B.degree:
        raise InconsistencyError(f"degree mismatch {A.degree} != {B.degree}")
    if A.degree == 0:
        return 0.0
    ax, ay, bx, by = A.xs(), A.ys(), B.xs(), B.ys()
    cost = np.abs(ax[:, None] - bx[None, :]) + np.abs(ay[:, None] - by[None, :])
    rows, cols = linear_sum_assignment(cost)
    scale = 1.0 + max(np.max(np.abs(ax)), np.max(np.abs(ay)))
    return float(np.max(cost[rows, cols])) / scale


# -- branch expansion --------------------------------------------------------


def branch_jet(curve: CurveModel, x0: complex, y0: complex, order: int) -> series.Jet:
    """Taylor jet of the branch y(x) at x0 with y(x0) = y0.

    Requires d f/d y != 0 at the point; branch points are rejected.
    """
    fy = curve.eval_fy(x0, y0)
    scale = max(1.0, abs(x0), abs(y0)) ** (curve.n - 1)
    if abs(fy) < 1e-8 * scale:
        raise BranchPointError(f"branch point at x = {x0}: df/dy ~ {abs(fy):.2e}")
    xj = series.var(x0, order)
    yj = series.const(y0, order)
    for _ in range(max(1, order).bit_length() + 2):
        g = curve.eval_f(xj, yj)
        if np.max(np.abs(g.c)) < 1e-13 * max(1.0, abs(y0)) ** curve.n:
            break
        yj = yj - g / curve.eval_fy(xj, yj)
    return yj


def _grouped_points(D: Divisor, rel_tol: float = PAIR_TOL):
    """Cluster literally repeated points into (point, multiplicity)."""
    out: list[list] = []
    scale = 1.0 + float(np.max(np.abs(D.xs()))) if D.degree else 1.0
    for p in D.points:
        for grp in out:
            q = grp[0]
            if abs(p.x - q.x) < rel_tol * scale and abs(p.y - q.y) < rel_tol * scale:
                grp[1] += 1
                break
        else:
            out.append([p, 1])
    return [(p, m) for p, m in out]


def _solve_equilibrated(A: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Row/column-scaled solve; divisors with far-out points span many
    orders of magnitude across monomial columns, which plain partial
    pivoting handles poorly."""
    if b.ndim == 1:
        return _solve_equilibrated(A, b[:, None])[:, 0]
    r = np.max(np.abs(A), axis=1)
    r[r == 0] = 1.0
    Ar = A / r[:, None]
    br = b / r[:, None]
    c = np.max(np.abs(Ar), axis=0)
    c[c == 0] = 1.0
    x = np.linalg.solve(Ar / c[None, :], br)
    return x / c[:, None]


def interpolation_rows(curve: CurveModel, monomials, D: Divisor) -> np.ndarray:
    """Evaluation rows (confluent where points repeat) for the monomial list."""
    rows = []
    for p, mult in _grouped_points(D):
        if mult == 1:
            rows.append([m.eval(p.x, p.y) for m in monomials])
        else:
            xj = series.var(p.x, mult - 1)
            yj = branch_jet(curve, p.x, p.y, mult - 1)
            jets = [m.eval(xj, yj) for m in monomials]
            for r in range(mult):
                rows.append([series.const(j, mult - 1).c[r] if not isinstance(j, series.Jet) else j.c[r] for j in jets])
    return np.array(rows, dtype=complex)


def interpolate_in_basis(
    curve: CurveModel,
    basis: list[Monomial],
    lead: Monomial,
    lead_coeff: complex,
    D: Divisor,
) -> tuple[np.ndarray, PolyFunction]:
    """Solve for R = lead_coeff*lead + sum c_k basis_k vanishing on D."""
    if len(basis) != D.degree:
        raise InvalidCurveError(
            f"need a degree {len(basis)} divisor for this interpolation, got {D.degree}"
        )
    A = interpolation_rows(curve, basis, D)
    b = -lead_coeff * interpolation_rows(curve, [lead], D)[:, 0]
    try:
        c = _solve_equilibrated(A, b)
    except np.linalg.LinAlgError as exc:
        raise SpecialDivisorError(f"singular interpolation system: {exc}") from exc
    table = {(lead.i, lead.j): complex(lead_coeff)}
    for m, ck in zip(basis, c):
        table[(m.i, m.j)] = table.get((m.i, m.j), 0) + ck
    R = PolyFunction(curve, table)
    # residual gate: a large defect means the system was effectively singular
    worst = 0.0
    for p in D.points:
        worst = max(worst, abs(R.eval(p.x, p.y)) / max(1.0, R.term_scale(p.x, p.y)))
    if worst > 1e-6:
        raise SpecialDivisorError(f"interpolation defect {worst:.2e}: divisor is special")
    return c, R


def interpolate(curve: CurveModel, w: int, D: Divisor) -> PolyFunction:
    """Monic polynomial function of weight w >= 2g through D, deg D = w - g."""
    g = curve.genus
    if w < 2 * g:
        raise InvalidCurveError(f"weight {w} below 2g = {2 * g}")
    mons = curve.monomials_up_to(w)
    if mons[-1].weight != w:
        raise InvalidCurveError(f"no monomial of weight {w}")
    _, R = interpolate_in_basis(curve, mons[:-1], mons[-1], 1.0, D)
    return R


# -- zero divisors via resultants --------------------------------------------


def _poly_det(mat: list[list[np.ndarray]]) -> np.ndarray:
    """Determinant of a small matrix of x-polynomials (descending coeffs)."""
    size = len(mat)
    acc = np.zeros(1, dtype=complex)
    for perm in itertools.permutations(range(size)):
        sign = 1
        for i in range(size):
            for j in range(i + 1, size):
                if perm[i] > perm[j]:
                    sign = -sign
        term = np.array([sign + 0j])
        for r in range(size):
            term = np.convolve(term, mat[r][perm[r]])
        if len(term) > len(acc):
            acc = np.pad(acc, (len(term) - len(acc), 0))
        elif len(acc) > len(term):
            term = np.pad(term, (len(acc) - len(term), 0))
        acc = acc + term
    return acc


def curve_y_coefficient_polys(curve: CurveModel) -> list[np.ndarray]:
    """f as a polynomial in y: entry j = x-coefficients (descending) of y^j."""
    out = []
    dx = curve.s
    for j in range(curve.n + 1):
        c = np.zeros(dx + 1, dtype=complex)
        if j == 0:
            c[0] = 1.0  # x^s
        if j == curve.n:
            c = np.array([-1.0 + 0j])
        out.append(c)
    for i, j, k in curve.terms:
        lk = curve.lam.get(k)
        if lk:
            out[j][dx - i] += lk
    return out


def y_resultant(curve: CurveModel, R: PolyFunction) -> np.ndarray:
    """Coefficients (descending) of Res_y(R, f) as a polynomial in x."""
    n = curve.n
    fc = curve_y_coefficient_polys(curve)
    rc = R.y_coefficient_polys()
    dr = R.y_degree()
    if dr == 0:
        raise InvalidCurveError("x-only functions need no resultant")
    size = n + dr
    zero = np.array([0j])
    mat = [[zero] * size for _ in range(size)]
    for r in range(dr):  # dr shifted copies of f
        for k in range(n + 1):
            mat[r][r + k] = fc[n - k]
    for r in range(n):  # n shifted copies of R
        for k in range(dr + 1):
            mat[dr + r][r + k] = rc[dr - k]
    return _poly_det(mat)


def fiber_points(curve: CurveModel, x0: complex) -> np.ndarray:
    """All n roots y of f(x0, y) = 0."""
    n = curve.n
    c = np.zeros(n + 1, dtype=complex)
    c[0] = -1.0
    c[n] += x0**curve.s
    for i, j, k in curve.terms:
        lk = curve.lam.get(k)
        if lk:
            c[n - j] += lk * x0**i
    # leading coefficient is exactly -1: bypass degree-deficiency stripping
    return newton_polish(c, np.roots(c))


def _polish_multiple_zero(
    curve: CurveModel, R: PolyFunction, x: complex, y: complex, m: int, steps: int = 30
):
    """Newton for an m-fold zero of R along the curve branch.

    h(x) = R(x, y(x)) has an m-fold root; Newton on h^(m-1) restores the
    quadratic convergence that plain Newton loses at multiple roots.
    Requires the branch to be smooth there (f_y != 0), else returns input.
    """
    try:
        for _ in range(steps):
            xj = series.var(x, m)
            yj = branch_jet(curve, x, y, m)
            h = R.eval(xj, yj)
            if abs(h.c[m]) == 0:
                break
            step = h.c[m - 1] / (m * h.c[m])
            if abs(step) > 0.5 * (1.0 + abs(x)):
                break
            x = x - step
            y = _nearest_fiber_y(curve, x, y)
            if abs(step) < 1e-15 * (1.0 + abs(x)):
                break
    except BranchPointError:
        return x, y
    return x, y


def _nearest_fiber_y(curve: CurveModel, x: complex, y_guess: complex) -> complex:
    ys = fiber_points(curve, x)
    return complex(ys[int(np.argmin(np.abs(ys - y_guess)))])


def _polish_common_zero(curve: CurveModel, R: PolyFunction, x: complex, y: complex, steps: int = 5):
    """Newton on the joint system (R, f) = 0; returns the input on failure."""
    for _ in range(steps):
        r1, r2 = R.eval(x, y), curve.eval_f(x, y)
        j11, j12 = R.eval_dx(x, y), R.eval_dy(x, y)
        j21, j22 = curve.eval_fx(x, y), curve.eval_fy(x, y)
        det = j11 * j22 - j12 * j21
        if abs(det) < 1e-12 * (1 + abs(j11) + abs(j12) + abs(j21) + abs(j22)) ** 2:
            return x, y
        dx = (r1 * j22 - r2 * j12) / det
        dy = (r2 * j11 - r1 * j21) / det
        if abs(dx) + abs(dy) > 0.5 * (1 + abs(x) + abs(y)):
            return x, y
        x, y = x - dx, y - dy
    return x, y


def zero_divisor(curve: CurveModel, R: PolyFunction, cluster_tol: float = 1e-6) -> Divisor:
    """All affine common zeros of (R, f), with multiplicity.

    The degree equals the weight of R unless zeros escaped to infinity;
    callers needing the full count compare against ``R.weight``.
    """
    if not R.coeffs:
        raise InvalidCurveError("zero polynomial has no zero divisor")
    points: list[CurvePoint] = []
    if R.y_degree() == 0:
        rx = R.y_coefficient_polys()[0]
        for x0, mult in cluster_roots(poly_roots(rx), cluster_tol):
            if mult > 1:  # multiple x-root: Newton on the (m-1)-st derivative
                d = rx
                for _ in range(mult - 1):
                    d = np.polyder(d)
                x0 = complex(newton_polish(d, np.array([x0]))[0])
            for y0 in fiber_points(curve, x0):
                x1, y1 = _polish_common_zero(curve, R, x0, y0) if mult == 1 else (x0, y0)
                points.extend([CurvePoint(x1, y1)] * mult)
        return Divisor(curve, points, validate=False)

    res = y_resultant(curve, R)
    scale = float(np.max(np.abs(res))) if res.size else 0.0
    if scale == 0.0:
        raise InvalidCurveError("resultant vanishes identically: R shares a component with f")
    res = res / scale
    lead = int(np.argmax(np.abs(res) > 1e-11))
    res = res[lead:]
    for x0, mult in cluster_roots(poly_roots(res), cluster_tol):
        ys = fiber_points(curve, x0)
        vals = np.array([abs(R.eval(x0, yy)) for yy in ys])
        rs = max(R.term_scale(x0, yy) for yy in ys)
        qualify = [int(t) for t in np.nonzero(vals < 1e-5 * rs)[0]]
        if not qualify:
            qualify = [int(np.argmin(vals))]
        if mult % len(qualify) != 0:
            raise PrecisionError(
                f"cannot distribute multiplicity {mult} over {len(qualify)} fiber zeros at x={x0:.6g}"
            )
        m_each = mult // len(qualify)
        for t in qualify:
            if m_each == 1:
                x1, y1 = _polish_common_zero(curve, R, x0, ys[t])
            else:
                x1, y1 = _polish_multiple_zero(curve, R, x0, ys[t], m_each)
            points.extend([CurvePoint(x1, y1)] * m_each)
    points = _merge_near_doubles(curve, R, points)
    return Divisor(curve, points, validate=False)


def _merge_near_doubles(curve: CurveModel, R: PolyFunction, points, band: float = 3e-5):
    """Rescue double zeros whose root pair straddled the cluster tolerance.

    A pair of recovered points closer than ``band`` is tested as a true
    double zero: the multiple-root polish must converge nearby with both
    h and h' vanishing along the branch; only then is the pair replaced.
    """
    if len(points) < 2:
        return points
    scale = 1.0 + max(abs(p.x) for p in points)
    pts = list(points)
    for a in range(len(pts)):
        for b in range(a + 1, len(pts)):
            pa, pb = pts[a], pts[b]
            split = abs(pa.x - pb.x) + abs(pa.y - pb.y)
            if split == 0.0 or split > band * scale:
                continue
            xm, ym = 0.5 * (pa.x + pb.x), 0.5 * (pa.y + pb.y)
            x2, y2 = _polish_multiple_zero(curve, R, xm, ym, 2)
            if abs(x2 - xm) > 5.0 * split + 1e-12 * scale:
                continue
            try:
                xj = series.var(x2, 2)
                yj = branch_jet(curve, x2, y2, 2)
            except BranchPointError:
                continue
            h = R.eval(xj, yj)
            href = max(1.0, R.term_scale(x2, y2))
            if abs(h.c[0]) < 1e-10 * href and abs(h.c[1]) < 1e-8 * href:
                pts[a] = CurvePoint(x2, y2)
                pts[b] = CurvePoint(x2, y2)
    return pts


def complement(
    curve: CurveModel, R: PolyFunction, D: Divisor, rel_tol: float = MATCH_TOL
) -> Divisor:
    """The divisor D* with (R)_0 = D + D*.

    Raises DegenerateComplementError when zeros of R escaped to infinity
    (degree deficiency) and InconsistencyError when D fails to embed in
    the divisor of zeros within tolerance.
    """
    Z = zero_divisor(curve, R)
    if Z.degree != R.weight:
        raise DegenerateComplementError(
            f"divisor of zeros has degree {Z.degree} < weight {R.weight}: points at infinity"
        )
    zx, zy = Z.xs(), Z.ys()
    dx, dy = D.xs(), D.ys()
    cost = np.abs(dx[:, None] - zx[None, :]) + np.abs(dy[:, None] - zy[None, :])
    rows, cols = linear_sum_assignment(cost)
    scale = 1.0 + max(np.max(np.abs(dx)), np.max(np.abs(dy))) if D.degree else 1.0
    # points recovered from multiple zeros carry eps^(1/m) splitting, so
    # their matching gate must be wider than the simple-zero one; the
    # multiplicity is read on both sides of the pairing
    def _mults(px, py):
        m = np.ones(len(px))
        for k in range(len(px)):
            m[k] = np.sum(
                (np.abs(px - px[k]) < 1e-5 * scale) & (np.abs(py - py[k]) < 1e-5 * scale)
            )
        return m

    mult_d = _mults(dx, dy)
    mult_z = _mults(zx, zy)
    for r, c in zip(rows, cols):
        gate = rel_tol if (mult_d[r] == 1 and mult_z[c] == 1) else max(rel_tol, 1e-5)
        if cost[r, c] / scale > gate:
            raise InconsistencyError(
                f"divisor does not embed in zeros of R: {cost[r, c] / scale:.2e} relative"
            )
    taken = set(int(c) for c in cols)
    remaining = [p for k, p in enumerate(Z.points) if k not in taken]
    return Divisor(curve, remaining, validate=False)
