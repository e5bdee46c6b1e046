import numpy as np
import pytest

from kleinian.curves import curve_model
from kleinian.divisors import Divisor, interpolate, multiset_distance
from kleinian.errors import (
    AmbiguousSelectionError,
    InconsistentRecordError,
    InvalidCurveError,
    PoleOfRepresentationError,
)
from kleinian.sampling import random_curve, random_divisor
from kleinian.uniformization import (
    abel_jacobian,
    basis_flow_derivative,
    basis_to_divisor,
    d_along_u,
    divisor_to_basis,
    extended_34,
    solution_polynomials,
)

FAMILIES = ((2, 5), (2, 7), (3, 4))


def test_genus1_record():
    curve = curve_model(2, 3, {4: -1.0})
    x1, y1 = 2.0, np.sqrt(6.0)
    rec = divisor_to_basis(curve, Divisor(curve, [(x1, y1)]))
    assert abs(rec.p[1] - x1) < 1e-13
    assert abs(rec.q[1] + 2.0 * y1) < 1e-13
    D = basis_to_divisor(curve, rec)
    assert abs(D.points[0].x - x1) < 1e-13 and abs(D.points[0].y - y1) < 1e-13


def test_27_vieta(rng):
    curve = random_curve(2, 7, rng)
    D = random_divisor(curve, 3, rng)
    rec = divisor_to_basis(curve, D)
    xs = D.xs()
    assert abs(rec.p[1] - xs.sum()) < 1e-10
    assert abs(rec.p[3] + (xs[0] * xs[1] + xs[0] * xs[2] + xs[1] * xs[2])) < 1e-10
    assert abs(rec.p[5] - xs.prod()) < 1e-10


def test_34_solution_polynomial_display(rng):
    # R_lo from the record equals the monic weight-6 interpolation
    curve = random_curve(3, 4, rng)
    D = random_divisor(curve, 3, rng)
    rec = divisor_to_basis(curve, D)
    R6 = interpolate(curve, 6, D)
    R_lo, R_hi = solution_polynomials(curve, rec)
    for key in set(R6.coeffs) | set(R_lo.coeffs):
        assert abs(R6.coeffs.get(key, 0) - R_lo.coeffs.get(key, 0)) < 1e-9
    # coefficient pattern: x^2 - y p[1] - x p[2] - p[5]
    assert abs(R_lo.coeffs[(0, 1)] + rec.p[1]) < 1e-12
    assert abs(R_lo.coeffs[(1, 0)] + rec.p[2]) < 1e-12
    assert abs(R_lo.coeffs[(0, 0)] + rec.p[5]) < 1e-12
    # R_hi vanishes on D with leading coefficient 2 on x y
    assert abs(R_hi.coeffs[(1, 1)] - 2.0) < 1e-15
    for p in D:
        assert abs(R_hi.eval(p.x, p.y)) < 1e-8 * max(1.0, R_hi.term_scale(p.x, p.y))


def test_roundtrip_all_families(rng):
    for n, s in FAMILIES:
        worst = 0.0
        for _ in range(30):
            curve = random_curve(n, s, rng)
            D = random_divisor(curve, curve.genus, rng)
            worst = max(worst, multiset_distance(D, basis_to_divisor(curve, divisor_to_basis(curve, D))))
        assert worst < 1e-8


def test_special_divisor_raises(rng):
    # two involution-paired points make the hyperelliptic system singular
    curve = random_curve(2, 7, rng)
    D = random_divisor(curve, 3, rng)
    p = D.points[0]
    bad = Divisor(curve, [(p.x, p.y), (p.x, -p.y), D.points[1]], validate=False)
    with pytest.raises(Exception) as exc_info:
        divisor_to_basis(curve, bad)
    assert exc_info.type.__name__ in ("NonReducedDivisorError", "SpecialDivisorError")


def test_perturbed_record_rejected(rng):
    # a 10 percent violation of the model must not invert cleanly
    curve = random_curve(3, 4, rng)
    D = random_divisor(curve, 3, rng)
    rec = divisor_to_basis(curve, D)
    rec.q[2] = rec.q[2] * 1.1 + 0.1
    with pytest.raises((InconsistentRecordError, AmbiguousSelectionError)):
        basis_to_divisor(curve, rec)


def test_wrong_degree_rejected(rng):
    curve = random_curve(2, 5, rng)
    with pytest.raises(InvalidCurveError):
        divisor_to_basis(curve, random_divisor(curve, 1, rng))


def test_abel_jacobian_genus1():
    curve = curve_model(2, 3, {4: -1.0})
    D = Divisor(curve, [(2.0, np.sqrt(6.0))])
    M, Minv = abel_jacobian(curve, D)
    assert abs(M[0, 0] + 1.0 / (2.0 * np.sqrt(6.0))) < 1e-14
    assert abs(M[0, 0] * Minv[0, 0] - 1.0) < 1e-14


def test_abel_jacobian_degenerates_toward_involution(rng):
    curve = random_curve(2, 5, rng)
    D = random_divisor(curve, 2, rng)
    p = D.points[0]
    dets = []
    for eps in (0.1, 0.01, 0.001):
        from kleinian.uniformization import _shift_point

        q = _shift_point(curve, p, eps)
        close = Divisor(curve, [(q.x, -q.y), p], validate=False)
        M, _ = abel_jacobian(curve, close)
        dets.append(abs(np.linalg.det(M)))
    assert dets[2] < dets[1] < dets[0]


def test_d_along_u_symmetry(rng):
    # d wp_{1,wi} / du_wj is symmetric in (wi, wj): both are wp_{1,wi,wj}
    curve = random_curve(2, 5, rng)
    D = random_divisor(curve, 2, rng)
    d13 = d_along_u(curve, D, 3, lambda dd: divisor_to_basis(curve, dd).p[1])
    d31 = d_along_u(curve, D, 1, lambda dd: divisor_to_basis(curve, dd).p[3])
    assert abs(d13 - d31) < 1e-5 * (1 + abs(d13))


def test_ladder_fd_and_jets(rng):
    curve = random_curve(2, 7, rng)
    D = random_divisor(curve, 3, rng)
    rec = divisor_to_basis(curve, D)
    for w in curve.gaps:
        fd = d_along_u(curve, D, 1, lambda dd, w=w: divisor_to_basis(curve, dd).p[w])
        jet = basis_flow_derivative(curve, D, 1, "p", w, 1)
        assert abs(fd - rec.q[w]) < 1e-6 * (1 + abs(rec.q[w]))
        assert abs(jet - rec.q[w]) < 1e-10 * (1 + abs(rec.q[w]))


def test_34_q3_via_derivative(rng):
    curve = random_curve(3, 4, rng)
    D = random_divisor(curve, 3, rng)
    rec = divisor_to_basis(curve, D)
    wp111 = basis_flow_derivative(curve, D, 1, "p", 1, 1)
    assert abs(rec.q[1] - (wp111 - rec.p[2])) < 1e-10


def test_extended_34_pham(rng):
    # lambda = 0: wp_1111 = 6 p2^2 - 3 wp22
    curve = curve_model(3, 4)
    D = random_divisor(curve, 3, rng)
    rec = extended_34(curve, divisor_to_basis(curve, D))
    lhs = rec.extended[(1, 1, 1, 1)]
    rhs = 6.0 * rec.p[1] ** 2 - 3.0 * rec.extended[(2, 2)]
    assert abs(lhs - rhs) < 1e-12 * (1 + abs(lhs))


def test_extended_34_derivative_crosscheck(rng):
    curve = random_curve(3, 4, rng)
    D = random_divisor(curve, 3, rng)
    rec = extended_34(curve, divisor_to_basis(curve, D))
    d1 = d_along_u(
        curve, D, 1,
        lambda dd: divisor_to_basis(curve, dd).q[1] + divisor_to_basis(curve, dd).p[2],
    )
    assert abs(rec.extended[(1, 1, 1, 1)] - d1) < 1e-5 * (1 + abs(d1))


def test_extended_34_pole(rng):
    curve = random_curve(3, 4, rng)
    D = random_divisor(curve, 3, rng)
    rec = divisor_to_basis(curve, D)
    rec.p[1] = 0.0
    with pytest.raises(PoleOfRepresentationError):
        extended_34(curve, rec)


def test_extended_relabeling_invariance(rng):
    curve = random_curve(3, 4, rng)
    D = random_divisor(curve, 3, rng)
    rec1 = extended_34(curve, divisor_to_basis(curve, D))
    shuffled = Divisor(curve, [D.points[2], D.points[0], D.points[1]], validate=False)
    rec2 = extended_34(curve, divisor_to_basis(curve, shuffled))
    assert abs(rec1.extended[(2, 2)] - rec2.extended[(2, 2)]) < 1e-10


def test_evenness_surrogate(rng):
    # involution of the divisor fixes p and flips q (hyperelliptic)
    curve = random_curve(2, 7, rng)
    D = random_divisor(curve, 3, rng)
    rec = divisor_to_basis(curve, D)
    recI = divisor_to_basis(curve, Divisor(curve, [(p.x, -p.y) for p in D], validate=False))
    for w in curve.gaps:
        assert abs(rec.p[w] - recI.p[w]) < 1e-10 * (1 + abs(rec.p[w]))
        assert abs(rec.q[w] + recI.q[w]) < 1e-10 * (1 + abs(rec.q[w]))


def test_homogeneity_of_basis_values(rng):
    for n, s in FAMILIES:
        curve = random_curve(n, s, rng)
        D = random_divisor(curve, curve.genus, rng)
        rec = divisor_to_basis(curve, D)
        c = complex(*rng.uniform(0.7, 1.3, 2))
        curve2 = curve_model(n, s, {k: c**k * v for k, v in curve.lam.items()})
        D2 = Divisor(curve2, [(c**n * p.x, c**s * p.y) for p in D], validate=False)
        rec2 = divisor_to_basis(curve2, D2)
        for w in curve.gaps:
            assert abs(rec2.p[w] - c ** (w + 1) * rec.p[w]) < 1e-9 * (1 + abs(rec2.p[w]))
            assert abs(rec2.q[w] - c ** (w + 2) * rec.q[w]) < 1e-9 * (1 + abs(rec2.q[w]))


def test_abel_jacobian_row_scaling(rng):
    # under lambda_k -> c^k lambda_k, (x,y) -> (c^n x, c^s y), the row of
    # gap w scales by c^(-w-n): du_w has weight -w and x has weight n
    curve = random_curve(2, 5, rng)
    D = random_divisor(curve, 2, rng)
    M1, _ = abel_jacobian(curve, D)
    c = complex(*rng.uniform(0.7, 1.3, 2))
    curve2 = curve_model(2, 5, {k: c**k * v for k, v in curve.lam.items()})
    D2 = Divisor(curve2, [(c**2 * p.x, c**5 * p.y) for p in D], validate=False)
    M2, _ = abel_jacobian(curve2, D2)
    for i, w in enumerate(curve.gaps):
        factor = c ** (-w - curve.n)
        assert np.max(np.abs(M2[i] - factor * M1[i])) < 1e-10 * np.max(np.abs(M2[i]))
