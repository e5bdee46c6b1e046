import numpy as np
import pytest

from kleinian.curves import curve_model
from kleinian.divisors import (
    Divisor,
    branch_jet,
    complement,
    fiber_points,
    interpolate,
    multiset_distance,
    poly_mul_raw,
    reduce_poly,
    y_resultant,
    zero_divisor,
)
from kleinian.errors import (
    BranchPointError,
    InconsistencyError,
    NonReducedDivisorError,
)
from kleinian.sampling import random_curve, random_divisor

FAMILIES = ((2, 5), (2, 7), (3, 4))


def test_reduce_examples(rng):
    c27 = random_curve(2, 7, rng)
    r = reduce_poly(c27, {(0, 2): 1.0})  # y^2
    expect = {(7, 0): 1.0}
    for i, j, k in c27.terms:
        expect[(i, j)] = c27.lam.get(k, 0.0)
    for key, v in expect.items():
        if v:
            assert abs(r.coeffs[key] - v) < 1e-14
    assert r.y_degree() == 0
    c34 = curve_model(3, 4)
    r = reduce_poly(c34, {(0, 3): 1.0})
    assert r.coeffs == {(4, 0): 1.0}


def test_reduce_idempotent(rng):
    curve = random_curve(3, 4, rng)
    raw = {(2, 5): 1.3 - 0.2j, (1, 4): -0.7j, (0, 1): 2.0}
    once = reduce_poly(curve, raw)
    twice = reduce_poly(curve, once.coeffs)
    assert once.coeffs.keys() == twice.coeffs.keys()
    for k in once.coeffs:
        assert abs(once.coeffs[k] - twice.coeffs[k]) < 1e-13


def test_reduce_equal_mod_f(rng):
    curve = random_curve(3, 4, rng)
    raw = {(1, 5): 0.8 + 0.1j, (0, 3): -1.0, (2, 0): 0.5}
    red = reduce_poly(curve, raw)
    for _ in range(5):
        x = complex(*rng.uniform(-1, 1, 2))
        y = fiber_points(curve, x)[0]
        direct = sum(c * x**i * y**j for (i, j), c in raw.items())
        assert abs(direct - red.eval(x, y)) < 1e-10 * max(1.0, abs(direct))


def test_interpolate_genus1_line():
    curve = curve_model(2, 3, {4: -1.0})
    D = Divisor(curve, [(2.0, np.sqrt(6.0))])
    R = interpolate(curve, 2, D)
    assert set(R.coeffs) == {(1, 0), (0, 0)}
    assert abs(R.coeffs[(1, 0)] - 1.0) < 1e-15
    assert abs(R.coeffs[(0, 0)] + 2.0) < 1e-12


def test_interpolation_exactness_random():
    rng = np.random.default_rng(5)
    for n, s in FAMILIES:
        worst = 0.0
        for _ in range(200):
            curve = random_curve(n, s, rng)
            g = curve.genus
            D = random_divisor(curve, g, rng)
            R = interpolate(curve, 2 * g, D)
            for p in D:
                worst = max(worst, abs(R.eval(p.x, p.y)) / max(1.0, R.term_scale(p.x, p.y)))
        assert worst < 1e-9


def test_34_determinant_ratio_oracle(rng):
    # weight-6 interpolation equals the 4x4 / 3x3 determinant ratio
    curve = random_curve(3, 4, rng)
    D = random_divisor(curve, 3, rng)
    R = interpolate(curve, 6, D)
    xs, ys = D.xs(), D.ys()

    def ratio(x, y):
        num = np.array(
            [
                [x**2, y, x, 1.0],
                [xs[0] ** 2, ys[0], xs[0], 1.0],
                [xs[1] ** 2, ys[1], xs[1], 1.0],
                [xs[2] ** 2, ys[2], xs[2], 1.0],
            ]
        )
        den = np.array([[ys[0], xs[0], 1.0], [ys[1], xs[1], 1.0], [ys[2], xs[2], 1.0]])
        return np.linalg.det(num) / np.linalg.det(den)

    for _ in range(5):
        x = complex(*rng.uniform(-1, 1, 2))
        y = fiber_points(curve, x)[1]
        assert abs(R.eval(x, y) - ratio(x, y)) < 1e-9 * max(1.0, abs(ratio(x, y)))


def test_confluent_interpolation(rng):
    for n, s in FAMILIES:
        curve = random_curve(n, s, rng)
        g = curve.genus
        base = random_divisor(curve, g - 1, rng)
        doubled = Divisor(curve, list(base.points) + [base.points[0]], validate=False)
        R = interpolate(curve, 2 * g, doubled)
        p = base.points[0]
        fy = curve.eval_fy(p.x, p.y)
        dRdx = R.eval_dx(p.x, p.y) - R.eval_dy(p.x, p.y) * curve.eval_fx(p.x, p.y) / fy
        scale = max(1.0, R.term_scale(p.x, p.y))
        assert abs(R.eval(p.x, p.y)) / scale < 1e-7
        assert abs(dRdx) / scale < 1e-7


def test_branch_jet_rejects_branch_points():
    curve = curve_model(2, 3, {4: -1.0})
    with pytest.raises(BranchPointError):
        branch_jet(curve, 1.0, 0.0, 2)


def test_zero_divisor_fiber():
    curve = curve_model(2, 3, {4: -1.0})
    x1 = 2.0
    y1 = np.sqrt(6.0)
    R = interpolate(curve, 2, Divisor(curve, [(x1, y1)]))
    Z = zero_divisor(curve, R)
    assert Z.degree == 2
    got = sorted([(p.x.real, p.y.real) for p in Z])
    assert abs(got[0][1] + got[1][1]) < 1e-12
    assert all(abs(x - 2.0) < 1e-12 for x, _ in got)


def test_zero_divisor_pham_34():
    # zeros of (y - 1, f) on the Pham (3,4) curve: the four points (i^k, 1)
    curve = curve_model(3, 4)
    from kleinian.divisors import PolyFunction

    R = PolyFunction(curve, {(0, 1): 1.0, (0, 0): -1.0})
    Z = zero_divisor(curve, R)
    assert Z.degree == 4
    xs = np.sort_complex(Z.xs())
    assert np.allclose(np.sort_complex(np.array([1, -1, 1j, -1j])), xs, atol=1e-10)
    assert np.allclose(Z.ys(), 1.0, atol=1e-10)


def test_zero_divisor_containment(rng):
    for n, s in FAMILIES:
        curve = random_curve(n, s, rng)
        g = curve.genus
        D = random_divisor(curve, 2 * g, rng)
        R = interpolate(curve, 3 * g, D)
        Z = zero_divisor(curve, R)
        assert Z.degree == 3 * g
        # containment: match D into Z
        from scipy.optimize import linear_sum_assignment

        cost = np.abs(D.xs()[:, None] - Z.xs()[None, :]) + np.abs(
            D.ys()[:, None] - Z.ys()[None, :]
        )
        rows, cols = linear_sum_assignment(cost)
        assert cost[rows, cols].max() < 1e-8 * (1 + np.abs(D.xs()).max())


def test_resultant_degree(rng):
    for n, s in FAMILIES:
        curve = random_curve(n, s, rng)
        g = curve.genus
        D = random_divisor(curve, g, rng)
        R = interpolate(curve, 2 * g, D)
        if R.y_degree() == 0:
            continue
        res = y_resultant(curve, R)
        res = res / np.max(np.abs(res))
        lead = int(np.argmax(np.abs(res) > 1e-11))
        assert len(res) - 1 - lead == R.weight


def test_complement_bookkeeping(rng):
    for n, s in FAMILIES:
        curve = random_curve(n, s, rng)
        g = curve.genus
        D = random_divisor(curve, g, rng)
        R = interpolate(curve, 2 * g, D)
        Dstar = complement(curve, R, D)
        assert D.degree + Dstar.degree == R.weight
        assert Dstar.max_curve_residual() < 1e-10
        if n == 2:  # involution: R is x-only, zeros pair as (x, +/-y)
            assert multiset_distance(
                Dstar, Divisor(curve, [(p.x, -p.y) for p in D], validate=False)
            ) < 1e-10


def test_complement_rejects_foreign_divisor(rng):
    curve = random_curve(2, 5, rng)
    D = random_divisor(curve, 2, rng)
    R = interpolate(curve, 4, D)
    other = random_divisor(curve, 2, rng)
    with pytest.raises(InconsistencyError):
        complement(curve, R, other)


def test_involution_detection():
    curve = curve_model(2, 5, {4: 0.3})
    x = 0.7 + 0.2j
    y = np.sqrt(curve.eval_f(x, 0.0) + 0j)  # f = -y^2 + P: y^2 = P(x)
    D = Divisor(curve, [(x, y), (x, -y)], validate=False)
    assert not D.is_reduced()
    with pytest.raises(NonReducedDivisorError):
        D.assert_reduced()
    c34 = curve_model(3, 4, {6: 0.4})
    ys = fiber_points(c34, x)
    two = Divisor(c34, [(x, ys[0]), (x, ys[1])], validate=False)
    assert two.is_reduced()  # n-1 = 2 points of a fiber are allowed
    three = Divisor(c34, [(x, ys[0]), (x, ys[1]), (x, ys[2])], validate=False)
    assert not three.is_reduced()


def test_poly_mul_raw():
    curve = curve_model(2, 5)
    from kleinian.divisors import PolyFunction

    a = PolyFunction(curve, {(1, 0): 1.0, (0, 1): 2.0})
    b = PolyFunction(curve, {(0, 1): 1.0})
    prod = poly_mul_raw(a, b)
    assert prod == {(1, 1): 1.0, (0, 2): 2.0}
