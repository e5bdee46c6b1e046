import numpy as np
import pytest

from kleinian import series
from kleinian.errors import SeriesError


def test_mul_matches_polynomial_product():
    a = series.Jet([1.0, 2.0, 3.0, 0.0])
    b = series.Jet([4.0, -1.0, 0.5, 2.0])
    prod = (a * b).c
    full = np.convolve(a.c, b.c)[:4]
    assert np.allclose(prod, full)


def test_reciprocal_and_division():
    rng = np.random.default_rng(0)
    c = rng.standard_normal(9) + 1j * rng.standard_normal(9)
    c[0] = 1.5 + 0.2j
    a = series.Jet(c)
    one = a * a.reciprocal()
    assert abs(one.c[0] - 1.0) < 1e-14
    assert np.max(np.abs(one.c[1:])) < 1e-13
    b = series.Jet(rng.standard_normal(9))
    assert np.allclose(((b / a) * a).c, b.c, atol=1e-12)


def test_reciprocal_requires_unit():
    with pytest.raises(SeriesError):
        series.Jet([0.0, 1.0]).reciprocal()


def test_deriv_integ_roundtrip():
    a = series.Jet([0.0, 1.0, 2.0, 3.0, 4.0])
    assert np.allclose(a.deriv().integ().c[:-1], a.c[:-1])


def test_power():
    a = series.var(2.0, 5)
    assert np.allclose((a**3).c, np.array([8.0, 12.0, 6.0, 1.0, 0.0, 0.0]))


def test_solve_linear_matches_numpy():
    rng = np.random.default_rng(1)
    n, order = 4, 6
    A = [[series.Jet(rng.standard_normal(order + 1) + 1j * rng.standard_normal(order + 1))
          for _ in range(n)] for _ in range(n)]
    b = [series.Jet(rng.standard_normal(order + 1)) for _ in range(n)]
    x = series.solve_linear([row[:] for row in A], b[:])
    # residual of the jet system, checked coefficientwise
    for i in range(n):
        acc = series.const(0.0, order)
        for j in range(n):
            acc = acc + A[i][j] * x[j]
        assert np.max(np.abs(acc.c - b[i].c)) < 1e-10
