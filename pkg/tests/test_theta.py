import numpy as np
import pytest

from kleinian.errors import InvalidCurveError
from kleinian.theta import (
    Characteristic,
    all_half_characteristics,
    log_theta_derivatives,
    theta,
    theta_derivatives,
    theta_directional,
)

TAU1 = np.array([[1j]])


def brute_theta(v, tau, char, N=30):
    ep, e = char.vectors()
    g = len(ep)
    total = 0j
    from itertools import product

    for n in product(range(-N, N + 1), repeat=g):
        m = np.array(n, dtype=float) + ep
        total += np.exp(1j * np.pi * m @ tau @ m + 2j * np.pi * m @ (np.asarray(v) + e))
    return total


def test_brute_force_g1():
    ch = Characteristic.zero(1)
    for v in (0.0, 0.3, 0.2 + 0.1j):
        assert abs(theta([v], TAU1) - brute_theta([v], TAU1, ch)) < 1e-13


def test_brute_force_g2_with_char():
    tau = np.array([[0.2 + 1.1j, 0.1 - 0.05j], [0.1 - 0.05j, -0.3 + 0.9j]])
    ch = Characteristic((0.5, 0.0), (0.0, 0.5))
    v = [0.12 - 0.2j, -0.34 + 0.1j]
    assert abs(theta(v, tau, ch) - brute_theta(v, tau, ch)) < 1e-11


def test_periodicity_integer_shift():
    v = np.array([0.31 + 0.12j])
    assert abs(theta(v + 1.0, TAU1) - theta(v, TAU1)) < 1e-12


def test_quasi_periodicity():
    tau = np.array([[0.2 + 1.1j, 0.1j], [0.1j, 0.9j]])
    v = np.array([0.2 - 0.1j, 0.05 + 0.3j])
    m = np.array([1.0, -2.0])
    lhs = theta(v + tau @ m, tau)
    rhs = np.exp(-1j * np.pi * m @ tau @ m - 2j * np.pi * m @ v) * theta(v, tau)
    assert abs(lhs - rhs) < 1e-10 * abs(rhs)


def test_odd_characteristic_parity():
    odd = Characteristic((0.5,), (0.5,))
    assert odd.parity() == -1
    assert abs(theta([0.0], TAU1, odd)) < 1e-14
    # odd function of v
    v = 0.17 - 0.05j
    assert abs(theta([v], TAU1, odd) + theta([-v], TAU1, odd)) < 1e-12


def test_derivatives_match_finite_differences():
    tau = np.array([[0.1 + 1.0j, 0.05], [0.05, 0.2 + 0.8j]])
    ch = Characteristic((0.0, 0.5), (0.5, 0.0))
    v = np.array([0.21 - 0.1j, -0.33 + 0.2j])
    ders = theta_derivatives(v, tau, [(0,), (1,), (0, 1), (1, 1)], char=ch)
    h = 1e-5
    e0, e1 = np.array([1.0, 0.0]), np.array([0.0, 1.0])
    fd0 = (theta(v + h * e0, tau, ch) - theta(v - h * e0, tau, ch)) / (2 * h)
    assert abs(ders[(0,)] - fd0) < 1e-7 * (1 + abs(fd0))
    fd11 = (theta(v + h * e1, tau, ch) - 2 * theta(v, tau, ch) + theta(v - h * e1, tau, ch)) / h**2
    assert abs(ders[(1, 1)] - fd11) < 1e-5 * (1 + abs(fd11))


def test_directional_consistency():
    tau = np.array([[0.1 + 1.0j, 0.05], [0.05, 0.2 + 0.8j]])
    w = np.array([0.3, -0.7 + 0.2j])
    v = np.array([0.05, 0.07])
    ders = theta_derivatives(v, tau, [(), (0,), (1,), (0, 0), (0, 1), (1, 1)])
    direc = theta_directional(v, tau, w, 2)
    d1 = w[0] * ders[(0,)] + w[1] * ders[(1,)]
    d2 = w[0] ** 2 * ders[(0, 0)] + 2 * w[0] * w[1] * ders[(0, 1)] + w[1] ** 2 * ders[(1, 1)]
    assert abs(direc[0] - ders[()]) < 1e-13 * abs(ders[()])
    assert abs(direc[1] - d1) < 1e-12 * (1 + abs(d1))
    assert abs(direc[2] - d2) < 1e-12 * (1 + abs(d2))


def test_log_derivatives_of_gaussian_limit():
    # for a product tau the g=2 theta factorizes: mixed log derivative -> 0
    tau = np.array([[1.2j, 0.0], [0.0, 0.9j]])
    v = np.array([0.21, 0.17 - 0.1j])
    L = log_theta_derivatives(v, tau, [(0, 1)])
    assert abs(L[(0, 1)]) < 1e-12


def test_half_characteristics_count():
    chars = all_half_characteristics(2)
    assert len(chars) == 16
    odd = [c for c in chars if c.parity() == -1]
    assert len(odd) == 6  # classical count 2^(g-1)(2^g - 1)


def test_invalid_tau_rejected():
    with pytest.raises(InvalidCurveError):
        theta([0.0], np.array([[1.0]]))  # Im tau = 0
    with pytest.raises(InvalidCurveError):
        theta([0.0, 0.0], np.array([[1j, 0.5], [0.0, 1j]]))  # asymmetric
