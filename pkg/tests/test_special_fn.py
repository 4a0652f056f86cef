import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.integrate import quad

from vortexff.special_fn import (
    RadialIndex,
    assoc_laguerre,
    hydrogen_radial,
    spherical_harmonic,
)


def laguerre_series(p, a, x):
    return sum(
        (-1) ** j * math.comb(p + a, p - j) * x**j / math.factorial(j) for j in range(p + 1)
    )


@pytest.mark.parametrize(
    "p, a, x, expected",
    [
        (0, 3, 7.2, 1.0),
        (1, 2, 1.0, 2.0),
        (2, 0, 2.0, -1.0),
    ],
)
def test_laguerre_examples(p, a, x, expected):
    assert assoc_laguerre(p, a, x) == pytest.approx(expected, abs=1e-15)


@pytest.mark.parametrize("p", range(0, 9))
@pytest.mark.parametrize("a", [0, 1, 3])
def test_laguerre_matches_series(p, a):
    x = np.linspace(-3.0, 12.0, 31)
    expected = np.array([laguerre_series(p, a, v) for v in x])
    np.testing.assert_allclose(assoc_laguerre(p, a, x), expected, rtol=1e-10, atol=1e-10)


@settings(max_examples=300, deadline=None)
@given(
    p=st.integers(1, 10),
    a=st.integers(0, 5),
    x=st.floats(-50.0, 50.0, allow_nan=False),
)
def test_laguerre_recurrence(p, a, x):
    lhs = (p + 1) * assoc_laguerre(p + 1, a, x)
    rhs = (2 * p + a + 1 - x) * assoc_laguerre(p, a, x) - (p + a) * assoc_laguerre(p - 1, a, x)
    scale = max(abs(lhs), abs((2 * p + a + 1 - x) * assoc_laguerre(p, a, x)), 1.0)
    assert abs(lhs - rhs) <= 1e-12 * scale


def test_laguerre_rejects_negative():
    with pytest.raises(ValueError):
        assoc_laguerre(-1, 0, 1.0)


@pytest.mark.parametrize(
    "L, M, theta, phi, expected",
    [
        (0, 0, 1.1, 2.2, 0.2820947918),
        (1, 0, 0.0, 0.0, 0.4886025119),
        (2, 2, math.pi / 2, math.pi / 4, 0.3862742020j),
    ],
)
def test_ylm_examples(L, M, theta, phi, expected):
    assert spherical_harmonic(L, M, theta, phi) == pytest.approx(expected, abs=1e-10)


def _ylm_closed(L, M, t, p):
    c, s = math.cos(t), math.sin(t)
    e = np.exp(1j * M * p)
    table = {
        (1, 1): -math.sqrt(3 / (8 * math.pi)) * s,
        (2, 0): math.sqrt(5 / (16 * math.pi)) * (3 * c * c - 1),
        (2, 1): -math.sqrt(15 / (8 * math.pi)) * s * c,
        (3, 0): math.sqrt(7 / (16 * math.pi)) * (5 * c**3 - 3 * c),
        (3, 3): -math.sqrt(35 / (64 * math.pi)) * s**3,
        (4, 2): (3 / 8) * math.sqrt(5 / (2 * math.pi)) * s * s * (7 * c * c - 1),
    }
    return table[(L, M)] * e


@pytest.mark.parametrize("L, M", [(1, 1), (2, 0), (2, 1), (3, 0), (3, 3), (4, 2)])
def test_ylm_closed_forms(L, M):
    for t, p in [(0.3, 0.1), (1.2, 2.5), (2.9, 5.0)]:
        assert spherical_harmonic(L, M, t, p) == pytest.approx(_ylm_closed(L, M, t, p), abs=1e-13)


@settings(max_examples=200, deadline=None)
@given(
    L=st.integers(0, 4),
    data=st.data(),
    theta=st.floats(0.0, math.pi),
    phi=st.floats(0.0, 2 * math.pi),
)
def test_ylm_negative_m_symmetry(L, data, theta, phi):
    M = data.draw(st.integers(0, L))
    lhs = spherical_harmonic(L, -M, theta, phi)
    rhs = (-1) ** M * np.conj(spherical_harmonic(L, M, theta, phi))
    assert abs(lhs - rhs) <= 1e-13


def test_ylm_rejects_large_m():
    with pytest.raises(ValueError):
        spherical_harmonic(1, 2, 0.1, 0.1)


def test_ylm_normalization_grid():
    # Gauss-Legendre in cos(theta) x uniform phi is exact for these degrees
    x, w = np.polynomial.legendre.leggauss(20)
    phi = np.linspace(0, 2 * np.pi, 24, endpoint=False)
    T, P = np.meshgrid(np.arccos(x), phi, indexing="ij")
    W = np.outer(w, np.full(phi.size, 2 * np.pi / phi.size))
    for L in range(5):
        for M in range(-L, L + 1):
            y = spherical_harmonic(L, M, T, P)
            assert np.sum(W * abs(y) ** 2) == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize(
    "N, L, r, expected",
    [
        (1, 0, 0.0, 2.0),
        (1, 0, 1.0, 0.7357588823),
        (3, 2, 0.0, 0.0),
    ],
)
def test_radial_examples(N, L, r, expected):
    assert hydrogen_radial(RadialIndex(N, L), r) == pytest.approx(expected, abs=1e-10)


@pytest.mark.parametrize("N", range(1, 5))
def test_closed_forms_match_laguerre(N):
    r = np.linspace(0.0, 40.0, 81)
    for L in range(N):
        idx = RadialIndex(N, L)
        np.testing.assert_allclose(
            hydrogen_radial(idx, r), hydrogen_radial(idx, r, closed_form=False), rtol=1e-12, atol=1e-15
        )


@pytest.mark.parametrize("N, L", [(n, l) for n in range(1, 6) for l in range(n)])
def test_radial_normalization(N, L):
    idx = RadialIndex(N, L)
    val, _ = quad(lambda r: hydrogen_radial(idx, r) ** 2 * r * r, 0, np.inf, epsabs=1e-13, limit=200)
    assert val == pytest.approx(1.0, abs=1e-8)


@pytest.mark.parametrize("L, Ns", [(0, (1, 2, 3)), (1, (2, 3, 4)), (2, (3, 4))])
def test_radial_orthogonality(L, Ns):
    for i, N in enumerate(Ns):
        for Np in Ns[i + 1 :]:
            a, b = RadialIndex(N, L), RadialIndex(Np, L)
            val, _ = quad(
                lambda r: hydrogen_radial(a, r) * hydrogen_radial(b, r) * r * r, 0, np.inf, epsabs=1e-13, limit=200
            )
            assert abs(val) < 1e-8


@pytest.mark.parametrize("N, L", [(0, 0), (2, 2), (3, -1)])
def test_radial_index_invariants(N, L):
    with pytest.raises(ValueError):
        RadialIndex(N, L)
