"""Special functions for the scattering integrand.

Associated Laguerre polynomials, spherical harmonics and hydrogen radial
functions (Z = 1, atomic units). Everything broadcasts over numpy arrays.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "RadialIndex",
    "assoc_laguerre",
    "assoc_legendre_reduced",
    "spherical_harmonic",
    "ylm_cartesian",
    "hydrogen_radial",
]


@dataclass(frozen=True)
class RadialIndex:
    N: int
    L: int

    def __post_init__(self):
        if int(self.N) != self.N or int(self.L) != self.L:
            raise ValueError("quantum numbers must be integers")
        if self.N < 1:
            raise ValueError(f"principal quantum number must be >= 1, got {self.N}")
        if not 0 <= self.L < self.N:
            raise ValueError(f"need 0 <= L < N, got N={self.N}, L={self.L}")


def assoc_laguerre(p, a, x):
    """Associated Laguerre polynomial ``L_p^a(x)`` by upward recurrence in p."""
    if p < 0 or a < 0:
        raise ValueError("p and a must be non-negative")
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if p == 0:
        return prev if prev.ndim else float(prev)
    cur = 1.0 + a - x
    for n in range(1, p):
        prev, cur = cur, ((2 * n + a + 1 - x) * cur - (n + a) * prev) / (n + 1)
    return cur if cur.ndim else float(cur)


def assoc_legendre_reduced(L, M, cos_t):
    """Fully normalised associated Legendre function divided by ``sin^M``.

    Returns ``Q`` such that ``Y_L^M = Q(cos t) * sin^M(t) * exp(i M phi)`` for
    ``M >= 0``, Condon-Shortley phase included. Dropping the ``sin^M`` factor
    lets callers supply ``(sin t * exp(i phi))^M`` as a polynomial in x + iy,
    which stays smooth through the poles.
    """
    if not 0 <= M <= L:
        raise ValueError(f"need 0 <= M <= L, got L={L}, M={M}")
    cos_t = np.asarray(cos_t, dtype=float)
    # seed: (-1)^M sqrt((2M+1)/4pi * prod_{k<=M} (2k-1)/(2k))
    seed = 1.0 / (4.0 * math.pi)
    for k in range(1, M + 1):
        seed *= (2 * k - 1) / (2 * k)
    seed = (-1) ** M * math.sqrt((2 * M + 1) * seed)
    pmm = np.full_like(cos_t, seed)
    if L == M:
        return pmm
    a_prev = math.sqrt(2 * M + 3)
    pm1 = a_prev * cos_t * pmm
    for ell in range(M + 2, L + 1):
        a = math.sqrt((4 * ell * ell - 1) / (ell * ell - M * M))
        pmm, pm1 = pm1, a * (cos_t * pm1 - pmm / a_prev)
        a_prev = a
    return pm1


def ylm_cartesian(L, M, cos_t, sin_eiphi):
    """``Y_L^M`` from ``cos(theta)`` and ``sin(theta) * exp(i phi)``.

    For a point (x, y, z) at radius r these are z/r and (x + iy)/r.
    """
    if abs(M) > L:
        raise ValueError(f"|M| must not exceed L, got L={L}, M={M}")
    m = abs(M)
    q = assoc_legendre_reduced(L, m, cos_t)
    w = np.asarray(sin_eiphi, dtype=complex)
    y = q * w**m
    if M < 0:
        y = (-1) ** m * np.conj(y)
    return y


def spherical_harmonic(L, M, theta, phi):
    """Orthonormal spherical harmonic with the Condon-Shortley phase."""
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    y = ylm_cartesian(L, M, np.cos(theta), np.sin(theta) * np.exp(1j * phi))
    return y if np.ndim(y) else complex(y)


def _radial_closed_form(N, L, r):
    e = np.exp(-r / N)
    match (N, L):
        case (1, 0):
            return 2.0 * e
        case (2, 0):
            return (1.0 / math.sqrt(2.0)) * (1.0 - r / 2.0) * e
        case (2, 1):
            return (1.0 / (2.0 * math.sqrt(6.0))) * r * e
        case (3, 0):
            return (2.0 / (3.0 * math.sqrt(3.0))) * (1.0 - 2.0 * r / 3.0 + 2.0 * r * r / 27.0) * e
        case (3, 1):
            return (8.0 / (27.0 * math.sqrt(6.0))) * r * (1.0 - r / 6.0) * e
        case (3, 2):
            return (4.0 / (81.0 * math.sqrt(30.0))) * r * r * e
        case (4, 0):
            return 0.25 * (1.0 - 0.75 * r + r * r / 8.0 - r**3 / 192.0) * e
        case (4, 1):
            return (math.sqrt(5.0) / (16.0 * math.sqrt(3.0))) * r * (1.0 - r / 4.0 + r * r / 80.0) * e
        case (4, 2):
            return (1.0 / (64.0 * math.sqrt(5.0))) * r * r * (1.0 - r / 12.0) * e
        case (4, 3):
            return (1.0 / (768.0 * math.sqrt(35.0))) * r**3 * e
    return None


def _radial_general(N, L, r):
    rho = 2.0 * r / N
    log_norm = 0.5 * (
        3.0 * math.log(2.0 / N)
        + math.lgamma(N - L)
        - math.log(2.0 * N)
        - math.lgamma(N + L + 1)
    )
    return math.exp(log_norm) * np.exp(-rho / 2.0) * rho**L * assoc_laguerre(N - L - 1, 2 * L + 1, rho)


def hydrogen_radial(idx: RadialIndex, r, *, closed_form: bool = True):
    """Bound-state radial function ``R_NL(r)`` in units of a0^{-3/2}.

    ``r`` is in Bohr radii. Closed forms are used for N <= 4 unless
    ``closed_form`` is False, otherwise the Laguerre expression.
    """
    r = np.asarray(r, dtype=float)
    out = _radial_closed_form(idx.N, idx.L, r) if closed_form and idx.N <= 4 else None
    if out is None:
        out = _radial_general(idx.N, idx.L, r)
    return out if np.ndim(out) else float(out)
