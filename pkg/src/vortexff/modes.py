"""Laguerre-Gauss beam profiles in the paraxial approximation."""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .constants import nm_to_bohr
from .special_fn import assoc_laguerre

__all__ = [
    "PhotonParams",
    "LGMode",
    "waist",
    "lg_normalization",
    "lg_cartesian",
    "beam_waist",
    "lg_mode",
]


@dataclass(frozen=True)
class PhotonParams:
    """Photon wavelength and Rayleigh range, both in nm."""

    wavelength: float
    rayleigh_range: float

    def __post_init__(self):
        if not self.wavelength > 0:
            raise ValueError(f"wavelength must be positive, got {self.wavelength}")
        if not self.rayleigh_range > 0:
            raise ValueError(f"Rayleigh range must be positive, got {self.rayleigh_range}")

    @cached_property
    def k(self) -> float:
        """Angular wavenumber in nm^-1."""
        return 2.0 * math.pi / self.wavelength

    @property
    def wavelength_bohr(self) -> float:
        return nm_to_bohr(self.wavelength)

    @property
    def rayleigh_bohr(self) -> float:
        return nm_to_bohr(self.rayleigh_range)


@dataclass(frozen=True)
class LGMode:
    p: int
    l: int
    photon: PhotonParams

    def __post_init__(self):
        if int(self.p) != self.p or self.p < 0:
            raise ValueError(f"radial index p must be a non-negative integer, got {self.p}")
        if int(self.l) != self.l:
            raise ValueError(f"azimuthal index l must be an integer, got {self.l}")


def waist(wavelength, rayleigh, z):
    """Beam radius w(z); any consistent length unit."""
    return np.sqrt(wavelength * rayleigh / math.pi * (1.0 + (z / rayleigh) ** 2))


def lg_normalization(p, l):
    a = abs(l)
    return math.exp(0.5 * (math.log(2.0 / math.pi) + math.lgamma(p + 1) - math.lgamma(p + a + 1)))


def lg_cartesian(p, l, wavelength, rayleigh, x, y, z):
    """Complex profile ``u_{p,l}`` at Cartesian points in the beam frame.

    Lengths share one arbitrary unit; the result has units of 1/length. The
    helical factor ``rho^|l| exp(i l phi)`` is taken as ``(x +- iy)^|l|`` so
    the on-axis points need no angle.
    """
    a = abs(l)
    k = 2.0 * math.pi / wavelength
    rho2 = x * x + y * y
    zr2 = rayleigh * rayleigh
    w2 = wavelength * rayleigh / math.pi * (1.0 + z * z / zr2)
    t = 2.0 * rho2 / w2
    exponent = -rho2 / w2 + 1j * (
        k * rho2 * z / (2.0 * (z * z + zr2)) - (2 * p + a + 1) * np.arctan2(z, rayleigh)
    )
    amp = lg_normalization(p, l) / np.sqrt(w2) * np.exp(exponent)
    if a:
        helix = (x + 1j * y) if l > 0 else (x - 1j * y)
        amp = amp * (math.sqrt(2.0) ** a) * (helix / np.sqrt(w2)) ** a
    if p:
        amp = amp * assoc_laguerre(p, a, t)
    return amp


def beam_waist(photon: PhotonParams, z):
    """Beam radius in nm at axial position ``z`` (nm)."""
    return waist(photon.wavelength, photon.rayleigh_range, z)


def lg_mode(mode: LGMode, rho, z, phi):
    """``u_{p,l}(rho, z, phi)`` with lengths in nm; returns nm^-1."""
    rho = np.asarray(rho, dtype=float)
    phi = np.asarray(phi, dtype=float)
    u = lg_cartesian(
        mode.p,
        mode.l,
        mode.photon.wavelength,
        mode.photon.rayleigh_range,
        rho * np.cos(phi),
        rho * np.sin(phi),
        np.asarray(z, dtype=float),
    )
    return u if np.ndim(u) else complex(u)
