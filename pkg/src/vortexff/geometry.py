"""Expressing the scattered (rotated) spherical frame in the incident one.

The outgoing frame is obtained by rotating about the x axis so that +y turns
toward +z by the scattering angle. Rotation is applied to Cartesian
coordinates and converted back with two-argument arctangents, which keeps
every quadrant correct.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Direction",
    "ScatteringAngle",
    "to_cartesian",
    "from_cartesian",
    "rotate_cartesian",
    "rotate_frame",
    "rotated_polar_closed_form",
    "cylindrical_of",
]

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Direction:
    theta: float
    phi: float

    def __post_init__(self):
        if not 0.0 <= self.theta <= math.pi:
            raise ValueError(f"theta must lie in [0, pi], got {self.theta}")
        object.__setattr__(self, "phi", float(self.phi) % TWO_PI)


@dataclass(frozen=True)
class ScatteringAngle:
    Theta: float

    def __post_init__(self):
        if not 0.0 <= self.Theta <= math.pi:
            raise ValueError(f"scattering angle must lie in [0, pi], got {self.Theta}")

    def __float__(self):
        return float(self.Theta)


def to_cartesian(theta, phi, r=1.0):
    st = np.sin(theta)
    return r * st * np.cos(phi), r * st * np.sin(phi), r * np.cos(theta)


def from_cartesian(x, y, z):
    """Return (r, theta, phi) with phi in [0, 2pi) and atan2(0, 0) = 0."""
    r = np.sqrt(x * x + y * y + z * z)
    theta = np.arctan2(np.hypot(x, y), z)
    phi = np.mod(np.arctan2(y, x), TWO_PI)
    return r, theta, phi


def rotate_cartesian(x, y, z, Theta):
    """Coordinates of the same point in the frame rotated by ``Theta``.

    ``Theta`` may be negative to reverse the rotation sense.
    """
    c, s = math.cos(Theta), math.sin(Theta)
    return x, c * y - s * z, s * y + c * z


def rotate_frame(d: Direction, Theta) -> Direction:
    x, y, z = to_cartesian(d.theta, d.phi)
    _, theta_p, phi_p = from_cartesian(*rotate_cartesian(x, y, z, float(Theta)))
    return Direction(float(min(theta_p, math.pi)), float(phi_p))


def rotated_polar_closed_form(theta, phi, Theta):
    """Polar angle of the rotated frame from the single-arctangent expression.

    Only valid where sin(theta) * sin(phi) > 0; used to cross-check
    :func:`rotate_frame`.
    """
    st, ct = np.sin(theta), np.cos(theta)
    sp = np.sin(phi)
    radius = np.sqrt(st * st * sp * sp + ct * ct)
    return np.arccos(radius * np.sin(Theta + np.arctan(ct / st / sp)))


def cylindrical_of(d: Direction, r):
    return r * math.sin(d.theta), r * math.cos(d.theta)
