"""Hydrogen bound states phi_{NLM} = R_NL(r) Y_L^M(theta, phi)."""
from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from .geometry import Direction
from .special_fn import RadialIndex, hydrogen_radial, ylm_cartesian

__all__ = ["BoundState", "eval_state", "eval_state_cartesian", "parse_state_label", "state_label"]

_LETTERS = "spdfghik"
_LABEL = re.compile(r"^\s*(\d+)\s*([a-zA-Z])\s*$")


@dataclass(frozen=True)
class BoundState:
    N: int
    L: int
    M: int = 0

    def __post_init__(self):
        RadialIndex(self.N, self.L)
        if int(self.M) != self.M or abs(self.M) > self.L:
            raise ValueError(f"need |M| <= L, got L={self.L}, M={self.M}")

    @property
    def radial(self) -> RadialIndex:
        return RadialIndex(self.N, self.L)

    def __str__(self):
        return f"{state_label(self)}(M={self.M})"


def state_label(s: BoundState) -> str:
    return f"{s.N}{_LETTERS[s.L]}"


def parse_state_label(label: str, M: int = 0) -> BoundState:
    """Decode labels like ``"1s"`` or ``"3d"``; ``M`` is given separately."""
    match = _LABEL.match(label)
    if not match:
        raise ValueError(f"malformed state label {label!r}")
    letter = match.group(2).lower()
    if letter not in _LETTERS:
        raise ValueError(f"unknown orbital letter {letter!r} in {label!r}")
    return BoundState(int(match.group(1)), _LETTERS.index(letter), M)


def eval_state_cartesian(s: BoundState, x, y, z, bohr=1.0):
    """Wavefunction at Cartesian points; ``bohr`` is a0 in the caller's unit."""
    r = np.sqrt(x * x + y * y + z * z)
    safe = np.where(r > 0, r, 1.0)
    cos_t = np.where(r > 0, z / safe, 1.0)
    w = np.where(r > 0, (x + 1j * y) / safe, 0.0)
    radial = hydrogen_radial(s.radial, r / bohr) * bohr**-1.5
    return radial * ylm_cartesian(s.L, s.M, cos_t, w)


def eval_state(s: BoundState, r, d: Direction) -> complex:
    st = np.sin(d.theta)
    w = st * np.exp(1j * d.phi)
    return complex(hydrogen_radial(s.radial, r) * ylm_cartesian(s.L, s.M, np.cos(d.theta), w))
