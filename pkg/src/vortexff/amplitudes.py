"""Plane-wave and vortex atomic form factors, cross sections, twist factor.

Both form factors are integrals over the incident spherical frame
(r, theta, phi). The final state and the outgoing beam profile are evaluated
in the scattered frame, obtained from :func:`geometry.rotate_cartesian`.
Lengths are measured in Bohr radii inside the integrand.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .constants import CLASSICAL_ELECTRON_RADIUS_M
from .cubature import Box3, IntegratorConfig, QuadResult, integrate_many
from .geometry import rotate_cartesian
from .modes import LGMode, PhotonParams, lg_cartesian
from .states import BoundState, eval_state_cartesian

__all__ = [
    "ScatteringConfig",
    "AmplitudeOutput",
    "plane_form_factor",
    "vortex_form_factor",
    "full_amplitude",
    "cross_section",
    "twist_factor",
    "twist_floor",
    "momentum_transfer",
    "DEFAULT_INTEGRATOR",
]

DEFAULT_INTEGRATOR = IntegratorConfig(abs_tol=1e-10, rel_tol=1e-6, max_evals=50_000_000)
# |M| must exceed this many quadrature errors before a twist factor is reported
TWIST_RESOLUTION = 10.0


@dataclass(frozen=True)
class ScatteringConfig:
    initial_state: BoundState
    final_state: BoundState
    mode_in: LGMode
    mode_out: LGMode
    Theta: float
    polarization_overlap: float = 1.0
    integrator: IntegratorConfig = field(default=DEFAULT_INTEGRATOR)
    r_max_factor: float = 30.0
    # -1 reverses the frame rotation; only used to check sense independence
    rotation_sense: int = 1

    def __post_init__(self):
        if self.mode_in.photon != self.mode_out.photon:
            raise ValueError("elastic scattering: incoming and outgoing modes must share photon parameters")
        if not 0.0 <= self.Theta <= math.pi:
            raise ValueError(f"scattering angle must lie in [0, pi], got {self.Theta}")
        if not 0.0 <= self.polarization_overlap <= 1.0:
            raise ValueError(f"polarization overlap must lie in [0, 1], got {self.polarization_overlap}")
        if not self.r_max_factor > 0:
            raise ValueError("r_max_factor must be positive")
        if self.rotation_sense not in (1, -1):
            raise ValueError("rotation_sense must be +1 or -1")

    @property
    def photon(self) -> PhotonParams:
        return self.mode_in.photon

    @property
    def r_max(self) -> float:
        """Radial cutoff in Bohr radii."""
        return self.r_max_factor * max(self.initial_state.N, self.final_state.N)

    def with_photon(self, photon: PhotonParams) -> "ScatteringConfig":
        return replace(
            self,
            mode_in=replace(self.mode_in, photon=photon),
            mode_out=replace(self.mode_out, photon=photon),
        )


@dataclass(frozen=True)
class AmplitudeOutput:
    M: complex
    M_v: complex
    M_quad: QuadResult
    M_v_quad: QuadResult
    dsigma_pw: float
    dsigma_v: float
    twist: float  # math.inf when |M|^2 is not resolved from zero

    @property
    def twist_divergent(self) -> bool:
        return math.isinf(self.twist)

    @property
    def converged(self) -> bool:
        return self.M_quad.converged and self.M_v_quad.converged


def momentum_transfer(wavelength, Theta):
    """|k_i - k_f| for elastic scattering, in inverse units of ``wavelength``."""
    return 2.0 * (2.0 * math.pi / wavelength) * math.sin(0.5 * Theta)


def cross_section(form_factor_sq, polarization_overlap):
    """Differential cross section in m^2/sr (equal photon frequencies)."""
    if form_factor_sq < 0 or polarization_overlap < 0:
        raise ValueError("cross_section inputs must be non-negative")
    return form_factor_sq * CLASSICAL_ELECTRON_RADIUS_M**2 * polarization_overlap


def twist_factor(M_v, M, floor):
    """(|M_v|^2 - |M|^2) / |M|^2, or ``inf`` when |M|^2 < floor."""
    if not floor > 0:
        raise ValueError("divergence floor must be positive")
    m2 = abs(M) ** 2
    if m2 < floor:
        return math.inf
    return (abs(M_v) ** 2 - m2) / m2


def twist_floor(M_quad: QuadResult) -> float:
    return max((TWIST_RESOLUTION * M_quad.error_est) ** 2, 1e-300)


class _Integrand:
    """Vectorised integrand(s) over (r, theta, phi) points.

    ``unit`` is the Bohr radius expressed in the integration length unit;
    changing it rescales every length together.
    """

    def __init__(self, cfg: ScatteringConfig, channels=("M", "M_v"), unit=1.0, fold=True):
        self.cfg = cfg
        self.fold = fold
        self.channels = channels
        self.unit = unit
        self.wavelength = cfg.photon.wavelength_bohr * unit
        self.rayleigh = cfg.photon.rayleigh_bohr * unit
        self.k = 2.0 * math.pi / self.wavelength
        self.Theta = cfg.rotation_sense * cfg.Theta
        si, sf = cfg.initial_state, cfg.final_state
        # distinct (N, L) shells are orthogonal in any frame, so the unit part
        # of the phase factor integrates to zero and can be dropped exactly
        self.subtract_overlap = (si.N, si.L) != (sf.N, sf.L)

    @property
    def box(self) -> Box3:
        theta_hi = 0.5 * math.pi if self.fold else math.pi
        return Box3((0.0, 0.0, 0.0), (self.cfg.r_max * self.unit, theta_hi, 2.0 * math.pi))

    def __call__(self, pts):
        if not self.fold:
            return self._evaluate(pts)
        # inversion (theta, phi) -> (pi - theta, phi + pi) maps the full
        # sphere onto itself, so summing both images over the upper
        # hemisphere is exact and removes the parity-odd part pointwise
        mirrored = np.column_stack([pts[:, 0], math.pi - pts[:, 1], pts[:, 2] + math.pi])
        return self._evaluate(pts) + self._evaluate(mirrored)

    def _evaluate(self, pts):
        cfg = self.cfg
        r, theta, phi = pts[:, 0], pts[:, 1], pts[:, 2]
        st = np.sin(theta)
        x, y, z = r * st * np.cos(phi), r * st * np.sin(phi), r * np.cos(theta)
        xp, yp, zp = rotate_cartesian(x, y, z, self.Theta)
        phi_i = eval_state_cartesian(cfg.initial_state, x, y, z, bohr=self.unit)
        phi_f = eval_state_cartesian(cfg.final_state, xp, yp, zp, bohr=self.unit)
        base = np.conj(phi_f) * phi_i * (r * r * st)
        half = 0.5 * self.k * (z - zp)
        phase = np.exp(2j * half)
        out = []
        for name in self.channels:
            if name == "M":
                if self.subtract_overlap:
                    out.append(base * (2j * np.sin(half) * np.exp(1j * half)))
                else:
                    out.append(base * phase)
            elif name == "M_v":
                mi, mo = cfg.mode_in, cfg.mode_out
                u_in = lg_cartesian(mi.p, mi.l, self.wavelength, self.rayleigh, x, y, z)
                u_out = lg_cartesian(mo.p, mo.l, self.wavelength, self.rayleigh, xp, yp, zp)
                pref = 0.5 * self.wavelength * self.rayleigh
                out.append(pref * base * phase * np.conj(u_out) * u_in)
            else:
                raise ValueError(f"unknown channel {name!r}")
        return np.stack(out, axis=1)


def _initial_divisions(cfg: ScatteringConfig):
    return (4, 2, 4)


def _run(cfg: ScatteringConfig, channels, unit=1.0, fold=True):
    integrand = _Integrand(cfg, channels, unit, fold)
    return integrate_many(
        integrand, integrand.box, cfg.integrator, initial_divisions=_initial_divisions(cfg)
    )


def plane_form_factor(cfg: ScatteringConfig):
    (res,) = _run(cfg, ("M",))
    return res.value, res


def vortex_form_factor(cfg: ScatteringConfig):
    (res,) = _run(cfg, ("M_v",))
    return res.value, res


def full_amplitude(cfg: ScatteringConfig, *, unit=1.0) -> AmplitudeOutput:
    """Both form factors on shared cubature regions, plus derived quantities."""
    m_quad, mv_quad = _run(cfg, ("M", "M_v"), unit)
    M, M_v = m_quad.value, mv_quad.value
    return AmplitudeOutput(
        M=M,
        M_v=M_v,
        M_quad=m_quad,
        M_v_quad=mv_quad,
        dsigma_pw=cross_section(abs(M) ** 2, cfg.polarization_overlap),
        dsigma_v=cross_section(abs(M_v) ** 2, cfg.polarization_overlap),
        twist=twist_factor(M_v, M, twist_floor(m_quad)),
    )
