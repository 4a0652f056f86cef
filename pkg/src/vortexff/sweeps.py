"""Parameter sweeps, figure presets and the CSV table format."""
from __future__ import annotations

import csv
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import astuple, dataclass, fields, replace
from typing import Iterable, TextIO

import numpy as np

from .amplitudes import AmplitudeOutput, ScatteringConfig, full_amplitude
from .cubature import IntegrandError, IntegratorConfig
from .modes import LGMode, PhotonParams
from .states import BoundState, parse_state_label

__all__ = [
    "AXES",
    "SweepSpec",
    "SweepRow",
    "FigurePreset",
    "FIGURE_PRESETS",
    "make_config",
    "default_final_m",
    "run_point",
    "run_sweep",
    "figure_spec",
    "write_csv",
    "read_csv",
]

AXES = ("theta", "rayleigh", "wavelength")
SCALES = ("linear", "log")


@dataclass(frozen=True)
class SweepRow:
    axis_value: float
    M_re: float
    M_im: float
    M_abs2: float
    Mv_re: float
    Mv_im: float
    Mv_abs2: float
    dsigma_pw: float
    dsigma_v: float
    twist: float
    error_est_M: float
    error_est_Mv: float
    n_evals_M: int
    n_evals_Mv: int
    converged_M: bool
    converged_Mv: bool

    @classmethod
    def from_output(cls, axis_value: float, out: AmplitudeOutput) -> "SweepRow":
        return cls(
            axis_value=float(axis_value),
            M_re=out.M.real,
            M_im=out.M.imag,
            M_abs2=abs(out.M) ** 2,
            Mv_re=out.M_v.real,
            Mv_im=out.M_v.imag,
            Mv_abs2=abs(out.M_v) ** 2,
            dsigma_pw=out.dsigma_pw,
            dsigma_v=out.dsigma_v,
            twist=out.twist,
            error_est_M=out.M_quad.error_est,
            error_est_Mv=out.M_v_quad.error_est,
            n_evals_M=out.M_quad.n_evals,
            n_evals_Mv=out.M_v_quad.n_evals,
            converged_M=out.M_quad.converged,
            converged_Mv=out.M_v_quad.converged,
        )

    @classmethod
    def failed(cls, axis_value: float) -> "SweepRow":
        nan = math.nan
        return cls(float(axis_value), *([nan] * 11), 0, 0, False, False)

    @property
    def converged(self) -> bool:
        return self.converged_M and self.converged_Mv


COLUMNS = tuple(f.name for f in fields(SweepRow))
_KINDS = {f.name: f.type for f in fields(SweepRow)}


def _format(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    # 17 significant digits round-trip every double; inf/nan print as tokens
    return f"{value:.16e}"


def _parse(kind: str, text: str):
    if kind == "bool":
        if text not in ("true", "false"):
            raise ValueError(f"bad boolean {text!r}")
        return text == "true"
    if kind == "int":
        return int(text)
    return float(text)


def write_csv(rows: Iterable[SweepRow], fh: TextIO) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(COLUMNS)
    for row in rows:
        writer.writerow([_format(v) for v in astuple(row)])


def read_csv(fh: TextIO) -> list[SweepRow]:
    reader = csv.reader(fh)
    header = next(reader)
    if tuple(header) != COLUMNS:
        raise ValueError(f"unexpected CSV header: {header}")
    return [SweepRow(*(_parse(_KINDS[c], t) for c, t in zip(COLUMNS, rec))) for rec in reader]


def default_final_m(initial_m: int, l_in: int, l_out: int) -> int:
    """Final magnetic number conserving the angular-momentum projection."""
    return initial_m + (l_in - l_out)


def make_config(
    initial: str = "1s",
    final: str = "3d",
    *,
    initial_m: int = 0,
    final_m: int | None = None,
    l_in: int = 1,
    l_out: int = -1,
    p_in: int = 0,
    p_out: int = 0,
    wavelength_nm: float = 550.0,
    rayleigh_nm: float = 1000.0,
    theta_rad: float = 0.0,
    pol_overlap: float = 1.0,
    integrator: IntegratorConfig | None = None,
    r_max_factor: float = 30.0,
) -> ScatteringConfig:
    if final_m is None:
        final_m = default_final_m(initial_m, l_in, l_out)
    photon = PhotonParams(wavelength_nm, rayleigh_nm)
    return ScatteringConfig(
        initial_state=parse_state_label(initial, initial_m),
        final_state=parse_state_label(final, final_m),
        mode_in=LGMode(p_in, l_in, photon),
        mode_out=LGMode(p_out, l_out, photon),
        Theta=theta_rad,
        polarization_overlap=pol_overlap,
        integrator=integrator or IntegratorConfig(),
        r_max_factor=r_max_factor,
    )


@dataclass(frozen=True)
class SweepSpec:
    axis: str
    start: float
    stop: float
    points: int
    scale: str
    base: ScatteringConfig

    def __post_init__(self):
        if self.axis not in AXES:
            raise ValueError(f"axis must be one of {AXES}, got {self.axis!r}")
        if self.scale not in SCALES:
            raise ValueError(f"scale must be one of {SCALES}, got {self.scale!r}")
        if self.points < 2:
            raise ValueError("a sweep needs at least two points")
        if not self.start < self.stop:
            raise ValueError("sweep start must be below stop")
        if self.scale == "log" and not self.start > 0:
            raise ValueError("log sweeps need a positive start")

    def grid(self) -> np.ndarray:
        if self.scale == "log":
            values = np.geomspace(self.start, self.stop, self.points)
        else:
            values = np.linspace(self.start, self.stop, self.points)
        values[0], values[-1] = self.start, self.stop
        return values

    def config_at(self, value: float) -> ScatteringConfig:
        value = float(value)
        base = self.base
        if self.axis == "theta":
            return replace(base, Theta=value)
        photon = base.photon
        if self.axis == "rayleigh":
            return base.with_photon(PhotonParams(photon.wavelength, value))
        return base.with_photon(PhotonParams(value, photon.rayleigh_range))


def run_point(cfg: ScatteringConfig, axis_value: float | None = None) -> SweepRow:
    """Evaluate one configuration; quadrature failures become a marked row."""
    if axis_value is None:
        axis_value = cfg.Theta
    try:
        out = full_amplitude(cfg)
    except IntegrandError:
        return SweepRow.failed(axis_value)
    return SweepRow.from_output(axis_value, out)


def _point_task(args):
    return run_point(*args)


def run_sweep(spec: SweepSpec, jobs: int = 1) -> list[SweepRow]:
    tasks = [(spec.config_at(v), float(v)) for v in spec.grid()]
    if jobs <= 1:
        return [_point_task(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_point_task, tasks))


@dataclass(frozen=True)
class FigurePreset:
    axis: str
    start: float
    stop: float
    scale: str
    points: int
    initial: str
    final: str
    wavelength_nm: float
    rayleigh_nm: float
    theta_rad: float
    l_in: int = 1
    l_out: int = -1
    p_in: int = 0
    p_out: int = 0
    abs_tol: float = 1e-14
    rel_tol: float = 1e-7


# Axis values replace the fixed parameter named by ``axis``.
FIGURE_PRESETS: dict[str, FigurePreset] = {
    "3": FigurePreset("theta", 0.01, math.pi, "log", 41, "1s", "3d", 550.0, 1000.0, 0.0,
                      abs_tol=1e-15, rel_tol=1e-6),
    "4a": FigurePreset("rayleigh", 1.0, 1e6, "log", 61, "1s", "3d", 0.1, 1000.0, 0.0),
    "4b": FigurePreset("rayleigh", 1.0, 1e6, "log", 61, "3s", "3d", 0.1, 1000.0, 0.0),
    "5a": FigurePreset("wavelength", 0.05, 1e3, "log", 61, "1s", "3d", 550.0, 10.0, 0.0),
    "5b": FigurePreset("wavelength", 0.05, 1e3, "log", 61, "3s", "3d", 550.0, 10.0, 0.0),
}


def figure_spec(fig_id: str, *, points: int | None = None, integrator: IntegratorConfig | None = None,
                r_max_factor: float = 30.0) -> SweepSpec:
    try:
        pre = FIGURE_PRESETS[fig_id]
    except KeyError:
        raise ValueError(f"unknown figure id {fig_id!r}; choose from {sorted(FIGURE_PRESETS)}") from None
    if integrator is None:
        integrator = IntegratorConfig(abs_tol=pre.abs_tol, rel_tol=pre.rel_tol)
    base = make_config(
        pre.initial,
        pre.final,
        l_in=pre.l_in,
        l_out=pre.l_out,
        p_in=pre.p_in,
        p_out=pre.p_out,
        wavelength_nm=pre.wavelength_nm,
        rayleigh_nm=pre.rayleigh_nm,
        theta_rad=pre.theta_rad,
        integrator=integrator,
        r_max_factor=r_max_factor,
    )
    return SweepSpec(pre.axis, pre.start, pre.stop, points or pre.points, pre.scale, base)
