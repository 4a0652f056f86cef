"""Elastic scattering of plane-wave and Laguerre-Gauss photons on hydrogen."""
from .amplitudes import (
    AmplitudeOutput,
    ScatteringConfig,
    cross_section,
    full_amplitude,
    plane_form_factor,
    twist_factor,
    vortex_form_factor,
)
from .cubature import Box3, IntegrandError, IntegratorConfig, QuadResult, integrate, integrate_many
from .geometry import Direction, ScatteringAngle, cylindrical_of, rotate_frame
from .modes import LGMode, PhotonParams, beam_waist, lg_mode
from .special_fn import RadialIndex, assoc_laguerre, hydrogen_radial, spherical_harmonic
from .states import BoundState, eval_state, parse_state_label
from .sweeps import SweepRow, SweepSpec, figure_spec, run_point, run_sweep

__version__ = "0.1.0"
