import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from vortexff.geometry import (
    Direction,
    ScatteringAngle,
    cylindrical_of,
    from_cartesian,
    rotate_cartesian,
    rotate_frame,
    rotated_polar_closed_form,
    to_cartesian,
)

thetas = st.floats(0.0, math.pi)
phis = st.floats(0.0, 2 * math.pi, exclude_max=True)
angles = st.floats(-math.pi, math.pi)


def test_identity_example():
    d = rotate_frame(Direction(0.7, 1.3), 0.0)
    assert d.theta == pytest.approx(0.7, abs=1e-14)
    assert d.phi == pytest.approx(1.3, abs=1e-14)


def test_plus_y_goes_to_pole():
    d = rotate_frame(Direction(math.pi / 2, math.pi / 2), math.pi / 2)
    assert d.theta == pytest.approx(0.0, abs=1e-14)


def test_plus_z_tilts_toward_minus_y():
    d = rotate_frame(Direction(0.0, 0.0), math.pi / 3)
    assert d.theta == pytest.approx(math.pi / 3, abs=1e-14)
    assert d.phi == pytest.approx(3 * math.pi / 2, abs=1e-14)


def test_pole_convention():
    # a point exactly on the rotated z axis takes atan2(0, 0) = 0
    x, y, z = rotate_cartesian(0.0, 0.0, 1.0, 0.0)
    _, theta, phi = from_cartesian(x, y, z)
    assert theta == 0.0 and phi == 0.0


def _unit(d):
    return np.array(to_cartesian(d.theta, d.phi))


@settings(max_examples=300, deadline=None)
@given(theta=thetas, phi=phis, Theta=angles)
def test_norm_preserved(theta, phi, Theta):
    x, y, z = to_cartesian(theta, phi)
    xp, yp, zp = rotate_cartesian(x, y, z, Theta)
    assert math.sqrt(xp * xp + yp * yp + zp * zp) == pytest.approx(1.0, abs=1e-14)


@settings(max_examples=300, deadline=None)
@given(theta=thetas, phi=phis, t1=angles, t2=angles)
def test_composition_adds(theta, phi, t1, t2):
    d = Direction(theta, phi)
    a = _unit(rotate_frame(rotate_frame(d, t1), t2))
    b = _unit(rotate_frame(d, t1 + t2))
    np.testing.assert_allclose(a, b, atol=1e-12)


@settings(max_examples=300, deadline=None)
@given(theta=st.floats(0.05, math.pi - 0.05), phi=st.floats(0.05, math.pi - 0.05), Theta=st.floats(0.0, math.pi))
def test_matches_single_arctangent_form(theta, phi, Theta):
    d = rotate_frame(Direction(theta, phi), Theta)
    assert d.theta == pytest.approx(float(rotated_polar_closed_form(theta, phi, Theta)), abs=1e-10)


def test_rotation_matches_matrix():
    rng = np.random.default_rng(3)
    for Theta in rng.uniform(-3, 3, 5):
        R = np.array([[1, 0, 0], [0, math.cos(Theta), -math.sin(Theta)], [0, math.sin(Theta), math.cos(Theta)]])
        v = rng.normal(size=3)
        np.testing.assert_allclose(rotate_cartesian(*v, Theta), R @ v, atol=1e-15)


@pytest.mark.parametrize(
    "theta, r, expected",
    [(0.0, 5.0, (0.0, 5.0)), (math.pi / 2, 2.0, (2.0, 0.0)), (math.pi / 3, 2.0, (math.sqrt(3), 1.0))],
)
def test_cylindrical(theta, r, expected):
    assert cylindrical_of(Direction(theta, 0.0), r) == pytest.approx(expected, abs=1e-15)


def test_direction_invariants():
    assert Direction(1.0, -0.5).phi == pytest.approx(2 * math.pi - 0.5)
    with pytest.raises(ValueError):
        Direction(-0.1, 0.0)
    with pytest.raises(ValueError):
        ScatteringAngle(4.0)
    assert float(ScatteringAngle(0.5)) == 0.5
