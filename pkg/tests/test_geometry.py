import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from oracles import shadow_brute
from projadj import (BoundaryPoint, DiscPoint, DomainError, Tent, chord_bounds, point_shadow,
                     shadow_halfwidth, stolz_contains, tau, tent_of)
from projadj.arcs import FULL_CIRCLE, Arc
from projadj.geometry import (TWO_PI, boundary_coords, dist2_boundary, from_boundary_coords,
                              wrap_angle, wrap_signed)

angles = st.floats(-20.0, 20.0, allow_nan=False)
deltas = st.floats(1e-9, 1.0, exclude_min=False)


def test_wrap_ranges():
    t = np.array([-7.0, -1e-300, 0.0, TWO_PI, 13.0])
    w = wrap_angle(t)
    assert np.all((w >= 0) & (w < TWO_PI))
    s = wrap_signed(t)
    assert np.all((s >= -math.pi) & (s < math.pi))


def test_disc_point_rejects_boundary():
    with pytest.raises(DomainError):
        DiscPoint(0.0, 0.0)
    with pytest.raises(DomainError):
        DiscPoint.from_complex(1.0 + 0j)


@given(angles, deltas)
def test_coords_round_trip(theta, delta):
    z = complex(from_boundary_coords(theta, delta))
    th, de = boundary_coords(z)
    assert abs(de - delta) <= 1e-15
    if delta < 1.0 - 1e-9:
        assert abs(wrap_signed(th - theta)) < 1e-12 / (1.0 - delta)


@given(angles, angles, deltas)
def test_dist2_matches_complex(alpha, theta, delta):
    z = complex(from_boundary_coords(theta, delta))
    direct = abs(complex(math.cos(alpha), math.sin(alpha)) - z) ** 2
    assert math.isclose(float(dist2_boundary(alpha, theta, delta)), direct, rel_tol=1e-9, abs_tol=1e-15)


def test_tau_radial_and_tangential():
    assert tau(0.0, DiscPoint(0.0, 0.3)) == pytest.approx(1.0)
    n = 1000
    assert tau(0.0, DiscPoint(1.0 / n, 1.0 / n ** 2)) == pytest.approx(1.0 / n, rel=1e-3)
    with pytest.raises(DomainError):
        tau(0.0, (0.0, 0.0))


def test_chord_bounds_domain():
    lo, c, hi = chord_bounds((0.1, 0.05), (-0.1, 0.2))
    assert lo <= c <= hi
    with pytest.raises(DomainError):
        chord_bounds((0.3, 0.0), (0.0, 0.0))


@given(st.integers(1, 10), angles, st.floats(1e-6, 0.9), st.floats(-3.0, 3.0))
def test_shadow_is_ball_intersection(b, theta, delta, frac):
    hw = float(shadow_halfwidth(b, delta))
    u = theta + frac * (hw if math.isfinite(hw) else 1.0)
    z = complex(from_boundary_coords(theta, delta))
    brute = bool(shadow_brute(b, u, z))
    sh = point_shadow(b, DiscPoint(theta, delta))
    margin = abs(abs(complex(math.cos(u), math.sin(u)) - z) - (1 + b) * delta)
    if margin > 1e-12:
        assert sh.contains(u) == brute == stolz_contains(b, u, DiscPoint(theta, delta))


def test_shadow_full_circle_and_small():
    assert point_shadow(2, DiscPoint(0.0, 0.9)) is FULL_CIRCLE
    arc = point_shadow(2, DiscPoint(1.0, 1e-8))
    assert isinstance(arc, Arc)
    # |u - z| < 3 delta near the circle means half-width ~ sqrt(8) delta
    assert arc.length / 2 == pytest.approx(math.sqrt(8) * 1e-8, rel=1e-6)


def test_stolz_zero_aperture_is_radius():
    assert stolz_contains(0, 0.5, DiscPoint(0.5, 0.2))
    assert not stolz_contains(0, 0.5, DiscPoint(0.5 + 1e-9, 0.2))


@given(angles, st.floats(1e-6, 6.0), st.floats(-1.0, 1.0), st.floats(0.01, 0.99))
def test_tent_membership(center, length, frac, s):
    t = tent_of((center, length))
    R = t.radius
    assert R == pytest.approx(2 * math.sin(length / 4))
    # points on the segment from the base centre towards the origin, at fraction s of the radius
    z = (1.0 - s * R) * complex(math.cos(center), math.sin(center))
    if s * R < 1.0:
        assert t.contains(z)


def test_tent_of_arc_equals_pair():
    a = Arc(0.3, 0.2)
    assert tent_of(a) == Tent(0.4, 0.2) or tent_of(a).center == pytest.approx(0.4)
    with pytest.raises(DomainError):
        tent_of((0.0, 0.0))


def test_boundary_point_rotation():
    assert BoundaryPoint(7.0).angle == pytest.approx(7.0 - TWO_PI)
    assert BoundaryPoint(1.0).rotate(TWO_PI).angle == pytest.approx(1.0)


def test_chord_radial_pair():
    lo, c, hi = chord_bounds((0.0, 0.0), (0.0, 0.1))
    assert c == pytest.approx(0.01, rel=1e-14)
    assert (lo, hi) == pytest.approx((3 / 6400, 125 / 6400), rel=1e-14)


box = st.floats(-0.2499, 0.2499)


@given(box, box, box, box)
def test_chord_matches_complex_and_sandwich(t1, d1, t2, d2):
    lo, c, hi = chord_bounds((t1, d1), (t2, d2))
    p = lambda t, d: (1.0 - d) * complex(math.cos(t), math.sin(t))
    assert c == pytest.approx(abs(p(t1, d1) - p(t2, d2)) ** 2, rel=1e-9, abs=1e-15)
    assert lo * (1 - 1e-12) <= c <= hi * (1 + 1e-12)
