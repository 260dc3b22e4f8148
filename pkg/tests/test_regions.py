import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from projadj import (RangeError, RegionError, RegionFamily, UnsupportedRegion, classify,
                     germ_equal_upto, make_attached_example, make_explicit, make_prop2b_region,
                     make_prop2c_region, make_radial_region, make_stolz_region, nested_tails,
                     union_regions)
from projadj.geometry import tau_coords

LADDER = [2.0 ** -k for k in range(3, 15)]


@pytest.mark.parametrize("make, verdict", [
    (make_prop2b_region, "Tangential"),
    (make_radial_region, "Nontangential"),
    (lambda: make_stolz_region(2), "Nontangential"),
    (make_attached_example, "Nontangential"),
    (lambda: union_regions(make_radial_region(), make_prop2b_region()), "VeryOscillatory"),
])
def test_classify_verdicts(make, verdict):
    assert classify(make(), LADDER).verdict == verdict


def test_classify_report_monotone():
    rep = classify(make_prop2b_region(), LADDER)
    assert rep.counts[-1] >= 1
    assert all(lo <= hi for lo, hi in zip(rep.lower, rep.upper))
    # nested samples: shrinking the ball can only raise the sampled inf and lower the sampled sup
    assert all(a <= b + 1e-15 for a, b in zip(rep.lower, rep.lower[1:]))
    assert all(a >= b - 1e-15 for a, b in zip(rep.upper, rep.upper[1:]))
    assert set(rep.to_dict()) >= {"A_lower", "A_upper", "verdict"}


@given(st.floats(1e-6, 0.4), st.integers(1, 300))
def test_sample_tail_inside_ball_and_capped(r, budget):
    reg = make_prop2b_region(0.7)
    pts = reg.sample_tail(r, budget)
    assert pts[0].size <= budget
    assert np.all(reg.distance(pts) < r)


def test_sample_tail_validation():
    reg = make_prop2b_region()
    with pytest.raises(ValueError):
        reg.sample_tail(0.1, 0)
    with pytest.raises(Exception):
        reg.sample_tail(-1.0)


def test_nested_tails_are_nested():
    reg = make_attached_example(1.0)
    tails = nested_tails(reg, LADDER, 64)
    for big, small in zip(tails, tails[1:]):
        zs = set(zip(small[0].tolist(), small[1].tolist()))
        zb = set(zip(big[0].tolist(), big[1].tolist()))
        assert zs <= zb


def test_nested_tails_rejects_increasing_ladder():
    with pytest.raises(ValueError):
        nested_tails(make_prop2b_region(), [0.1, 0.2])


def test_prop2c_cutoff_and_floor():
    with pytest.raises(RangeError):
        make_prop2c_region(cutoff=7)
    reg = make_prop2c_region()
    with pytest.raises(RegionError):
        reg.sample_tail(1e-30)


@given(st.floats(1e-7, 0.4))
def test_first_index_below(r):
    reg = make_prop2b_region()
    n = reg.first_index_below(r)
    assert n is not None
    assert reg._dist_index(n) < r
    if n > 1:
        assert reg._dist_index(n - 1) >= r


@given(st.floats(-10.0, 10.0), st.floats(1e-4, 0.3))
def test_rotation_equivariance(alpha, r):
    reg = make_prop2b_region(0.2)
    rot = reg.rotate(alpha)
    a = reg.sample_tail(r, 32)
    b = rot.sample_tail(r, 32)
    assert np.allclose(a[1], b[1])
    assert np.allclose(np.cos(a[0] + alpha), np.cos(b[0]), atol=1e-12)
    assert np.allclose(reg.tau(a), rot.tau(b), atol=1e-9)


def test_germ_equality():
    reg = make_prop2b_region()
    head = [(1.0, 0.5)]
    pts = np.array([1.0 / n for n in range(1, 2000)])
    explicit = make_explicit(list(zip(pts, pts ** 2)) + head)
    assert germ_equal_upto(reg, explicit, 0.01, budget=64)
    with pytest.raises(UnsupportedRegion):
        germ_equal_upto(reg, make_radial_region(), 0.01)


@given(st.integers(1, 6), st.floats(1e-4, 0.5))
def test_stolz_points_inside_region(b, r):
    reg = make_stolz_region(b, 0.3)
    th, de = reg.sample_tail(r, 128)
    assert np.all(tau_coords(0.3, th, de) > 1.0 / (1 + b))


def test_attached_membership():
    reg = make_attached_example()
    assert reg.contains(0.0, 0.25)[0]
    assert reg.contains(0.2, 0.25)[0]
    assert not reg.contains(0.3, 0.25)[0]


def test_family_lookup():
    fam = RegionFamily.rotation_invariant(make_prop2b_region())
    assert fam.kind == "RotationInvariant"
    assert fam.at(1.5).base == pytest.approx(1.5)
    tab = RegionFamily.tabulated([make_prop2b_region(0.0), make_prop2b_region(1.0)])
    assert tab.at(1.0).base == pytest.approx(1.0)
    with pytest.raises(KeyError):
        tab.at(2.0)
