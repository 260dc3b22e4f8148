import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from projadj.arcs import FULL_CIRCLE, Arc, ArcUnion, normalize, union_all
from projadj.geometry import TWO_PI

arc_lists = st.lists(st.tuples(st.floats(-10, 10), st.floats(1e-6, 3.0)), min_size=0, max_size=12)


def _mask(u: ArcUnion, t):
    return u.contains_angles(t)


def _probe():
    return np.linspace(0.0, TWO_PI, 4001, endpoint=False) + 1e-7


def _brute(arcs, t):
    out = np.zeros(t.shape, dtype=bool)
    for s, l in arcs:
        out |= np.mod(t - s, TWO_PI) < l
    return out


@given(arc_lists)
def test_union_membership_matches_brute(arcs):
    u = ArcUnion.from_starts_lengths([a for a, _ in arcs], [b for _, b in arcs])
    t = _probe()
    brute = _brute(arcs, t)
    got = _mask(u, t)
    # ignore probes within 1e-9 of an endpoint
    ends = np.array([e for s, l in arcs for e in (s, s + l)])
    if ends.size:
        near = np.min(np.abs(wrap(t[:, None] - ends[None, :])), axis=1) < 1e-9
    else:
        near = np.zeros(t.shape, dtype=bool)
    assert np.array_equal(got[~near], brute[~near])


def wrap(x):
    return np.mod(x + math.pi, TWO_PI) - math.pi


@given(arc_lists)
def test_measure_bounded_by_sum(arcs):
    u = ArcUnion.from_starts_lengths([a for a, _ in arcs], [b for _, b in arcs])
    assert u.measure() <= min(TWO_PI, sum(l for _, l in arcs)) + 1e-12


@given(arc_lists)
def test_complement_partitions(arcs):
    u = ArcUnion.from_starts_lengths([a for a, _ in arcs], [b for _, b in arcs])
    assert u.measure() + u.complement().measure() == pytest.approx(TWO_PI, abs=1e-9)


@given(arc_lists, arc_lists)
def test_union_and_subset(a, b):
    ua = ArcUnion.from_starts_lengths([x for x, _ in a], [y for _, y in a])
    ub = ArcUnion.from_starts_lengths([x for x, _ in b], [y for _, y in b])
    both = ua | ub
    assert ua.subset_of(both) and ub.subset_of(both)
    inter = ua.intersect(ub)
    assert inter.measure() <= min(ua.measure(), ub.measure()) + 1e-9


@given(arc_lists, st.floats(-10, 10))
def test_rotation_preserves_measure(arcs, alpha):
    u = ArcUnion.from_starts_lengths([a for a, _ in arcs], [b for _, b in arcs])
    assert u.rotate(alpha).measure() == pytest.approx(u.measure(), abs=1e-9)


def test_seam_component_rejoined():
    u = ArcUnion.from_starts_lengths([TWO_PI - 0.1], [0.3])
    comps = u.components()
    assert len(comps) == 1
    assert comps[0].length == pytest.approx(0.3)
    assert u.contains(0.0) and u.contains(TWO_PI - 0.05) and not u.contains(0.25)


def test_full_circle_and_empty():
    assert ArcUnion.full_circle().components() == [FULL_CIRCLE]
    assert ArcUnion.empty().complement().full
    assert normalize([Arc(0, 1), FULL_CIRCLE]).full
    assert union_all([]).is_empty()


def test_distance_to_boundary():
    u = ArcUnion.from_starts_lengths([1.0], [0.5])
    d = u.distance_to_boundary([1.1, 2.0])
    assert d[0] == pytest.approx(0.1) and d[1] == pytest.approx(0.5)


def test_arc_validation():
    with pytest.raises(ValueError):
        Arc(0.0, 0.0)
    with pytest.raises(ValueError):
        ArcUnion.from_starts_lengths([0.0], [-1.0])
