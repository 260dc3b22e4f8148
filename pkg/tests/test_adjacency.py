import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from oracles import shadow_brute
from projadj.adjacency import INCONCLUSIVE, REFUTED, WITNESS_FOUND
from projadj import (Arc, ArcUnion, DomainError,
                     UnsupportedRegion, adjacent_to, make_prop2b_region, make_prop2c_region,
                     make_radial_region, refute_projective_adjacency, set_shadow,
                     test_projective_adjacency as projective_adjacency)
from projadj.geometry import from_boundary_coords

LADDER = [2.0 ** -k for k in range(3, 11)]


def test_prop2b_witnesses_every_radius():
    res = projective_adjacency(make_prop2b_region(), 2, LADDER)
    assert res.verdict == WITNESS_FOUND
    for r in res.radii:
        assert r.side == "right"
        assert r.witness.length >= r.certified_tail > 0


def test_prop2b_without_certificate_is_inconclusive():
    reg = make_prop2b_region()
    bare = type(reg)(**{**reg.__dict__, "tail_cover": None}) if hasattr(reg, "__dict__") else None
    if bare is None:
        pytest.skip("region is not a plain dataclass")
    assert projective_adjacency(bare, 2, LADDER).verdict == INCONCLUSIVE


def test_prop2b_certificate_numerically():
    # for t in [1/m, 1/(m-1)) the point z_m lies in the 2-Stolz region at e^{it}
    for m in range(6, 2001):
        z = complex(from_boundary_coords(1.0 / m, 1.0 / m ** 2))
        for t in np.linspace(1.0 / m, 1.0 / (m - 1), 9)[:-1]:
            u = complex(math.cos(t), math.sin(t))
            assert (1 - abs(z)) / abs(u - z) > 1.0 / 3.0


def test_prop2c_refuted():
    res = refute_projective_adjacency(make_prop2c_region(), 2)
    assert res.verdict == REFUTED
    assert res.probes and all(float(p.max_tau_sq) < 1.0 / 9 for p in res.probes)


def test_refute_rejects_unsupported():
    with pytest.raises(UnsupportedRegion):
        refute_projective_adjacency(make_radial_region(), 2)


def test_radial_shadow_contains_base():
    # a radial tail's shadow is an interval centred on w, so w is inside, with arcs on both sides
    res = projective_adjacency(make_radial_region(0.4), 1, LADDER)
    assert res.verdict == WITNESS_FOUND


def test_bad_aperture():
    with pytest.raises(DomainError):
        projective_adjacency(make_prop2b_region(), 0, LADDER)


@given(st.lists(st.tuples(st.floats(-3, 3), st.floats(1e-4, 0.3)), min_size=1, max_size=10),
       st.integers(1, 4), st.floats(-math.pi, math.pi))
def test_set_shadow_matches_brute(points, b, u):
    th = np.array([p[0] for p in points])
    de = np.array([p[1] for p in points])
    S = set_shadow(b, (th, de))
    zs = [complex(from_boundary_coords(t, d)) for t, d in points]
    margins = [abs(abs(complex(math.cos(u), math.sin(u)) - z) - (1 + b) * d) for z, d in zip(zs, de)]
    if min(margins) > 1e-10:
        assert S.contains(u) == any(shadow_brute(b, u, z) for z in zs)


def test_adjacent_to_sides():
    S = ArcUnion.from_starts_lengths([1.0], [0.5])
    assert adjacent_to(S, 1.0, "right").length == pytest.approx(0.5)
    assert adjacent_to(S, 1.0, "left") is None
    assert adjacent_to(S, 1.5, "left").start == pytest.approx(1.0)
    with pytest.raises(ValueError):
        adjacent_to(S, 1.0, "up")
