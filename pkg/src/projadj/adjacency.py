"""Shadows of point sets, adjacency of boundary sets, projective adjacency.

Sides are named by direction of travel from ``w``: a ``"right"`` witness is an
arc ``(w, w + L)`` (counterclockwise from ``w``), a ``"left"`` witness is
``(w - L, w)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .arcs import Arc, ArcUnion, FULL_CIRCLE
from .geometry import TWO_PI, DomainError, dist2_boundary, shadow_halfwidth, wrap_angle
from .regions import (DEFAULT_BUDGET, ApproachRegion, RegionFamily, SequenceRegion,
                      UnsupportedRegion, nested_tails)

LENGTH_TOL = 1e-10
WITNESS_FOUND = "WitnessFound"
REFUTED = "RefutedAtProbes"
INCONCLUSIVE = "Inconclusive"


def set_shadow(b: int, points) -> ArcUnion:
    """Union of the point shadows of ``points`` (a ``(theta, delta)`` pair of arrays)."""
    if b < 1:
        raise DomainError("shadows need b >= 1")
    th, de = points
    th = np.atleast_1d(np.asarray(th, dtype=float))
    de = np.atleast_1d(np.asarray(de, dtype=float))
    if th.size == 0:
        return ArcUnion.empty()
    hw = shadow_halfwidth(b, de)
    if np.any(~np.isfinite(hw) | (hw >= math.pi)):
        return ArcUnion.full_circle()
    keep = hw > 0
    return ArcUnion.from_starts_lengths(th[keep] - hw[keep], 2.0 * hw[keep])


def adjacent_witnesses(S: ArcUnion, w: float) -> dict:
    """Maximal arcs of ``S`` having ``w`` as an endpoint, keyed by side."""
    w = wrap_angle(float(w))
    out = {}
    if S.full:
        out["right"] = Arc(w, TWO_PI - LENGTH_TOL)
        out["left"] = Arc(w - (TWO_PI - LENGTH_TOL), TWO_PI - LENGTH_TOL)
        return out
    starts, lengths = S.starts_lengths()
    for s, l in zip(starts, lengths):
        t = (w - s) % TWO_PI
        if t < l and l - t > LENGTH_TOL:
            out["right"] = Arc(w, l - t)
        if 0.0 < t <= l and t > LENGTH_TOL:
            out["left"] = Arc(s, t)
    return out


def adjacent_to(S: ArcUnion, w: float, side: str = "either"):
    """A maximal arc ``J`` inside ``S`` with endpoint ``w`` on the requested side, or None."""
    if side not in ("left", "right", "either"):
        raise ValueError("side must be 'left', 'right' or 'either'")
    found = adjacent_witnesses(S, w)
    if side == "either":
        return found.get("right") or found.get("left")
    return found.get(side)


@dataclass
class RadiusResult:
    r: float
    n_points: int
    witness: Arc | None = None
    side: str | None = None
    certified_tail: float = 0.0
    probe: float | None = None

    def to_dict(self) -> dict:
        d = {"r": self.r, "n_points": self.n_points, "certified_tail": self.certified_tail}
        if self.witness is not None:
            d["witness"] = {"start": self.witness.start, "length": self.witness.length, "side": self.side}
        if self.probe is not None:
            d["probe"] = self.probe
        return d


@dataclass
class ProbeCheck:
    side: str
    index: int
    angle: str
    max_tau_sq: str
    tested_upto: int
    tail_bound: str

    def to_dict(self) -> dict:
        return dict(self.__dict__)


@dataclass
class AdjacencyWitness:
    b: int
    ladder: list
    verdict: str
    radii: list = field(default_factory=list)
    probes: list = field(default_factory=list)
    note: str = ""

    def to_dict(self) -> dict:
        return {"b": self.b, "ladder": self.ladder, "verdict": self.verdict,
                "radii": [r.to_dict() for r in self.radii],
                "probes": [p.to_dict() for p in self.probes], "note": self.note}


def _tail_certificate(region: ApproachRegion, b: int, r: float) -> float:
    if not isinstance(region, SequenceRegion) or region.tail_cover is None:
        return 0.0
    n0 = region.first_index_below(r)
    if n0 is None:
        return 0.0
    return float(region.tail_cover(b, n0))


def _miss_probe(S: ArcUnion, w: float, side: str) -> float | None:
    """A point on ``side`` of ``w`` outside ``S``, taken in the complement component touching ``w``."""
    gaps = adjacent_witnesses(S.complement(), w)
    gap = gaps.get(side)
    if gap is None:
        return None
    return wrap_angle(gap.start + 0.5 * gap.length)


def test_projective_adjacency(region: ApproachRegion, b: int, ladder: Sequence[float],
                              budget: int = DEFAULT_BUDGET, side: str = "either") -> AdjacencyWitness:
    """Search for arcs with endpoint ``w`` inside the b-shadow of each sampled tail.

    A found arc is sound: sampled shadows sit inside true shadows, and the only
    other ingredient is an analytic tail-cover certificate where the region
    carries one.  A miss proves nothing, so it yields ``Inconclusive``.
    """
    if b < 1:
        raise DomainError("b must be >= 1")
    tails = nested_tails(region, ladder, budget)
    results, all_found = [], True
    for r, pts in zip(ladder, tails):
        S = set_shadow(b, pts)
        cert = _tail_certificate(region, b, r)
        if cert > 0:
            S = S | ArcUnion.from_starts_lengths([region.base], [cert])
        J = adjacent_to(S, region.base, side)
        res = RadiusResult(float(r), int(pts[0].size), certified_tail=cert)
        if J is not None:
            res.witness = J
            res.side = "right" if abs(J.start - region.base) < 1e-15 or \
                abs(J.start - region.base - TWO_PI) < 1e-15 else "left"
        else:
            all_found = False
            res.probe = _miss_probe(S, region.base, "right" if side == "either" else side)
        results.append(res)
    verdict = WITNESS_FOUND if all_found else INCONCLUSIVE
    note = "positive results are certified; misses are one-sided sampling evidence only"
    return AdjacencyWitness(int(b), [float(r) for r in ladder], verdict, results, note=note)


test_projective_adjacency.__test__ = False  # not a pytest test despite the name


# -- refutation in extended precision ---------------------------------------------------

def prop2c_cutoff_index(b: int, dps: int = 60) -> int:
    """Smallest ``n >= 10`` with ``(128/3) delta_n < (1+b)^-2`` for all later n (delta_n decreasing)."""
    import mpmath

    with mpmath.workdps(dps):
        n = 10
        while True:
            delta = mpmath.mpf(4) ** (-(2 ** n))
            if mpmath.mpf(128) / 3 * delta < mpmath.mpf(1) / (1 + b) ** 2:
                return n
            n += 1


def _tau_sq_mp(c, theta, delta):
    import mpmath

    s = mpmath.sin((c - theta) / 2)
    return delta * delta / (delta * delta + 4 * (1 - delta) * s * s)


def refute_projective_adjacency(region: SequenceRegion, b: int, r=None, probes=None,
                                n_probes: int = 8, tested_upto: int | None = None,
                                dps: int = 60) -> AdjacencyWitness:
    """Show that no arc with endpoint ``w`` lies in the b-shadow of the tail in ``B(w, r)``.

    Needs the region's extended-precision rule with ``theta_n`` and ``delta_n``
    positive and decreasing.  Indices up to ``tested_upto`` are checked exactly;
    later ones are covered by the monotone bound
    ``tau^2 <= delta^2 / (delta^2 + 4 (1 - delta) sin^2(gap/2))`` evaluated at the
    largest remaining ``delta`` and the smallest remaining angular gap.
    """
    import mpmath

    if not isinstance(region, SequenceRegion) or region.mp_rule is None:
        raise UnsupportedRegion("refutation needs a sequence region with an extended-precision rule; "
                                "its tail cannot be enumerated exhaustively otherwise")
    if b < 1:
        raise DomainError("b must be >= 1")
    with mpmath.workdps(dps):
        coords = region.mp_rule
        one = mpmath.mpf(1)
        bound = one / (1 + b) ** 2
        n_b = prop2c_cutoff_index(b, dps)
        first_in = 10 + n_b
        if r is None:
            r2 = min(coords(n)[1] ** 2 + 4 * (1 - coords(n)[1]) * mpmath.sin(coords(n)[0] / 2) ** 2
                     for n in range(region.start, first_in))
        else:
            r2 = mpmath.mpf(r) ** 2
        if probes is None:
            left = [("left", k, -one / k) for k in range(10, 10 + n_probes)]
            right = [("right", k, (coords(k)[0] + coords(k + 1)[0]) / 2)
                     for k in range(first_in, first_in + n_probes)]
            probes = left + right
        top = max(p[1] for p in probes) + 3 if tested_upto is None else tested_upto
        pts = [coords(n) for n in range(region.start, top + 1)]
        in_ball = []
        for n, (t, d) in zip(range(region.start, top + 1), pts):
            d2 = d * d + 4 * (1 - d) * mpmath.sin(t / 2) ** 2
            if d2 < r2:
                in_ball.append((n, t, d))
        t_next, d_next = coords(top + 1)
        checks, all_out = [], True
        for side, k, c in probes:
            worst = max((_tau_sq_mp(c, t, d) for _, t, d in in_ball), default=mpmath.mpf(0))
            # later indices: theta in (0, t_next], delta in (0, d_next]
            gap = abs(c) - t_next if c > 0 else abs(c)
            if gap <= 0:
                tail = one
            else:
                s = mpmath.sin(gap / 2)
                tail = d_next ** 2 / (d_next ** 2 + 4 * (1 - d_next) * s * s)
            ok = worst < bound and tail < bound
            all_out &= bool(ok)
            checks.append(ProbeCheck(side, int(k), mpmath.nstr(c, 17), mpmath.nstr(worst, 6), int(top),
                                     mpmath.nstr(tail, 6)))
        rb = mpmath.nstr(mpmath.sqrt(r2), 17)
    verdict = REFUTED if all_out else INCONCLUSIVE
    note = (f"tail ball radius {rb}; indices {in_ball[0][0] if in_ball else None}..{top} checked "
            f"exactly, later indices by the monotone bound; threshold 1/(1+b)^2")
    return AdjacencyWitness(int(b), [rb], verdict, [], checks, note)


# -- families ---------------------------------------------------------------------------

def boundary_grid(n: int) -> np.ndarray:
    return TWO_PI * (np.arange(n) + 0.5) / n


def family_shadow(family: RegionFamily, points, grid: int = 4096) -> np.ndarray:
    """Grid angles ``w`` whose region ``family.at(w)`` contains one of ``points``."""
    th, de = (np.atleast_1d(np.asarray(a, dtype=float)) for a in points)
    ws = boundary_grid(grid)
    hit = np.zeros(ws.size, dtype=bool)
    for i, w in enumerate(ws):
        if family.base_region is not None:
            # z in region(w) iff z e^{-iw} in region(1)
            hit[i] = bool(np.any(family.base_region.contains(th - w, de)))
        else:
            try:
                hit[i] = bool(np.any(family.at(w).contains(th, de)))
            except KeyError:
                continue
    return ws[hit]


def regularity_probe(family: RegionFamily, tent, grid: int = 4096, cap: int = 256) -> float:
    """Sampled measure of ``{w : family.at(w) meets the tent}`` (a lower estimate)."""
    ws = boundary_grid(grid)
    count = 0
    for w in ws:
        if family.base_region is not None:
            region, center = family.base_region, tent.center - w
        else:
            try:
                region, center = family.at(w), tent.center
            except KeyError:
                continue
        th, de = region.points_in_disc(center, tent.radius, cap)
        if th.size:
            count += 1
    return TWO_PI * count / grid
