"""Approach regions in the unit disc and the tangency classifier.

Every region is based at a boundary angle ``base`` and produces points in
boundary coordinates ``(theta, delta)``.  Each region owns a fixed
deterministic stream of points; ``sample_tail(r, budget)`` is the first
``budget`` stream points inside ``B(w, r)``.  Restricting the sample at ``r``
to ``B(w, r/2)`` therefore gives a subset of the sample at ``r/2``, and
:func:`nested_tails` turns a ladder of samples into genuinely nested sets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Sequence

import numpy as np

from .geometry import TWO_PI, DomainError, dist2_boundary, tau_coords, wrap_angle

DEFAULT_LADDER = tuple(2.0 ** -k for k in range(3, 21))
DEFAULT_BUDGET = 256
EPS_CLASS = 0.02
R_FLOOR = 2.0 ** -40

Points = tuple  # (theta ndarray, delta ndarray)


class RangeError(OverflowError):
    """Index beyond what double precision can represent."""


class RegionError(ValueError):
    """The region has no sampled points where points were required."""


class UnsupportedRegion(TypeError):
    pass


def _empty() -> Points:
    return np.zeros(0), np.zeros(0)


def _concat(parts) -> Points:
    parts = [p for p in parts if p[0].size]
    if not parts:
        return _empty()
    if len(parts) == 1:
        return parts[0]
    th = np.concatenate([p[0] for p in parts])
    de = np.concatenate([p[1] for p in parts])
    return dedupe((th, de))


def _distinct_sorted(a: np.ndarray) -> np.ndarray:
    keep = np.ones(a.size, dtype=bool)
    keep[1:] = a[1:] != a[:-1]
    return a[keep]


def dedupe(pts: Points) -> Points:
    th, de = pts
    if th.size == 0:
        return pts
    key = np.round(np.stack([wrap_angle(th.copy()), de]), 15)
    _, idx = np.unique(key, axis=1, return_index=True)
    idx.sort()
    return th[idx], de[idx]


@dataclass(frozen=True)
class ApproachRegion:
    """Base class; subclasses implement ``_first_in_ball``."""

    base: float
    r_max: float = 0.5
    r_floor: float = R_FLOOR
    name: str = "region"

    exact = False

    def distance(self, pts: Points) -> np.ndarray:
        th, de = pts
        return np.sqrt(dist2_boundary(self.base, th, de))

    def tau(self, pts: Points) -> np.ndarray:
        th, de = pts
        return tau_coords(self.base, th, de)

    def _first_in_ball(self, rho: float, budget: int) -> Points:
        raise NotImplementedError

    def sample_tail(self, r: float, budget: int = DEFAULT_BUDGET) -> Points:
        """The first ``budget`` stream points inside ``B(w, r)``."""
        if budget < 1:
            raise ValueError("budget must be >= 1")
        if not (0.0 < r):
            raise DomainError("tail radius must be positive")
        pts = self._first_in_ball(r, budget)
        if pts[0].size:
            keep = self.distance(pts) < r
            pts = (pts[0][keep][:budget], pts[1][keep][:budget])
        if pts[0].size == 0:
            raise RegionError(f"{self.name}: empty tail at r={r!r}; the region does not "
                              "reach the base point at this resolution")
        return pts

    def points_in_disc(self, center: float, radius: float, cap: int = 4096) -> Points:
        """Region points inside ``B(e^{i center}, radius)``; generic version filters a tail sample."""
        reach = math.sqrt(float(dist2_boundary(self.base, center, 0.0))) + radius
        try:
            pts = self.sample_tail(min(reach, 2.0), cap)
        except RegionError:
            return _empty()
        keep = dist2_boundary(center, pts[0], pts[1]) < radius * radius
        return pts[0][keep], pts[1][keep]

    def rotate(self, alpha: float) -> "ApproachRegion":
        return replace(self, base=wrap_angle(self.base + alpha))

    def contains(self, theta, delta) -> np.ndarray:
        """Exact membership of points given in boundary coordinates."""
        raise UnsupportedRegion(f"{self.name}: no exact membership test")

    def _contains_by_matching(self, theta, delta, tol: float = 1e-14) -> np.ndarray:
        theta = np.atleast_1d(np.asarray(theta, dtype=float))
        delta = np.atleast_1d(np.asarray(delta, dtype=float))
        out = np.zeros(theta.shape, dtype=bool)
        for i, (t, d) in enumerate(zip(theta, delta)):
            z = (1.0 - d) * complex(math.cos(t), math.sin(t))
            near = self.points_in_disc(float(t), float(d) + 1e-9, cap=64)
            if near[0].size:
                out[i] = bool(np.min(np.abs(self.to_complex(near) - z)) <= tol)
        return out

    def to_complex(self, pts: Points) -> np.ndarray:
        th, de = pts
        return (1.0 - de) * np.exp(1j * th)


# -- sequences ----------------------------------------------------------------------

@dataclass(frozen=True)
class SequenceRegion(ApproachRegion):
    """``{z_n : n >= start}`` given by a vectorized rule ``n -> (theta_rel, delta)``.

    ``monotone_from``: from this index on, ``|z_n - w|`` is strictly decreasing,
    which lets tails be located by bisection.  ``cutoff`` caps the index (None = unbounded).
    """

    rule: Callable = None
    start: int = 1
    cutoff: int | None = None
    monotone_from: int = 1
    mp_rule: Callable | None = None
    tail_cover: Callable | None = None

    exact = True

    def points(self, n) -> Points:
        n = np.asarray(n, dtype=float)
        th_rel, de = self.rule(n)
        return self.base + np.asarray(th_rel, dtype=float), np.asarray(de, dtype=float)

    def _dist_index(self, n: int) -> float:
        th, de = self.points(np.array([n]))
        return float(self.distance((th, de))[0])

    def first_index_below(self, rho: float) -> int | None:
        """Smallest ``n >= monotone_from`` with ``|z_n - w| < rho`` (None if beyond cutoff)."""
        lo = max(self.start, self.monotone_from)
        limit = self.cutoff if self.cutoff is not None else 2 ** 52
        if lo > limit:
            return None
        # bracket with a geometric probe, then refine with evenly spaced probes
        probe = _distinct_sorted(np.minimum(lo + (2.0 ** np.arange(0, 53) - 1), limit).astype(np.int64))
        below = self._dist_many(probe) < rho
        if not below.any():
            return None
        k = int(np.argmax(below))
        if k == 0:
            return int(probe[0])
        a, b = int(probe[k - 1]), int(probe[k])  # dist(a) >= rho > dist(b)
        while b - a > 1:
            cand = _distinct_sorted(np.linspace(a, b, min(b - a + 1, 65)).round().astype(np.int64))
            below = self._dist_many(cand) < rho
            k = int(np.argmax(below))
            a, b = int(cand[k - 1]), int(cand[k])
        return b

    def _dist_many(self, n) -> np.ndarray:
        return self.distance(self.points(n))

    def _prefix(self) -> Points:
        hi = max(self.start, self.monotone_from)
        if self.cutoff is not None:
            hi = min(hi, self.cutoff + 1)
        if hi <= self.start:
            return _empty()
        return self.points(np.arange(self.start, hi))

    def _first_in_ball(self, rho: float, budget: int) -> Points:
        pre = self._prefix()
        parts = []
        if pre[0].size:
            keep = self.distance(pre) < rho
            parts.append((pre[0][keep][:budget], pre[1][keep][:budget]))
        n0 = self.first_index_below(rho)
        if n0 is not None:
            n1 = n0 + budget - 1
            if self.cutoff is not None:
                n1 = min(n1, self.cutoff)
            if n1 >= n0:
                parts.append(self.points(np.arange(n0, n1 + 1)))
        return _concat(parts)

    def enumerate_tail(self, r: float, count: int) -> tuple[Points, float]:
        """Points in B(w, r), complete outside radius ``complete_from``."""
        pre = self._prefix()
        parts = []
        if pre[0].size:
            keep = self.distance(pre) < r
            parts.append((pre[0][keep], pre[1][keep]))
        n0 = self.first_index_below(r)
        complete_from = 0.0
        if n0 is not None:
            n1 = n0 + count - 1
            if self.cutoff is not None and n1 >= self.cutoff:
                n1 = self.cutoff
            else:
                complete_from = self._dist_index(n1)
            parts.append(self.points(np.arange(n0, n1 + 1)))
        return _concat(parts), complete_from

    def contains(self, theta, delta) -> np.ndarray:
        return self._contains_by_matching(theta, delta)

    def index_range_in_annulus(self, lo_r: float, hi_r: float) -> tuple[int, int] | None:
        """Indices n (monotone part) with lo_r < |z_n - w| < hi_r, as an inclusive range."""
        a = self.first_index_below(hi_r)
        if a is None:
            return None
        b = self.first_index_below(lo_r) if lo_r > 0 else None
        last = (b - 1) if b is not None else (self.cutoff if self.cutoff is not None else a + 10 ** 9)
        if last < a:
            return None
        return a, last

    def points_in_disc(self, center: float, radius: float, cap: int = 4096) -> Points:
        dc = math.sqrt(float(dist2_boundary(self.base, center, 0.0)))
        parts = []
        pre = self._prefix()
        if pre[0].size:
            parts.append(pre)
        rng = self.index_range_in_annulus(max(dc - radius, 0.0), dc + radius)
        if rng is not None:
            a, b = rng
            if b - a + 1 > cap:
                idx = np.unique(np.linspace(a, b, cap).round().astype(np.int64))
            else:
                idx = np.arange(a, b + 1)
            parts.append(self.points(idx))
        pts = _concat(parts)
        if pts[0].size == 0:
            return pts
        keep = dist2_boundary(center, pts[0], pts[1]) < radius * radius
        return pts[0][keep], pts[1][keep]


def _prop2b_rule(n):
    return 1.0 / n, 1.0 / (n * n)


def make_prop2b_region(w: float = 0.0) -> SequenceRegion:
    """``z_n = (1 - n^-2) e^{i/n}`` rotated to base ``w``: sequential, tangential, projectively adjacent."""
    return SequenceRegion(base=wrap_angle(float(w)), r_max=0.5, name="prop2b", rule=_prop2b_rule,
                          start=1, monotone_from=1, tail_cover=_prop2b_tail_cover)


def _prop2b_tail_cover(b: int, n0: int) -> float:
    """Length L such that the b-shadows of ``{z_m : m >= n0}`` cover ``(w, w + L)``.

    For ``1/m <= t < 1/(m-1)`` the chord estimate gives ``tau(e^{it}, z_m)^2 > 64/250 > 1/9``,
    so ``z_m`` lies in the 2-Stolz region at ``e^{it}``; this needs ``t`` and ``z_m`` in the
    chord box, i.e. ``m >= 6``.  Larger ``b`` only enlarges the regions.
    """
    if b < 2:
        return 0.0
    n0 = max(int(n0), 6)
    return 1.0 / (n0 - 1)


PROP2C_CUTOFF = 6


def _prop2c_rule(n):
    n = np.asarray(n, dtype=float)
    return 4.0 ** -(2.0 ** (n - 1)), 4.0 ** -(2.0 ** n)


def make_prop2c_region(w: float = 0.0, cutoff: int = PROP2C_CUTOFF) -> SequenceRegion:
    """``z_n = (1 - 4^{-2^n}) exp(i 4^{-2^{n-1}})``; only ``n <= cutoff`` in double precision."""
    if cutoff > PROP2C_CUTOFF:
        raise RangeError(f"prop2c index cutoff {cutoff} exceeds {PROP2C_CUTOFF}: "
                            "delta_n underflows double precision; use the extended-precision path")
    last = _prop2c_rule(np.array([cutoff]))
    floor = math.sqrt(float(dist2_boundary(0.0, last[0][0], last[1][0])))
    return SequenceRegion(base=wrap_angle(float(w)), r_max=0.5, r_floor=floor, name="prop2c",
                          rule=_prop2c_rule, start=1, cutoff=cutoff, monotone_from=1,
                          mp_rule=prop2c_coords_mp)


def prop2c_coords_mp(n: int, dps: int = 50):
    """Boundary coordinates of the n-th prop2c point as mpmath numbers (any n)."""
    import mpmath

    with mpmath.workdps(dps):
        four = mpmath.mpf(4)
        return four ** (-(2 ** (n - 1))), four ** (-(2 ** n))


def make_sequence_region(rule: Callable, w: float = 0.0, *, start: int = 1, cutoff=None,
                         monotone_from: int = 1, name: str = "sequence", r_max: float = 0.5):
    return SequenceRegion(base=wrap_angle(float(w)), r_max=r_max, name=name, rule=rule,
                          start=start, cutoff=cutoff, monotone_from=monotone_from)


# -- explicit point sets and unions ---------------------------------------------------

@dataclass(frozen=True)
class ExplicitRegion(ApproachRegion):
    theta_rel: tuple = ()
    delta: tuple = ()

    exact = True

    def all_points(self) -> Points:
        return self.base + np.asarray(self.theta_rel, dtype=float), np.asarray(self.delta, dtype=float)

    def _first_in_ball(self, rho: float, budget: int) -> Points:
        pts = self.all_points()
        keep = self.distance(pts) < rho
        return pts[0][keep][:budget], pts[1][keep][:budget]

    def contains(self, theta, delta) -> np.ndarray:
        return self._contains_by_matching(theta, delta)

    def enumerate_tail(self, r: float, count: int) -> tuple[Points, float]:
        pts = self.all_points()
        keep = self.distance(pts) < r
        return (pts[0][keep], pts[1][keep]), 0.0


def make_explicit(points, w: float = 0.0, name: str = "explicit") -> ExplicitRegion:
    """Finite region from absolute points given as complex numbers or (theta, delta) pairs."""
    th, de = [], []
    for p in points:
        if isinstance(p, complex) or np.isscalar(p):
            p = complex(p)
            if abs(p) >= 1:
                raise DomainError("explicit points must lie inside the disc")
            th.append(math.atan2(p.imag, p.real) - w)
            de.append(1.0 - abs(p))
        else:
            th.append(float(p[0]) - w)
            de.append(float(p[1]))
    de_arr = np.asarray(de)
    if de_arr.size and (np.any(de_arr <= 0) or np.any(de_arr > 1)):
        raise DomainError("explicit points must lie inside the disc")
    floor = 0.0
    if th:
        floor = float(np.min(np.sqrt(dist2_boundary(0.0, np.asarray(th), de_arr))))
    return ExplicitRegion(base=wrap_angle(float(w)), r_max=0.5, r_floor=max(floor, R_FLOOR), name=name,
                          theta_rel=tuple(th), delta=tuple(de))


@dataclass(frozen=True)
class UnionRegion(ApproachRegion):
    parts: tuple = ()

    @property
    def exact(self):
        return all(p.exact for p in self.parts)

    def rotate(self, alpha: float) -> "UnionRegion":
        return replace(self, base=wrap_angle(self.base + alpha),
                       parts=tuple(p.rotate(alpha) for p in self.parts))

    def _first_in_ball(self, rho: float, budget: int) -> Points:
        share = -(-budget // len(self.parts))
        # interleave parts so a cap keeps every part represented
        out = [p._first_in_ball(rho, share) for p in self.parts]
        th = [q[0] for q in out]
        de = [q[1] for q in out]
        m = max((t.size for t in th), default=0)
        order_th, order_de = [], []
        for i in range(m):
            for t, d in zip(th, de):
                if i < t.size:
                    order_th.append(t[i])
                    order_de.append(d[i])
        return dedupe((np.asarray(order_th), np.asarray(order_de)))

    def points_in_disc(self, center: float, radius: float, cap: int = 4096) -> Points:
        return _concat([p.points_in_disc(center, radius, cap) for p in self.parts])

    def contains(self, theta, delta) -> np.ndarray:
        out = np.zeros(np.shape(np.atleast_1d(theta)), dtype=bool)
        for p in self.parts:
            out |= p.contains(theta, delta)
        return out

    def enumerate_tail(self, r: float, count: int) -> tuple[Points, float]:
        if not self.exact:
            raise UnsupportedRegion("union contains parts without exact membership")
        pts, comp = [], 0.0
        for p in self.parts:
            q, c = p.enumerate_tail(r, count)
            pts.append(q)
            comp = max(comp, c)
        return _concat(pts), comp


def union_regions(*regions: ApproachRegion) -> UnionRegion:
    bases = {round(r.base, 14) for r in regions}
    if len(bases) != 1:
        raise ValueError("regions in a union must share their base point")
    return UnionRegion(base=regions[0].base, r_max=min(r.r_max for r in regions),
                       r_floor=min(r.r_floor for r in regions),
                       name="union(" + ",".join(r.name for r in regions) + ")", parts=tuple(regions))


# -- rule-based continuous regions ----------------------------------------------------

@dataclass(frozen=True)
class RadialRegion(ApproachRegion):
    """The open radius ``{r w : 0 <= r < 1}``."""

    density: int = 4

    def _first_in_ball(self, rho: float, budget: int) -> Points:
        # delta stream 2^{-k/density}; inside B(w, rho) iff delta < rho
        k0 = max(0, math.floor(-self.density * math.log2(rho)) + 1)
        k = np.arange(k0, k0 + budget, dtype=float)
        de = 2.0 ** (-k / self.density)
        de = de[de < rho]
        return np.full(de.size, self.base), de


    def contains(self, theta, delta) -> np.ndarray:
        rel = np.mod(np.atleast_1d(np.asarray(theta, dtype=float)) - self.base + math.pi, TWO_PI) - math.pi
        delta = np.atleast_1d(np.asarray(delta, dtype=float))
        return (delta == 1.0) | ((rel == 0.0) & (delta > 0) & (delta < 1))


def make_radial_region(w: float = 0.0, density: int = 4) -> RadialRegion:
    return RadialRegion(base=wrap_angle(float(w)), r_max=1.0, name="radial", density=density)


@dataclass(frozen=True)
class CurveRegion(ApproachRegion):
    """Image of a curve ``t -> (theta_rel, delta)`` with ``t = 1 - s`` decreasing to 0."""

    rule: Callable = None
    density: int = 8
    depth: int = 200

    def _stream(self) -> Points:
        t = 2.0 ** (-np.arange(0, self.depth * self.density, dtype=float) / self.density)
        th, de = self.rule(t)
        return self.base + np.asarray(th, dtype=float), np.asarray(de, dtype=float)

    def _first_in_ball(self, rho: float, budget: int) -> Points:
        pts = self._stream()
        keep = np.flatnonzero(self.distance(pts) < rho)[:budget]
        return pts[0][keep], pts[1][keep]


def make_curve_region(rule: Callable, w: float = 0.0, density: int = 8, name: str = "curve") -> CurveRegion:
    """``rule(t)`` returns ``(theta_rel, delta)`` for ``t = 1 - s`` in (0, 1]; must tend to (0, 0)."""
    th, de = rule(np.array([1e-12]))
    if abs(float(np.asarray(th).ravel()[0])) > 1e-3 or abs(float(np.asarray(de).ravel()[0])) > 1e-3:
        raise DomainError("curve rule does not converge to the base point as s -> 1")
    return CurveRegion(base=wrap_angle(float(w)), r_max=0.5, name=name, rule=rule, density=density)


@dataclass(frozen=True)
class StolzRegion(ApproachRegion):
    """``Gamma_b(w) = {z : tau(w, z) > 1/(1+b)}`` sampled on rays and near its edge."""

    b: int = 1
    density: int = 4
    fractions: tuple = (0.0, 0.5, -0.5, 0.9, -0.9, 1.0 - 1e-9, -(1.0 - 1e-9))

    def edge_halfangle(self, delta):
        """Angular offset where tau = 1/(1+b) at depth delta."""
        b = self.b
        s2 = ((1 + b) ** 2 - 1) * delta * delta / (4.0 * (1.0 - delta))
        return 2.0 * np.arcsin(np.sqrt(np.clip(s2, 0.0, 1.0)))

    def _first_in_ball(self, rho: float, budget: int) -> Points:
        if self.b == 0:
            raise DomainError("use the radial region for b = 0")
        fr = np.asarray(self.fractions)
        # points at depth delta lie within (1+b) delta of w
        k0 = max(0, math.floor(-self.density * math.log2(rho / (1 + self.b))) + 1)
        nk = budget // fr.size + 1
        k = np.arange(k0, k0 + nk, dtype=float)
        de = 2.0 ** (-k / self.density)
        de = de[de < 0.5]
        x = self.edge_halfangle(de)
        th = self.base + (x[:, None] * fr[None, :]).ravel()
        dd = np.repeat(de, fr.size)
        pts = (th, dd)
        keep = (tau_coords(self.base, th, dd) > 1.0 / (1 + self.b)) & (self.distance(pts) < rho)
        return th[keep][:budget], dd[keep][:budget]


    def contains(self, theta, delta) -> np.ndarray:
        delta = np.atleast_1d(np.asarray(delta, dtype=float))
        return tau_coords(self.base, np.atleast_1d(theta), delta) > 1.0 / (1 + self.b)

    def points_in_disc(self, center: float, radius: float, cap: int = 4096) -> Points:
        # a small polar grid around the disc centre, filtered exactly
        th0, rho0 = center, radius
        k = max(4, int(math.sqrt(cap)))
        de = np.geomspace(max(rho0 * 1e-6, 1e-300), min(rho0, 1.0), k)
        offs = np.linspace(-1.0, 1.0, k) * 2.0 * math.asin(min(1.0, rho0 / 2.0))
        T, D = np.meshgrid(th0 + offs, de)
        T, D = T.ravel(), D.ravel()
        keep = (dist2_boundary(center, T, D) < radius * radius) & self.contains(T, D)
        return T[keep][:cap], D[keep][:cap]


def make_stolz_region(b: int, w: float = 0.0) -> StolzRegion:
    if b < 1:
        raise DomainError("Stolz regions here need b >= 1; b = 0 is the radius")
    return StolzRegion(base=wrap_angle(float(w)), r_max=1.0, name=f"stolz:{b}", b=int(b))


@dataclass(frozen=True)
class AttachedExample(ApproachRegion):
    """``(0,1) ∪ ⋃_{n>=2} {(1 - 1/n) e^{i t} : 0 <= t < 1/n}`` rotated to ``w``."""

    fractions: tuple = (0.0, 0.25, 0.5, 0.75, 0.999)
    density: int = 4

    def _first_in_ball(self, rho: float, budget: int) -> Points:
        fr = np.asarray(self.fractions)
        # arc pieces: piece n reaches within 1/n of w
        n0 = max(2, math.floor(1.0 / rho) + 1)
        n = np.arange(n0, n0 + budget // (fr.size + 1) + 1, dtype=float)
        th = self.base + (fr[None, :] / n[:, None]).ravel()
        de = np.repeat(1.0 / n, fr.size)
        radial = make_radial_region(self.base, self.density)._first_in_ball(rho, budget // (fr.size + 1) + 1)
        pts = _concat([(th, de), radial])
        keep = self.distance(pts) < rho
        return pts[0][keep][:budget], pts[1][keep][:budget]

    def contains(self, theta, delta) -> np.ndarray:
        rel = np.mod(np.atleast_1d(np.asarray(theta, dtype=float)) - self.base, TWO_PI)
        rel = np.where(rel > math.pi, rel - TWO_PI, rel)
        delta = np.atleast_1d(np.asarray(delta, dtype=float))
        on_radius = (np.abs(rel) == 0.0) & (delta > 0) & (delta < 1)
        n = np.round(1.0 / delta)
        on_piece = (n >= 2) & (np.abs(1.0 / n - delta) < 1e-15) & (rel >= 0) & (rel < 1.0 / n)
        return on_radius | on_piece


def make_attached_example(w: float = 0.0) -> AttachedExample:
    return AttachedExample(base=wrap_angle(float(w)), r_max=0.5, name="attached")


# -- classification -------------------------------------------------------------------

def nested_tails(region: ApproachRegion, ladder: Sequence[float], budget: int = DEFAULT_BUDGET):
    """Samples along a decreasing ladder, made exactly nested by carrying smaller-radius samples up."""
    ladder = [float(r) for r in ladder]
    if any(b >= a for a, b in zip(ladder, ladder[1:])):
        raise DomainError("ladder must be strictly decreasing")
    if ladder and (ladder[-1] <= 0 or ladder[0] > region.r_max):
        raise DomainError(f"ladder must lie in (0, r_max={region.r_max}]")
    raw = [region.sample_tail(r, budget) for r in ladder]
    out = [None] * len(raw)
    acc = _empty()
    for i in range(len(raw) - 1, -1, -1):
        acc = _concat([raw[i], acc])
        out[i] = acc
    return out


@dataclass
class ClassificationReport:
    region: str
    ladder: list
    lower: list
    upper: list
    counts: list
    a_lower: float
    a_upper: float
    verdict: str
    eps: float = EPS_CLASS
    evidence: str = ("sampled lower gauge is an upper estimate of the true infimum and the sampled "
                     "upper gauge a lower estimate of the true supremum")

    def to_dict(self) -> dict:
        return {
            "region": self.region, "ladder": self.ladder, "lower_tau": self.lower,
            "upper_tau": self.upper, "counts": self.counts, "A_lower": self.a_lower,
            "A_upper": self.a_upper, "verdict": self.verdict, "eps_class": self.eps,
            "evidence": self.evidence,
        }


def classify(region: ApproachRegion, ladder: Sequence[float] = DEFAULT_LADDER,
             budget: int = DEFAULT_BUDGET, eps: float = EPS_CLASS) -> ClassificationReport:
    """Nontangential / Tangential / VeryOscillatory / Inconclusive from sampled tau gauges."""
    tails = nested_tails(region, ladder, budget)
    lower, upper, counts = [], [], []
    for pts in tails:
        t = region.tau(pts)
        lower.append(float(t.min()))
        upper.append(float(t.max()))
        counts.append(int(t.size))
    a_lo, a_hi = lower[-1], upper[-1]
    if a_lo > eps:
        verdict = "Nontangential"
    elif a_hi < eps:
        verdict = "Tangential"
    elif a_lo < eps and a_hi > 2 * eps:
        # a positive limsup can be witnessed; a vanishing liminf only suggested
        verdict = "VeryOscillatory"
    else:
        verdict = "Inconclusive"
    return ClassificationReport(region.name, [float(r) for r in ladder], lower, upper, counts,
                                a_lo, a_hi, verdict, eps)


def germ_equal_upto(a: ApproachRegion, b: ApproachRegion, r: float, budget: int = DEFAULT_BUDGET,
                    tol: float = 1e-14) -> bool:
    """Whether the tails of ``a`` and ``b`` in ``B(w, r)`` coincide (on the enumerated range)."""
    if not (a.exact and b.exact):
        raise UnsupportedRegion("germ comparison needs regions with exact membership")
    if abs(float(np.mod(a.base - b.base + math.pi, TWO_PI) - math.pi)) > 1e-14:
        raise ValueError("regions must share their base point")
    pa, ca = a.enumerate_tail(r, budget)
    pb, cb = b.enumerate_tail(r, budget)
    cut = max(ca, cb)
    za = a.to_complex(pa)[a.distance(pa) >= cut]
    zb = b.to_complex(pb)[b.distance(pb) >= cut]
    if za.size != zb.size:
        return False
    if za.size == 0:
        return True
    d = np.abs(za[:, None] - zb[None, :])
    return bool(np.all(d.min(axis=1) <= tol) and np.all(d.min(axis=0) <= tol))


def rotate(region: ApproachRegion, alpha: float) -> ApproachRegion:
    return region.rotate(alpha)


@dataclass(frozen=True)
class RegionFamily:
    """A choice of approach region at each boundary point.

    Rotation-invariant families hold one region based at angle 0; tabulated
    families hold finitely many regions keyed by their base angle.  ``b_rule``
    gives the Stolz aperture used at each point (an int or a callable).
    """

    base_region: ApproachRegion | None = None
    table: tuple = ()
    b_rule: object = 2

    @classmethod
    def rotation_invariant(cls, region: ApproachRegion, b=2) -> "RegionFamily":
        return cls(base_region=region.rotate(-region.base), b_rule=b)

    @classmethod
    def tabulated(cls, regions: Sequence[ApproachRegion], b=2) -> "RegionFamily":
        return cls(table=tuple(sorted(((r.base, r) for r in regions), key=lambda x: x[0])), b_rule=b)

    @property
    def kind(self) -> str:
        return "RotationInvariant" if self.base_region is not None else "Tabulated"

    def at(self, w: float) -> ApproachRegion:
        w = wrap_angle(float(w))
        if self.base_region is not None:
            return self.base_region.rotate(w)
        for base, region in self.table:
            if abs(float(np.mod(base - w + math.pi, TWO_PI) - math.pi)) <= 1e-12:
                return region
        raise KeyError(f"no tabulated region at angle {w!r}")

    def b_at(self, w: float) -> int:
        b = self.b_rule(w) if callable(self.b_rule) else self.b_rule
        return int(b)
