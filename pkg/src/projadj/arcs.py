"""Open circular arcs and finite unions of them.

An :class:`ArcUnion` keeps its components as sorted, disjoint open intervals
of ``[0, 2pi]``.  A component crossing the angle seam is stored as two pieces
(one ending at 2pi, one starting at 0) and rejoined only when reported.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .geometry import TWO_PI, wrap_angle

MERGE_TOL = 1e-12


@dataclass(frozen=True)
class Arc:
    """``{e^{i(start + t)} : 0 < t < length}``, endpoints excluded."""

    start: float
    length: float

    def __post_init__(self):
        if not (0.0 < self.length <= TWO_PI):
            raise ValueError(f"arc length {self.length!r} not in (0, 2pi]")
        object.__setattr__(self, "start", wrap_angle(float(self.start)))

    @classmethod
    def centered(cls, center: float, length: float) -> "Arc":
        return cls(center - length / 2.0, length)

    @property
    def end(self) -> float:
        return self.start + self.length

    @property
    def center(self) -> float:
        return wrap_angle(self.start + self.length / 2.0)

    def contains(self, u) -> bool:
        t = (wrap_angle(_angle(u)) - self.start) % TWO_PI
        return 0.0 < t < self.length

    def rotate(self, alpha: float) -> "Arc":
        return Arc(self.start + alpha, self.length)


class _FullCircle:
    """Sentinel for the whole circle (distinct from a length-2pi arc)."""

    length = TWO_PI

    def contains(self, u) -> bool:
        return True

    def __repr__(self):
        return "FULL_CIRCLE"


FULL_CIRCLE = _FullCircle()


def _angle(u) -> float:
    if isinstance(u, complex):
        return math.atan2(u.imag, u.real)
    if hasattr(u, "angle"):
        return float(u.angle)
    return float(u)


def _merge(lo: np.ndarray, hi: np.ndarray, tol: float) -> tuple[np.ndarray, np.ndarray]:
    if lo.size == 0:
        return lo, hi
    order = np.argsort(lo, kind="stable")
    lo, hi = lo[order], hi[order]
    run_hi = np.maximum.accumulate(hi)
    # a new component starts wherever the gap to everything before exceeds tol
    starts = np.empty(lo.size, dtype=bool)
    starts[0] = True
    starts[1:] = lo[1:] > run_hi[:-1] + tol
    idx = np.flatnonzero(starts)
    new_lo = lo[idx]
    ends = np.append(idx[1:], lo.size) - 1
    new_hi = run_hi[ends]
    return new_lo, new_hi


class ArcUnion:
    """A finite union of open arcs (or the full circle)."""

    __slots__ = ("lo", "hi", "full")

    def __init__(self, lo=(), hi=(), full: bool = False, *, _normalized: bool = False):
        lo = np.asarray(lo, dtype=float)
        hi = np.asarray(hi, dtype=float)
        if full:
            self.lo, self.hi, self.full = np.array([0.0]), np.array([TWO_PI]), True
            return
        if not _normalized:
            lo, hi = _split_and_merge(lo, hi - lo)
        self.lo, self.hi = lo, hi
        self.full = bool(lo.size == 1 and lo[0] <= MERGE_TOL and hi[0] >= TWO_PI - MERGE_TOL)
        if self.full:
            self.lo, self.hi = np.array([0.0]), np.array([TWO_PI])

    # construction -----------------------------------------------------------------
    @classmethod
    def empty(cls) -> "ArcUnion":
        return cls(_normalized=True)

    @classmethod
    def full_circle(cls) -> "ArcUnion":
        return cls(full=True)

    @classmethod
    def from_starts_lengths(cls, starts, lengths) -> "ArcUnion":
        starts = np.asarray(starts, dtype=float)
        lengths = np.asarray(lengths, dtype=float)
        if lengths.size and (np.any(lengths <= 0) or np.any(lengths > TWO_PI)):
            raise ValueError("arc lengths must lie in (0, 2pi]")
        lo, hi = _split_and_merge(starts, lengths)
        return cls(lo, hi, _normalized=True)

    @classmethod
    def from_centers(cls, centers, length) -> "ArcUnion":
        centers = np.asarray(centers, dtype=float)
        lengths = np.broadcast_to(np.asarray(length, dtype=float), centers.shape)
        return cls.from_starts_lengths(centers - lengths / 2.0, lengths)

    # reporting --------------------------------------------------------------------
    def components(self) -> list:
        """Components as :class:`Arc` objects, seam-crossing pieces rejoined."""
        if self.full:
            return [FULL_CIRCLE]
        starts, lengths = self.starts_lengths()
        return [Arc(float(s), float(l)) for s, l in zip(starts, lengths)]

    def starts_lengths(self) -> tuple[np.ndarray, np.ndarray]:
        lo, hi = self.lo, self.hi
        if self.full:
            return np.array([0.0]), np.array([TWO_PI])
        if lo.size >= 2 and lo[0] <= 0.0 and hi[-1] >= TWO_PI:
            starts = np.concatenate([lo[1:-1], [lo[-1]]])
            lengths = np.concatenate([hi[1:-1] - lo[1:-1], [(TWO_PI - lo[-1]) + hi[0]]])
            return starts, lengths
        return lo.copy(), hi - lo

    def __len__(self) -> int:
        return len(self.starts_lengths()[0]) if not self.full else 1

    def __repr__(self):
        if self.full:
            return "ArcUnion(full)"
        return f"ArcUnion({len(self)} components, measure={self.measure():.6g})"

    def __eq__(self, other):
        if not isinstance(other, ArcUnion):
            return NotImplemented
        return (self.full == other.full and self.lo.shape == other.lo.shape
                and np.array_equal(self.lo, other.lo) and np.array_equal(self.hi, other.hi))

    # queries ----------------------------------------------------------------------
    def is_empty(self) -> bool:
        return self.lo.size == 0

    def measure(self) -> float:
        if self.full:
            return TWO_PI
        return math.fsum((self.hi - self.lo).tolist())

    def contains(self, u) -> bool:
        return bool(self.contains_angles(np.array([_angle(u)]))[0])

    def contains_angles(self, t) -> np.ndarray:
        t = wrap_angle(np.atleast_1d(np.asarray(t, dtype=float)).copy())
        if self.full:
            return np.ones(t.shape, dtype=bool)
        if self.lo.size == 0:
            return np.zeros(t.shape, dtype=bool)
        k = np.searchsorted(self.lo, t, side="left") - 1
        ok = k >= 0
        kk = np.where(ok, k, 0)
        inside = ok & (t > self.lo[kk]) & (t < self.hi[kk])
        if self.lo[0] <= 0.0 and self.hi[-1] >= TWO_PI:
            # angle 0 is interior to a component that crosses the seam
            inside |= t == 0.0
        return inside

    def distance_to_boundary(self, t) -> np.ndarray:
        """Angular distance from each ``t`` to the nearest endpoint of a component."""
        t = wrap_angle(np.atleast_1d(np.asarray(t, dtype=float)).copy())
        if self.full or self.lo.size == 0:
            return np.full(t.shape, np.inf)
        s, l = self.starts_lengths()
        ends = np.sort(wrap_angle(np.concatenate([s, s + l])))
        k = np.searchsorted(ends, t)
        left = ends[(k - 1) % ends.size]
        right = ends[k % ends.size]
        return np.minimum((t - left) % TWO_PI, (right - t) % TWO_PI)

    def subset_of(self, other: "ArcUnion", tol: float = 1e-12) -> bool:
        """Containment up to ``tol`` in the endpoints."""
        if other.full:
            return True
        if self.full:
            return False
        if self.lo.size == 0:
            return True
        if other.lo.size == 0:
            return False
        k = np.searchsorted(other.lo, self.lo + tol, side="right") - 1
        if np.any(k < 0):
            return False
        return bool(np.all(other.hi[k] >= self.hi - tol))

    # set algebra ------------------------------------------------------------------
    def union(self, other: "ArcUnion") -> "ArcUnion":
        if self.full or other.full:
            return ArcUnion.full_circle()
        lo = np.concatenate([self.lo, other.lo])
        hi = np.concatenate([self.hi, other.hi])
        lo, hi = _merge(lo, hi, MERGE_TOL)
        return ArcUnion(lo, hi, _normalized=True)

    __or__ = union

    def complement(self) -> "ArcUnion":
        """Open complement; endpoints themselves are dropped (measure zero)."""
        if self.full:
            return ArcUnion.empty()
        if self.lo.size == 0:
            return ArcUnion.full_circle()
        edges_lo = np.concatenate([[0.0], self.hi])
        edges_hi = np.concatenate([self.lo, [TWO_PI]])
        keep = edges_hi - edges_lo > MERGE_TOL
        return ArcUnion(edges_lo[keep], edges_hi[keep], _normalized=True)

    def intersect(self, other: "ArcUnion") -> "ArcUnion":
        return self.complement().union(other.complement()).complement()

    def intersect_arc(self, arc: Arc) -> "ArcUnion":
        return self.intersect(ArcUnion.from_starts_lengths([arc.start], [arc.length]))

    def rotate(self, alpha: float) -> "ArcUnion":
        if self.full:
            return self
        s, l = self.starts_lengths()
        return ArcUnion.from_starts_lengths(s + alpha, l)

    def to_lists(self) -> list[list[float]]:
        s, l = self.starts_lengths()
        return [[float(a), float(b)] for a, b in zip(s, l)]


def _split_and_merge(starts: np.ndarray, lengths: np.ndarray):
    starts = wrap_angle(np.asarray(starts, dtype=float).copy()) if starts.size else starts
    ends = starts + lengths
    wrap = ends > TWO_PI
    lo = np.concatenate([starts, np.zeros(int(wrap.sum()))])
    hi = np.concatenate([np.minimum(ends, TWO_PI), ends[wrap] - TWO_PI])
    full_arcs = lengths >= TWO_PI
    lo, hi = _merge(lo, hi, MERGE_TOL)
    if np.any(full_arcs) or (lo.size == 1 and lo[0] <= MERGE_TOL and hi[0] >= TWO_PI - MERGE_TOL):
        return np.array([0.0]), np.array([TWO_PI])
    return lo, hi


def normalize(arcs: Iterable) -> ArcUnion:
    """Union of a list of :class:`Arc` (or ``FULL_CIRCLE``) as an ArcUnion."""
    arcs = list(arcs)
    if any(a is FULL_CIRCLE for a in arcs):
        return ArcUnion.full_circle()
    if not arcs:
        return ArcUnion.empty()
    return ArcUnion.from_starts_lengths([a.start for a in arcs], [a.length for a in arcs])


def measure(u: ArcUnion) -> float:
    return u.measure()


def contains(u: ArcUnion, point) -> bool:
    return u.contains(point)


def union(a: ArcUnion, b: ArcUnion) -> ArcUnion:
    return a.union(b)


def complement_components(u: ArcUnion) -> ArcUnion:
    return u.complement()


def union_all(parts: Sequence[ArcUnion]) -> ArcUnion:
    if any(p.full for p in parts):
        return ArcUnion.full_circle()
    if not parts:
        return ArcUnion.empty()
    lo = np.concatenate([p.lo for p in parts])
    hi = np.concatenate([p.hi for p in parts])
    lo, hi = _merge(lo, hi, MERGE_TOL)
    return ArcUnion(lo, hi, _normalized=True)
