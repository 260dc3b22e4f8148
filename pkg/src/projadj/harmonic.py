"""Poisson integrals of arc-indicator data and related measurements."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import _kernels
from .arcs import FULL_CIRCLE, Arc, ArcUnion
from .geometry import TWO_PI, DiscPoint, _coords_of, dist2_boundary, wrap_angle, wrap_signed

DELTA_FLOOR = 1e-12


def _F(x, delta):
    """Normalized antiderivative of the Poisson kernel on x in [-pi, pi]."""
    return np.arctan2((2.0 - delta) * np.sin(0.5 * x), delta * np.cos(0.5 * x)) / math.pi


def _clamp(delta):
    delta = np.asarray(delta, dtype=float)
    return np.maximum(delta, DELTA_FLOOR), bool(np.any(delta < DELTA_FLOOR))


def _subtended(x1, length, delta):
    # (1/pi) arg(w(x1 + length) conj(w(x1))) with w(x) = delta cos(x/2) + i (2 - delta) sin(x/2);
    # the imaginary part is exact in the arc length, so small values keep full relative accuracy
    c1, s1 = np.cos(0.5 * x1), np.sin(0.5 * x1)
    x2 = x1 + length
    c2, s2 = np.cos(0.5 * x2), np.sin(0.5 * x2)
    im = (2.0 - delta) * delta * np.sin(0.5 * length)
    re = delta * delta * c1 * c2 + (2.0 - delta) ** 2 * s1 * s2
    return np.arctan2(im, re) / math.pi


def harmonic_measure_coords(start, length, theta, delta):
    """Harmonic measure of the arc (start, start+length) seen from (theta, delta)."""
    theta = np.asarray(theta, dtype=float)
    delta, _ = _clamp(delta)
    if length >= TWO_PI:
        return np.ones(np.broadcast(theta, delta).shape)
    x1 = wrap_signed(start - theta)
    return np.clip(_subtended(x1, length, delta), 0.0, 1.0)


def harmonic_measure_arc(z, arc) -> float:
    """``(1/2pi) * integral over arc of the Poisson kernel at z`` in closed form."""
    theta, delta = _coords_of(z)
    if arc is FULL_CIRCLE:
        return 1.0
    return float(harmonic_measure_coords(arc.start, arc.length, theta, delta))


def conjugate_arc_coords(start, length, theta, delta):
    """Harmonic conjugate of P(1_arc), normalized to vanish at the origin."""
    length = np.asarray(length, dtype=float)
    da = dist2_boundary(start, theta, delta)
    db = dist2_boundary(start + length, theta, delta)
    return np.where(length >= TWO_PI, 0.0, 0.5 * np.log(da / db) / math.pi)


@dataclass
class StepFunction:
    """Periodic piecewise-constant function on the circle.

    ``breaks`` are sorted angles in [0, 2pi); ``values[k]`` is the value on
    ``(breaks[k], breaks[k+1])`` (cyclically).  ``jumps[k] = values[k] - values[k-1]``.
    """

    breaks: np.ndarray
    values: np.ndarray
    constant: float = 0.0

    @property
    def jumps(self) -> np.ndarray:
        if self.breaks.size == 0:
            return np.zeros(0)
        return self.values - np.roll(self.values, 1)

    def __call__(self, t):
        t = wrap_angle(np.atleast_1d(np.asarray(t, dtype=float)).copy())
        if self.breaks.size == 0:
            return np.full(t.shape, self.constant)
        k = (np.searchsorted(self.breaks, t, side="right") - 1) % self.breaks.size
        return self.values[k]

    def _one_sided(self, t):
        """Values just before and just after each angle in ``t``."""
        n = self.breaks.size
        after = (np.searchsorted(self.breaks, t, side="right") - 1) % n
        before = (np.searchsorted(self.breaks, t, side="left") - 1) % n
        return self.values[before], self.values[after]

    def poisson(self, theta, delta):
        """Exact Poisson integral, O(#breaks) per point."""
        theta = wrap_angle(np.atleast_1d(np.asarray(theta, dtype=float)).copy())
        delta, _ = _clamp(np.atleast_1d(delta))
        theta, delta = np.broadcast_arrays(theta, delta)
        if self.breaks.size == 0:
            return np.full(theta.shape, self.constant)
        anti = wrap_angle(theta + math.pi)
        fb, fa = self._one_sided(anti)
        acc = _kernels.direct_sum(self.breaks, self.jumps, theta.ravel().copy(), delta.ravel().copy())
        return 0.5 * (fb + fa) - acc.reshape(theta.shape)

    def conjugate(self, theta, delta):
        theta = np.atleast_1d(np.asarray(theta, dtype=float))
        delta, _ = _clamp(np.atleast_1d(delta))
        if self.breaks.size == 0:
            return np.zeros(np.broadcast(theta, delta).shape)
        d2 = dist2_boundary(self.breaks[:, None], theta[None, :], delta[None, :])
        # v = sum_k J_k (1/pi) log|e^{i t_k} - z| + const, const fixed by v(0) = 0
        return (self.jumps[:, None] * 0.5 * np.log(d2)).sum(axis=0) / math.pi

    def tree(self, leaf: int = 32, order: int = 30, sep: float = 3.0) -> "PoissonTree":
        return PoissonTree(self, leaf, order, sep)

    def local(self, center: float, radius: float, order: int = 48) -> "LocalPoisson":
        return LocalPoisson(self, center, radius, order)


class PoissonTree:
    """Poisson integral of a step function with many breakpoints, O(log N) per point.

    Breakpoints are grouped into a binary tree of contiguous runs.  A run far
    from the query point (relative to its own size) contributes through a
    truncated Taylor series of ``log(e^{it} - z)`` about the run centre; nearby
    runs are summed exactly.  With separation ``sep`` the truncation error is
    below ``sep^-order`` times the total variation of the run.
    """

    def __init__(self, f: StepFunction, leaf: int = 32, order: int = 30, sep: float = 3.0):
        if sep <= 1.0:
            raise ValueError("separation ratio must exceed 1")
        self.f = f
        self.sep = float(sep)
        breaks = np.ascontiguousarray(f.breaks, dtype=float)
        jumps = np.ascontiguousarray(f.jumps, dtype=float)
        self._breaks, self._jumps = breaks, jumps
        if breaks.size:
            self._tree = _kernels.build_tree(breaks, jumps, int(leaf), int(order))

    def poisson(self, theta, delta):
        theta = wrap_angle(np.atleast_1d(np.asarray(theta, dtype=float)).copy())
        delta, _ = _clamp(np.atleast_1d(delta))
        theta, delta = np.broadcast_arrays(theta, delta)
        if self._breaks.size == 0:
            return np.full(theta.shape, self.f.constant)
        anti = wrap_angle(theta + math.pi)
        fb, fa = self.f._one_sided(anti)
        acc = _kernels.tree_sum(self._breaks, self._jumps, *self._tree,
                                np.ascontiguousarray(theta.ravel()), np.ascontiguousarray(delta.ravel()),
                                self.sep)
        return 0.5 * (fb + fa) - acc.reshape(theta.shape)

    __call__ = poisson


class LocalPoisson:
    """Fast exact-to-roundoff P(f) for points within ``radius`` of ``e^{i center}``.

    Breakpoints inside a window around the centre are summed directly; the
    rest enter through a Taylor expansion of the holomorphic extension, whose
    terms decay like 4^{-m}.
    """

    def __init__(self, f: StepFunction, center: float, radius: float, order: int = 48):
        self.f = f
        self.center = float(center)
        self.radius = float(radius)
        self.order = order
        if 4.0 * radius >= 1.9:
            self.window = math.pi
        else:
            self.window = 2.0 * math.asin(2.0 * radius)
        W = self.window
        n = f.breaks.size
        if n == 0 or W >= math.pi:
            self._direct = True
            return
        self._direct = False
        rel = wrap_signed(f.breaks - self.center)
        jumps = f.jumps
        near = np.abs(rel) < W
        self.near_off = np.ascontiguousarray(rel[near])
        self.near_jump = np.ascontiguousarray(jumps[near])
        far_off = np.mod(rel[~near], TWO_PI)
        far_jump = np.ascontiguousarray(jumps[~near])
        lo_b, lo_a = f._one_sided(np.array([wrap_angle(self.center - W)]))
        hi_b, hi_a = f._one_sided(np.array([wrap_angle(self.center + W)]))
        # window (−W, W): value just inside its ends
        self.near_lo_val, self.near_hi_val = float(lo_a[0]), float(hi_b[0])
        self.coef = _kernels.far_coefficients(
            np.ascontiguousarray(far_off), far_jump, W, float(hi_a[0]),
            TWO_PI - W, float(lo_b[0]), self.radius, order)

    def poisson(self, theta, delta):
        theta = np.atleast_1d(np.asarray(theta, dtype=float))
        delta, _ = _clamp(np.atleast_1d(delta))
        theta, delta = np.broadcast_arrays(theta, delta)
        if self._direct:
            return self.f.poisson(theta, delta)
        eta = wrap_signed(theta - self.center).ravel()
        d = delta.ravel()
        near = _kernels.near_sum(self.near_off, self.near_jump, np.ascontiguousarray(eta),
                                 np.ascontiguousarray(d), -self.window, self.near_lo_val,
                                 self.window, self.near_hi_val)
        # (z - w)/radius in the frame where w = 1
        half = 0.5 * eta
        zw = (2.0j * np.sin(half) * np.exp(1j * half) - d * np.exp(1j * eta)) / self.radius
        if np.any(np.abs(zw) > 1.0 + 1e-9):
            raise ValueError("point outside the expansion radius")
        far = _kernels.eval_series(self.coef, np.ascontiguousarray(zw))
        return (near + far).reshape(theta.shape)


@dataclass
class BoundaryIndicator:
    """``sum coeff * 1_support`` with arc-union supports."""

    terms: list = field(default_factory=list)

    def __post_init__(self):
        for c, _ in self.terms:
            if not math.isfinite(c):
                raise ValueError("coefficients must be finite")

    @classmethod
    def single(cls, support, coeff: float = 1.0) -> "BoundaryIndicator":
        if isinstance(support, Arc):
            support = ArcUnion.from_starts_lengths([support.start], [support.length])
        elif support is FULL_CIRCLE:
            support = ArcUnion.full_circle()
        return cls([(float(coeff), support)])

    def __add__(self, other: "BoundaryIndicator") -> "BoundaryIndicator":
        return BoundaryIndicator(self.terms + other.terms)

    def __call__(self, t):
        t = np.atleast_1d(np.asarray(t, dtype=float))
        out = np.zeros(t.shape)
        for c, s in self.terms:
            out += c * s.contains_angles(t)
        return out

    def _right_limit(self, x: float) -> float:
        # value on (x, x + eps); no probe point, so arbitrarily close breaks are safe
        total = 0.0
        for c, s in self.terms:
            if s.full:
                total += c
            elif s.lo.size:
                k = np.searchsorted(s.lo, x, side="right") - 1
                if k >= 0 and x < s.hi[k]:
                    total += c
        return total

    def step_function(self) -> StepFunction:
        brk, jmp = [], []
        constant = 0.0
        for c, s in self.terms:
            if s.full:
                constant += c
                continue
            brk += [s.lo, np.mod(s.hi, TWO_PI)]
            jmp += [np.full(s.lo.size, c), np.full(s.hi.size, -c)]
        if not brk:
            return StepFunction(np.zeros(0), np.zeros(0), constant)
        b = np.concatenate(brk)
        j = np.concatenate(jmp)
        order = np.argsort(b, kind="stable")
        b, j = b[order], j[order]
        ub, inv = np.unique(b, return_inverse=True)
        uj = np.bincount(inv, weights=j, minlength=ub.size)
        keep = np.flatnonzero(uj != 0.0)
        if keep.size == 0:
            return StepFunction(np.zeros(0), np.zeros(0), self._right_limit(0.0))
        ub, uj = ub[keep], uj[keep]
        vals = np.cumsum(uj)
        shift = self._right_limit(float(ub[0])) - vals[0]
        return StepFunction(ub, vals + shift, constant)


def poisson_eval(f: BoundaryIndicator, z) -> float:
    theta, delta = _coords_of(z)
    return float(sum(c * _hm_union(s, theta, delta) for c, s in f.terms))


def _hm_union(s: ArcUnion, theta, delta):
    if s.full:
        return np.ones(np.broadcast(np.asarray(theta), np.asarray(delta)).shape)
    if s.lo.size == 0:
        return np.zeros(np.broadcast(np.asarray(theta), np.asarray(delta)).shape)
    th = np.atleast_1d(theta)[None, :]
    de = np.atleast_1d(delta)[None, :]
    out = _hm_many(s.lo, s.hi - s.lo, th, de).sum(axis=0)
    return out if np.ndim(theta) else float(out[0])


def _hm_many(starts, lengths, th, de):
    de = np.maximum(de, DELTA_FLOOR)
    x1 = wrap_signed(starts[:, None] - th)
    return _subtended(x1, lengths[:, None], de)


def harmonic_measure_union(s: ArcUnion, z) -> float:
    theta, delta = _coords_of(z)
    return float(_hm_union(s, theta, delta))


def conjugate_eval(f: BoundaryIndicator, z) -> float:
    theta, delta = _coords_of(z)
    total = 0.0
    for c, s in f.terms:
        if s.full or s.lo.size == 0:
            continue
        total += c * float(np.sum(conjugate_arc_coords(s.lo, s.hi - s.lo, theta, delta)))
    return total


def holo_eval(f: BoundaryIndicator, z) -> complex:
    """``exp(-u - i v)`` with ``u = P(f)`` and ``v`` its conjugate (v(0) = 0)."""
    return complex(np.exp(-poisson_eval(f, z) - 1j * conjugate_eval(f, z)))


# -- tent constant ------------------------------------------------------------------

def tent_grid(theta: float, density: int) -> tuple[np.ndarray, np.ndarray]:
    """Nested polar grid over the tent above the arc of length theta centred at 1.

    Points are ``1 + s R e^{i phi}`` with ``s = k/density`` (k = 1..density-1) and
    ``phi`` on a grid of ``4 * density`` directions; doubling ``density`` gives
    a superset.
    """
    R = 2.0 * math.sin(theta / 4.0)
    s = np.arange(1, density) / density
    phi = np.pi / 2 + np.pi * np.arange(1, 4 * density) / (4 * density)
    z = 1.0 + R * s[:, None] * np.exp(1j * phi[None, :])
    z = z[np.abs(z) < 1.0]
    return np.angle(z), 1.0 - np.abs(z)


def tent_minimum(theta: float, density: int) -> float:
    th, de = tent_grid(theta, density)
    return float(harmonic_measure_coords(-theta / 2.0, theta, th, de).min())


def estimate_tent_constant(theta_ladder: Sequence[float] = (1e-3, 1e-2, 1e-1, 1.0),
                           grid_density: int = 256) -> dict:
    """Minimum of P(1_J) over sampled tent points, per arc length and overall."""
    per = {}
    for th in theta_ladder:
        if not (0.0 < th < TWO_PI):
            raise ValueError("ladder entries must lie in (0, 2pi)")
        per[float(th)] = tent_minimum(th, grid_density)
    return {"per_theta": per, "c0": min(per.values()), "grid_density": grid_density}


# -- oscillation along a region -----------------------------------------------------

@dataclass
class OscillationEstimate:
    ladder: list
    sup: list
    inf: list

    @property
    def osc(self) -> float:
        return self.sup[-1] - self.inf[-1]


def oscillation(u: Callable, region, ladder: Sequence[float], budget: int = 256) -> OscillationEstimate:
    """Sup and inf of ``u(theta, delta)`` over nested tail samples along ``ladder``."""
    from .regions import nested_tails

    tails = nested_tails(region, ladder, budget)
    sups, infs = [], []
    for th, de in tails:
        vals = np.asarray(u(th, de), dtype=float)
        sups.append(float(vals.max()))
        infs.append(float(vals.min()))
    return OscillationEstimate(list(map(float, ladder)), sups, infs)
