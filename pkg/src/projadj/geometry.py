"""Geometry of the closed unit disc.

Points inside the disc are carried in boundary coordinates ``(theta, delta)``
with ``z = (1 - delta) * exp(i * theta)``.  Keeping ``delta`` explicit avoids
the cancellation in ``1 - |z|`` for points very close to the circle, which is
where every interesting approach region lives.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * math.pi

CHORD_LOWER = 3.0 / 64.0
CHORD_UPPER = 125.0 / 64.0
CHORD_BOX = 0.25


class DomainError(ValueError):
    """Raised when an argument lies outside the set an operation is defined on."""


def wrap_angle(t):
    """Reduce angles to [0, 2pi)."""
    r = np.mod(t, TWO_PI)
    if np.ndim(r) == 0:
        r = float(r)
        return 0.0 if r >= TWO_PI else r
    r[r >= TWO_PI] = 0.0
    return r


def wrap_signed(t):
    """Reduce angles to [-pi, pi); angles already in range are returned unchanged."""
    t = np.asarray(t, dtype=float)
    # shifting by pi first would cost ~4e-16 absolute on tiny offsets
    r = np.where((t >= -math.pi) & (t < math.pi), t, np.mod(t + math.pi, TWO_PI) - math.pi)
    return r[()]


@dataclass(frozen=True)
class BoundaryPoint:
    angle: float

    def __post_init__(self):
        object.__setattr__(self, "angle", wrap_angle(float(self.angle)))

    @property
    def z(self) -> complex:
        return complex(math.cos(self.angle), math.sin(self.angle))

    @classmethod
    def from_complex(cls, u: complex) -> "BoundaryPoint":
        return cls(math.atan2(u.imag, u.real))

    def rotate(self, alpha: float) -> "BoundaryPoint":
        return BoundaryPoint(self.angle + alpha)


@dataclass(frozen=True)
class DiscPoint:
    """A point of the open disc stored in boundary coordinates."""

    theta: float
    delta: float

    def __post_init__(self):
        if not (0.0 < self.delta <= 1.0):
            raise DomainError(f"delta={self.delta!r} is not in (0, 1]; point not inside the disc")
        object.__setattr__(self, "theta", wrap_angle(float(self.theta)))

    @property
    def z(self) -> complex:
        rho = 1.0 - self.delta
        return complex(rho * math.cos(self.theta), rho * math.sin(self.theta))

    @property
    def re(self) -> float:
        return self.z.real

    @property
    def im(self) -> float:
        return self.z.imag

    @classmethod
    def from_complex(cls, z: complex) -> "DiscPoint":
        rho = abs(z)
        if rho >= 1.0:
            raise DomainError(f"|z|={rho!r} >= 1")
        theta = math.atan2(z.imag, z.real) if rho > 0 else 0.0
        return cls(theta, 1.0 - rho)

    def rotate(self, alpha: float) -> "DiscPoint":
        return DiscPoint(self.theta + alpha, self.delta)


def _angle_of(w) -> float:
    if isinstance(w, BoundaryPoint):
        return w.angle
    if isinstance(w, complex):
        return math.atan2(w.imag, w.real)
    return float(w)


def _coords_of(z) -> tuple[float, float]:
    if isinstance(z, DiscPoint):
        return z.theta, z.delta
    if isinstance(z, (complex, float, int)) and not isinstance(z, bool):
        z = complex(z)
        rho = abs(z)
        if rho >= 1.0:
            raise DomainError(f"|z|={rho!r} >= 1; point is not inside the open disc")
        return (math.atan2(z.imag, z.real) if rho > 0 else 0.0), 1.0 - rho
    theta, delta = z
    return float(theta), float(delta)


def boundary_coords(z) -> tuple[float, float]:
    """Return ``(theta, delta)`` with ``z = (1 - delta) e^{i theta}``."""
    if isinstance(z, DiscPoint):
        return z.theta, z.delta
    z = complex(z)
    rho = abs(z)
    theta = math.atan2(z.imag, z.real) if rho > 0 else 0.0
    return theta, 1.0 - rho


def from_boundary_coords(theta, delta):
    theta = np.asarray(theta, dtype=float)
    return (1.0 - np.asarray(delta, dtype=float)) * np.exp(1j * theta)


def dist2_boundary(alpha, theta, delta):
    """Squared distance between ``e^{i alpha}`` and ``(1 - delta) e^{i theta}``.

    Written as ``delta^2 + 4 (1 - delta) sin^2((alpha - theta)/2)``, which stays
    accurate when both terms are tiny.
    """
    s = np.sin(0.5 * (np.asarray(alpha, dtype=float) - np.asarray(theta, dtype=float)))
    delta = np.asarray(delta, dtype=float)
    return delta * delta + 4.0 * (1.0 - delta) * s * s


def tau_coords(alpha, theta, delta):
    """Vectorized normalized distance to the boundary, points in boundary coordinates."""
    delta = np.asarray(delta, dtype=float)
    if np.any(delta <= 0) or np.any(delta > 1):
        raise DomainError("points must satisfy 0 < delta <= 1")
    return delta / np.sqrt(dist2_boundary(alpha, theta, delta))


def tau(w, z) -> float:
    """``(1 - |z|) / |w - z|`` for ``w`` on the circle and ``z`` in the open disc."""
    theta, delta = _coords_of(z)
    if not (0.0 < delta <= 1.0):
        raise DomainError("z must lie strictly inside the unit disc")
    return float(tau_coords(_angle_of(w), theta, delta))


def chord_bounds(p1, p2) -> tuple[float, float, float]:
    """Sandwich ``(3/64) d^2 <= |p(p1) - p(p2)|^2 <= (125/64) d^2`` on the box S."""
    (t1, d1), (t2, d2) = p1, p2
    for t, d in (p1, p2):
        if abs(t) >= CHORD_BOX or abs(d) >= CHORD_BOX:
            raise DomainError(f"({t}, {d}) is outside S = (-1/4, 1/4)^2")
    dist2 = (t1 - t2) ** 2 + (d1 - d2) ** 2
    s = math.sin(0.5 * (t1 - t2))
    chord2 = (d1 - d2) ** 2 + 4.0 * (1.0 - d1) * (1.0 - d2) * s * s
    return CHORD_LOWER * dist2, chord2, CHORD_UPPER * dist2


def chord_bounds_array(t1, d1, t2, d2):
    """Vectorized ``chord_bounds`` without the domain check."""
    dist2 = (t1 - t2) ** 2 + (d1 - d2) ** 2
    s = np.sin(0.5 * (t1 - t2))
    chord2 = (d1 - d2) ** 2 + 4.0 * (1.0 - d1) * (1.0 - d2) * s * s
    return CHORD_LOWER * dist2, chord2, CHORD_UPPER * dist2


def stolz_contains(b: int, w, z) -> bool:
    """Membership of ``z`` in the Stolz region of aperture ``b`` at ``w``.

    For ``b = 0`` the region is the open radius ending at ``w``.
    """
    theta, delta = _coords_of(z)
    alpha = _angle_of(w)
    if b == 0:
        if delta == 1.0:
            return True
        return abs(float(wrap_signed(theta - alpha))) == 0.0
    d2 = float(dist2_boundary(alpha, theta, delta))
    return d2 < ((1 + b) * delta) ** 2


def shadow_halfwidth(b: int, delta):
    """Half-width of the arc ``dD ∩ B(z, (1+b)(1-|z|))`` centred at ``arg z``.

    Returns ``inf`` where the whole circle is covered.  Vectorized in ``delta``.
    """
    if b < 1:
        raise DomainError("shadows need b >= 1")
    delta = np.asarray(delta, dtype=float)
    rho = 1.0 - delta
    R = (1 + b) * delta
    with np.errstate(divide="ignore", invalid="ignore"):
        # |u - z|^2 = delta^2 + 4 rho sin^2(x/2); solve for sin^2 directly, no cancellation
        s2 = (R - delta) * (R + delta) / (4.0 * rho)
        hw = 2.0 * np.arcsin(np.sqrt(np.clip(s2, 0.0, 1.0)))
    return np.where((rho <= 0) | (s2 >= 1.0), np.inf, hw)


def point_shadow(b: int, z):
    """Boundary points whose ``b``-Stolz region contains ``z``.

    Returns an :class:`~projadj.arcs.Arc` or :data:`~projadj.arcs.FULL_CIRCLE`.
    """
    from .arcs import FULL_CIRCLE, Arc

    if b < 1:
        raise DomainError("point_shadow requires b >= 1; use stolz_contains for b = 0")
    theta, delta = _coords_of(z)
    hw = float(shadow_halfwidth(b, delta))
    if not math.isfinite(hw) or hw >= math.pi:
        return FULL_CIRCLE
    return Arc(theta - hw, 2.0 * hw)


@dataclass(frozen=True)
class Tent:
    """Carleson tent: the part of the disc inside ``B(y, |y - y e^{i theta/2}|)``."""

    center: float
    base_length: float

    @property
    def radius(self) -> float:
        return 2.0 * math.sin(self.base_length / 4.0)

    @property
    def base(self):
        from .arcs import Arc

        return Arc(self.center - self.base_length / 2.0, self.base_length)

    def contains(self, z) -> bool:
        theta, delta = _coords_of(z)
        if not (0.0 < delta <= 1.0):
            return False
        return float(dist2_boundary(self.center, theta, delta)) < self.radius ** 2

    def contains_coords(self, theta, delta):
        return dist2_boundary(self.center, theta, delta) < self.radius ** 2


def tent_of(arc) -> Tent:
    """Tent above a centred arc; accepts an Arc or a ``(center, length)`` pair."""
    if isinstance(arc, tuple):
        c, length = arc
    else:
        c, length = arc.start + arc.length / 2.0, arc.length
    if not (0.0 < length <= TWO_PI):
        raise DomainError("arc length must lie in (0, 2pi]")
    return Tent(wrap_angle(c), float(length))


def tent_contains(t: Tent, z) -> bool:
    return t.contains(z)
