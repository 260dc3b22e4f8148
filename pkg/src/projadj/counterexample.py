"""Desk-scale construction of a bounded function whose Poisson extension
oscillates along a tangential approach family, and its numerical verification.

Pipeline: gauge the tangency of the family, pick a rapidly increasing lattice
sequence ``phi`` level by level, build the open sets ``V_j`` from arcs centred
at roots of unity, sum their indicators with geometric weights, then sample
oscillation of the Poisson extension along each region and, as a control,
along a Stolz region at the same point.
"""

from __future__ import annotations

import hashlib
import logging
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .adjacency import WITNESS_FOUND, boundary_grid, regularity_probe, test_projective_adjacency
from .arcs import ArcUnion, union_all
from .geometry import TWO_PI, BoundaryPoint, Tent, wrap_angle, wrap_signed
from .harmonic import BoundaryIndicator, estimate_tent_constant, holo_eval, poisson_eval
from .regions import RegionError, RegionFamily

log = logging.getLogger(__name__)

EGOROV_C = math.sqrt(3.0 / 64.0)
GAUGE_WINDOW = 1.1
PHI_SEARCH_LIMIT = 2 ** 40
ZYGMUND_LADDER = tuple(2.0 ** -k for k in range(3, 17))
TAIL_LADDER = tuple(2.0 ** -k for k in range(3, 17))
GATE_LADDER = tuple(2.0 ** -k for k in range(3, 11))
FATOU_STEPS = tuple(range(4, 21))
FATOU_TAU = 0.75
FATOU_LIMIT = 0.05
OSC_SLACK = 0.2
ARC_LIMIT = 100_000


class HypothesisError(RuntimeError):
    """A hypothesis of the construction fails for the supplied family."""

    def __init__(self, hypothesis: str, detail: str):
        super().__init__(f"hypothesis {hypothesis} violated: {detail}")
        self.hypothesis = hypothesis
        self.detail = detail


# -- level sequences ------------------------------------------------------------------

def v_sequence(j: int) -> int:
    """Block enumeration 2,3 | 2,3,4 | 2,3,4,5 | ...: every integer >= 2 recurs forever."""
    if j < 1:
        raise ValueError("level index starts at 1")
    # block m (m >= 1) holds m + 1 entries and starts after (m - 1)(m + 2)/2 of them
    m = 1
    while (m * (m + 3)) // 2 < j:
        m += 1
    return 2 + (j - 1 - ((m - 1) * (m + 2)) // 2)


def tangency_gauge(family: RegionFamily, w: float, j: int, budget: int = 256) -> float:
    """Sampled sup of the normalized distance over the region at ``w`` within ``1.1 * 2pi / j``."""
    if j < 1:
        raise ValueError("gauge index starts at 1")
    region = family.at(w)
    r = min(GAUGE_WINDOW * TWO_PI / j, region.r_max)
    try:
        pts = region.sample_tail(r, budget)
    except RegionError:
        return 0.0
    return float(region.tau(pts).max())


def egorov_threshold(j: int, c: float = EGOROV_C) -> float:
    return c * (10.0 / 22.0) * 2.0 ** -j / v_sequence(j)


def _family_points(family: RegionFamily, grid: int) -> np.ndarray:
    if family.base_region is not None:
        return np.array([0.0])
    return np.array([base for base, _ in family.table])


def select_phi(family: RegionFamily, grid: int, j: int, c: float = EGOROV_C, prior: int = 0,
               budget: int = 256, limit: int = PHI_SEARCH_LIMIT) -> int:
    """Smallest ``n > max(j, prior)`` whose gauge is below the level-``j`` threshold on the grid.

    A rotation-invariant family has one gauge for all ``w``; a tabulated family
    is checked at every tabulated angle.
    """
    thr = egorov_threshold(j, c)
    ws = _family_points(family, grid)

    def sup_gauge(n: int) -> float:
        return max(tangency_gauge(family, w, n, budget) for w in ws)

    lo = max(j, prior)
    hi = lo + 1
    while sup_gauge(hi) >= thr:
        if hi > limit:
            raise HypothesisError("(t)", f"gauge stays above {thr:.3g} up to index {limit} at level {j}")
        lo, hi = hi, 2 * hi
    # invariant: gauge(lo) >= thr or lo is the excluded floor; gauge(hi) < thr
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if sup_gauge(mid) < thr:
            hi = mid
        else:
            lo = mid
    return hi


# -- lattices and open sets -----------------------------------------------------------

def build_lattice(n: int) -> list:
    """The ``n``-th roots of unity."""
    if n < 1:
        raise ValueError("lattice size must be >= 1")
    return [BoundaryPoint(TWO_PI * k / n) for k in range(n)]


def build_O(n: int, phi_n: int) -> ArcUnion:
    """Arcs of length ``2^-n 2pi / phi_n`` centred at the ``phi_n``-th roots of unity."""
    if n < 1 or phi_n < 1:
        raise ValueError("level and lattice size must be >= 1")
    length = TWO_PI * 2.0 ** -n / phi_n
    centers = TWO_PI * np.arange(phi_n) / phi_n
    starts = centers - 0.5 * length
    # lengths are multiples of the ulp on [4, 8), so start + length is exact, and
    # their rounding errors are carried forward so the total stays within one ulp
    u = 2.0 ** -50
    cum = np.round(np.arange(1, phi_n + 1) * length / u)
    lengths = np.diff(cum, prepend=0.0) * u
    return ArcUnion.from_starts_lengths(starts, lengths)


def build_V(j: int, phi: Sequence[int], K: int) -> ArcUnion:
    """``O_j | O_{j+1} | ... | O_K``; ``phi[k - 1]`` is the lattice size at level k."""
    if not (1 <= j <= K) or len(phi) < K:
        raise ValueError("need 1 <= j <= K and phi defined up to K")
    return union_all([build_O(k, phi[k - 1]) for k in range(j, K + 1)])


def build_V_all(phi: Sequence[int], K: int) -> list:
    """``[V_1, ..., V_K]`` built from the top level down."""
    out = [None] * K
    acc = ArcUnion.empty()
    for k in range(K, 0, -1):
        acc = acc | build_O(k, phi[k - 1])
        out[k - 1] = acc
    return out


# -- tent hits and the Zygmund condition ----------------------------------------------

class ComponentIndex:
    """Components of an arc union, searchable by angle (three unrolled copies for the seam)."""

    def __init__(self, V: ArcUnion):
        s, l = V.starts_lengths()
        self.full = V.full
        self.max_len = float(l.max()) if l.size else 0.0
        self.s = np.concatenate([s - TWO_PI, s, s + TWO_PI])
        self.l = np.concatenate([l, l, l])

    def near(self, w: float, half: float) -> tuple[np.ndarray, np.ndarray]:
        """Components meeting ``(w - half, w + half)``, in coordinates relative to ``w``."""
        i0 = np.searchsorted(self.s, w - half - self.max_len, side="left")
        i1 = np.searchsorted(self.s, w + half, side="left")
        a = self.s[i0:i1] - w
        b = a + self.l[i0:i1]
        keep = (b > -half) & (a < half)
        return a[keep], b[keep]


def tent_hits(region, index: ComponentIndex, eps: float, cap: int = 256, first_only: bool = False):
    """Region points lying in the tent of some arc inside ``V`` and inside ``B(w, eps)``.

    Returns ``(theta, delta, extent)`` where ``extent`` is the chord from ``w``
    to the far end of the witnessing arc.  The witness for a point over a
    component is the centred arc just wide enough for its tent to contain it.
    With ``first_only`` the scan runs outward from ``w`` and stops at the first hit.
    """
    w = region.base
    half = 2.0 * math.asin(min(eps / 2.0, 1.0))
    a, b = index.near(w, half)
    a, b = np.maximum(a, -half), np.minimum(b, half)
    order = np.argsort(np.minimum(np.abs(a), np.abs(b)), kind="stable")
    out_t, out_d, out_e = [], [], []
    for lo, hi in zip(a[order], b[order]):
        if lo < 0.0 < hi:
            continue
        mid = 0.5 * (lo + hi)
        R = 2.0 * math.sin((hi - lo) / 4.0)
        th, de = region.points_in_disc(w + mid, 2.0 * R, cap)
        if th.size == 0:
            continue
        t = wrap_signed(th - w)
        m = np.minimum(t - lo, hi - t)
        need = 2.0 * np.arcsin(np.minimum(de / 2.0, 1.0))
        ok = (m > 0) & (need < m)
        if not ok.any():
            continue
        hw = 0.5 * (need[ok] + m[ok])
        extent = 2.0 * np.sin(np.minimum(np.abs(t[ok]) + hw, math.pi) / 2.0)
        inside = extent < eps
        out_t.append(th[ok][inside])
        out_d.append(de[ok][inside])
        out_e.append(extent[inside])
        if first_only and inside.any():
            break
    if not out_t:
        return np.zeros(0), np.zeros(0), np.zeros(0)
    return np.concatenate(out_t), np.concatenate(out_d), np.concatenate(out_e)


def zygmund_member(family: RegionFamily, V: ArcUnion, w: float,
                   eps_ladder: Sequence[float] = ZYGMUND_LADDER, index: ComponentIndex | None = None,
                   cap: int = 256) -> bool:
    """Whether ``w`` lies outside ``V`` and the region at ``w`` meets tents of arcs of ``V`` near ``w``.

    Checked at every ladder radius; a hit at the smallest radius serves all
    larger ones, so only that radius is scanned.  One-sided: a finite ladder.
    """
    eps_ladder = [float(e) for e in eps_ladder]
    if any(b >= a for a, b in zip(eps_ladder, eps_ladder[1:])):
        raise ValueError("epsilon ladder must be strictly decreasing")
    if V.full or V.contains_angles(np.array([w]))[0]:
        return False
    if V.is_empty():
        return False
    index = index if index is not None else ComponentIndex(V)
    region = family.at(w)
    th, _, _ = tent_hits(region, index, eps_ladder[-1], cap, first_only=True)
    return bool(th.size)


# -- configuration and artifact -------------------------------------------------------

@dataclass
class CounterexampleConfig:
    family: RegionFamily
    levels: int = 5
    truncation: int = 12
    grid: int = 4096
    c: float = EGOROV_C
    tail_ladder: tuple = TAIL_LADDER
    tail_budget: int = 16
    gauge_budget: int = 256
    hit_cap: int = 256
    fatou_steps: tuple = FATOU_STEPS
    slack: float = OSC_SLACK
    gate_points: int = 8
    gate_ladder: tuple = GATE_LADDER
    tent_density: int = 256
    arc_limit: int = ARC_LIMIT
    full_arcs: bool = False
    family_spec: str = "custom"

    def __post_init__(self):
        for name in ("levels", "truncation", "grid", "tail_budget", "gauge_budget", "hit_cap",
                     "gate_points", "tent_density"):
            if int(getattr(self, name)) < 1:
                raise ValueError(f"{name} must be a positive integer")
        if self.levels > self.truncation:
            raise ValueError("levels must not exceed truncation")
        if not (self.c > 0):
            raise ValueError("Egorov constant must be positive")
        if not (0.0 <= self.slack < 1.0):
            raise ValueError("slack must lie in [0, 1)")

    def to_dict(self) -> dict:
        return {
            "family": self.family_spec, "b": self.family.b_at(0.0), "levels": self.levels, "truncation": self.truncation,
            "grid": self.grid, "c": self.c, "tail_ladder": list(map(float, self.tail_ladder)),
            "tail_budget": self.tail_budget, "gauge_budget": self.gauge_budget,
            "hit_cap": self.hit_cap, "fatou_steps": list(self.fatou_steps), "slack": self.slack,
            "gate_points": self.gate_points, "gate_ladder": list(map(float, self.gate_ladder)),
            "tent_density": self.tent_density, "arc_limit": self.arc_limit,
            "full_arcs": self.full_arcs,
        }


@dataclass
class OscillationRow:
    w: float
    level: int
    osc: float
    bound: float
    passed: bool
    n_points: int
    n_hits: int
    fatou_osc: float
    edge_distance: float
    fatou_excluded: bool
    fatou_passed: bool

    def to_dict(self) -> dict:
        return {"w": self.w, "j": self.level, "osc": self.osc, "bound": self.bound, "pass": self.passed,
                "n_points": self.n_points, "n_hits": self.n_hits, "fatou_osc": self.fatou_osc,
                "edge_distance": self.edge_distance, "fatou_excluded": self.fatou_excluded,
                "fatou_pass": self.fatou_passed}


@dataclass
class OscillationReport:
    rows: list
    pass_rate: float
    fatou_rate: float
    n_sampled: int
    n_fatou: int
    n_fatou_literal: int
    fatou_rate_literal: float
    exclusion_radius: float
    tail_radius: float

    def to_dict(self) -> dict:
        return {"tail_radius": self.tail_radius, "pass_rate": self.pass_rate, "fatou_rate": self.fatou_rate, "n_sampled": self.n_sampled,
                "n_fatou": self.n_fatou, "n_fatou_literal": self.n_fatou_literal,
                "fatou_rate_literal": self.fatou_rate_literal,
                "exclusion_radius": self.exclusion_radius,
                "rows": [r.to_dict() for r in self.rows]}


def _arcs_digest(V: ArcUnion) -> str:
    h = hashlib.sha256()
    h.update(np.ascontiguousarray(V.lo, dtype="<f8").tobytes())
    h.update(np.ascontiguousarray(V.hi, dtype="<f8").tobytes())
    return h.hexdigest()


@dataclass
class CounterexampleArtifact:
    config: CounterexampleConfig
    phi: list
    v: list
    c0: float
    s: float
    V: list
    f: BoundaryIndicator
    resolution_guard_met: bool
    gate: dict = field(default_factory=dict)
    table: OscillationReport | None = None
    _tree: object = field(default=None, repr=False)

    @property
    def J(self) -> int:
        return self.config.levels

    @property
    def K(self) -> int:
        return self.config.truncation

    def level_bound(self, j: int) -> float:
        """``s^-j c0^2 / (1 + c0)``, equal to ``s^-j (c0 - 1/(s - 1))``."""
        return self.s ** -j * self.c0 ** 2 / (1.0 + self.c0)

    def tree(self):
        if self._tree is None:
            self._tree = self.f.step_function().tree()
        return self._tree

    def u(self, theta, delta):
        """Poisson extension of ``f`` at boundary coordinates."""
        return self.tree()(theta, delta)

    def h(self, z) -> complex:
        return holo_eval(self.f, z)

    def first_escape(self, w) -> np.ndarray:
        """Smallest level ``n <= J`` with ``w`` outside ``V_n`` (``J + 1`` if inside ``V_J``)."""
        w = np.atleast_1d(np.asarray(w, dtype=float))
        out = np.full(w.shape, self.J + 1, dtype=np.int64)
        for n in range(self.J, 0, -1):
            out[~self.V[n - 1].contains_angles(w)] = n
        return out

    def invariants(self) -> dict:
        phi = self.phi
        checks = {
            "phi_increasing": all(b > a for a, b in zip(phi, phi[1:])),
            "phi_exceeds_level": all(p > j for j, p in enumerate(phi, start=1)),
            "O_measure": all(abs(build_O(n, phi[n - 1]).measure() - TWO_PI * 2.0 ** -n)
                             <= 1e-12 * TWO_PI for n in range(1, self.K + 1)),
            "V_measure": all(V.measure() <= TWO_PI * 2.0 ** (1 - j) * (1 + 1e-12)
                             for j, V in enumerate(self.V, start=1)),
            "V_nested": all(self.V[j].subset_of(self.V[j - 1]) for j in range(1, len(self.V))),
            "s_above_2": self.s > 2.0,
            "bounds_positive": all(self.level_bound(j) > 0 for j in range(1, self.J + 1)),
            "f_bounded": sum(self.s ** -j for j in range(1, self.J + 1)) < 1.0 / (self.s - 1.0),
        }
        return checks

    def to_dict(self) -> dict:
        levels = []
        for j in range(1, self.K + 1):
            V = self.V[j - 1]
            entry = {"j": j, "phi": self.phi[j - 1], "v": self.v[j - 1],
                     "components": len(V), "measure": V.measure(), "sha256": _arcs_digest(V)}
            if self.config.full_arcs or len(V) <= self.config.arc_limit:
                entry["arcs"] = V.to_lists()
            levels.append(entry)
        out = {
            "config": self.config.to_dict(), "phi": list(self.phi), "v": list(self.v),
            "c0": self.c0, "s": self.s,
            "bounds": [self.level_bound(j) for j in range(1, self.J + 1)],
            "f_coefficients": [c for c, _ in self.f.terms],
            "levels": levels, "resolution_guard_met": self.resolution_guard_met,
            "truncation_error_budget": 2.0 * TWO_PI * 2.0 ** -self.K,
            "gate": self.gate, "invariants": self.invariants(),
        }
        if self.table is not None:
            out["oscillation"] = self.table.to_dict()
        return out

    @classmethod
    def from_dict(cls, d: dict, family: RegionFamily) -> "CounterexampleArtifact":
        """Rebuild from a serialized artifact; arc sets are regenerated and checked by digest."""
        cfg = dict(d["config"])
        spec = cfg.pop("family")
        cfg.pop("b", None)
        cfg["tail_ladder"] = tuple(cfg["tail_ladder"])
        cfg["gate_ladder"] = tuple(cfg["gate_ladder"])
        cfg["fatou_steps"] = tuple(cfg["fatou_steps"])
        config = CounterexampleConfig(family=family, family_spec=spec, **cfg)
        phi = [int(p) for p in d["phi"]]
        V = build_V_all(phi, config.truncation)
        for entry, Vj in zip(d["levels"], V):
            if entry["sha256"] != _arcs_digest(Vj):
                raise ValueError(f"level {entry['j']}: regenerated arcs do not match the artifact")
        s = float(d["s"])
        f = _assemble(V, s, config.levels)
        return cls(config, phi, [int(x) for x in d["v"]], float(d["c0"]), s, V, f,
                   bool(d["resolution_guard_met"]), dict(d.get("gate", {})))


def _assemble(V: list, s: float, J: int) -> BoundaryIndicator:
    f = BoundaryIndicator()
    for j in range(1, J + 1):
        f = f + BoundaryIndicator.single(V[j - 1], s ** -j)
    return f


# -- hypothesis gate ------------------------------------------------------------------

def _gate_points(family: RegionFamily, grid: int, count: int) -> np.ndarray:
    ws = boundary_grid(grid)
    if family.base_region is None:
        ws = np.array([w for w in ws if _tabulated(family, w)])
    if ws.size == 0:
        return ws
    return ws[np.linspace(0, ws.size - 1, min(count, ws.size)).round().astype(int)]


def _tabulated(family: RegionFamily, w: float) -> bool:
    try:
        family.at(w)
    except KeyError:
        return False
    return True


def check_hypotheses(config: CounterexampleConfig) -> dict:
    """Regularity, projective adjacency at sample points; tangency is enforced by ``select_phi``."""
    family, grid = config.family, config.grid
    if family.base_region is None:
        missing = sum(not _tabulated(family, w) for w in boundary_grid(grid))
        if missing:
            raise HypothesisError("[reg]", f"tabulated family misses {missing} of {grid} grid points")
    probe = regularity_probe(family, Tent(0.0, 0.25), grid=min(grid, 512))
    if not probe > 0.0:
        raise HypothesisError("[reg]", "no grid region meets a test tent")
    witnesses = []
    for w in _gate_points(family, grid, config.gate_points):
        res = test_projective_adjacency(family.at(w), family.b_at(w), config.gate_ladder, 64)
        witnesses.append({"w": float(w), "verdict": res.verdict})
        if res.verdict != WITNESS_FOUND:
            raise HypothesisError("[p]", f"no adjacency witness at w={w:.17g} with b={family.b_at(w)}")
    return {"regularity_probe": probe, "adjacency": witnesses}


# -- assembly -------------------------------------------------------------------------

def build_counterexample(config: CounterexampleConfig, verify: bool = True) -> CounterexampleArtifact:
    """Run the gate, choose ``phi`` level by level, build the sets and the boundary function."""
    gate = check_hypotheses(config)
    J, K = config.levels, config.truncation
    phi, prior = [], 0
    for j in range(1, K + 1):
        prior = select_phi(config.family, config.grid, j, config.c, prior, config.gauge_budget)
        phi.append(prior)
        log.info("level %d: phi = %d", j, prior)
    v = [v_sequence(j) for j in range(1, K + 1)]
    guard = config.grid >= 2 ** K * phi[-1]
    if not guard:
        log.warning("grid %d is coarser than the finest arcs (2^K phi_K = %.3g); sampled rates only",
                    config.grid, 2.0 ** K * phi[-1])
    c0 = float(estimate_tent_constant(grid_density=config.tent_density)["c0"])
    s = 1.0 + (1.0 + c0) / c0
    V = build_V_all(phi, K)
    f = _assemble(V, s, J)
    art = CounterexampleArtifact(config, phi, v, c0, s, V, f, guard, gate)
    if verify:
        art.table = verify_oscillation(art)
    return art


# -- verification ---------------------------------------------------------------------

def _edge_distance(V: list, w: np.ndarray) -> np.ndarray:
    d = np.full(w.shape, np.inf)
    for Vj in V:
        d = np.minimum(d, Vj.distance_to_boundary(w))
    return d


def _fatou_points(w: float, d: float, steps: Sequence[int]):
    """Radial and two-sided ``tau = 0.75`` points of the 1-Stolz region at ``w`` at radii ``d 2^-k``."""
    th, de = [], []
    for k in steps:
        rho = d * 2.0 ** -k
        th.append(w)
        de.append(rho)
        # |z - w| = rho, tau = 0.75: delta = 0.75 rho, 4 (1 - delta) sin^2(x/2) = rho^2 - delta^2
        delta = FATOU_TAU * rho
        x = 2.0 * math.asin(math.sqrt((rho * rho - delta * delta) / (4.0 * (1.0 - delta))))
        th += [w + x, w - x]
        de += [delta, delta]
    return np.array(th), np.array(de)


def inner_radius(art: CounterexampleArtifact, ladder: Sequence[float]) -> float:
    """Smallest ladder radius spanning at least two lattice cells of the finest level.

    Below that scale the truncated sets have no structure left to oscillate against.
    """
    floor = 2.0 * TWO_PI / art.phi[art.K - 1]
    usable = [r for r in ladder if r >= floor]
    return float(usable[-1]) if usable else float(ladder[0])


def verify_oscillation(art: CounterexampleArtifact, samples: np.ndarray | None = None) -> OscillationReport:
    """Oscillation of ``u`` along each sampled region, against the per-level bound, plus Fatou control."""
    cfg = art.config
    ws = boundary_grid(cfg.grid) if samples is None else np.asarray(samples, dtype=float)
    level = art.first_escape(ws)
    keep = level <= art.J
    ws, level = ws[keep], level[keep]
    edge = _edge_distance(art.V[:art.J], ws)
    excl = TWO_PI * 2.0 ** -art.K / art.phi[art.K - 1]
    indices = {j: ComponentIndex(art.V[j - 1]) for j in set(level.tolist())}
    ladder = tuple(float(r) for r in cfg.tail_ladder)
    if any(b >= a for a, b in zip(ladder, ladder[1:])):
        raise ValueError("tail ladder must be strictly decreasing")
    radius = inner_radius(art, ladder)

    q_th, q_de, spans = [], [], []
    for w, j, d in zip(ws, level, edge):
        region = cfg.family.at(float(w))
        th, de = region.sample_tail(radius, cfg.tail_budget)
        hth, hde, _ = tent_hits(region, indices[int(j)], radius, cfg.hit_cap)
        fth, fde = _fatou_points(float(w), float(d) if np.isfinite(d) else math.pi, cfg.fatou_steps)
        start = sum(a.size for a in q_th)
        q_th += [th, hth, fth]
        q_de += [de, hde, fde]
        spans.append((start, th.size, hth.size, fth.size))
    if q_th:
        vals = art.u(np.concatenate(q_th), np.concatenate(q_de))
    rows = []
    for (w, j, d), (start, n_tail, n_hit, n_fat) in zip(zip(ws, level, edge), spans):
        tail_vals = vals[start:start + n_tail]
        hit_vals = vals[start + n_tail:start + n_tail + n_hit]
        fat_vals = vals[start + n_tail + n_hit:start + n_tail + n_hit + n_fat]
        sample = np.concatenate([tail_vals, hit_vals])
        osc = float(sample.max() - sample.min())
        bound = art.level_bound(int(j))
        fosc = float(fat_vals.max() - fat_vals.min())
        excluded = bool(d < excl)
        rows.append(OscillationRow(float(w), int(j), osc, bound, osc >= (1.0 - cfg.slack) * bound,
                                   int(sample.size), n_hit, fosc, float(d), excluded,
                                   (not excluded) and fosc < FATOU_LIMIT))
    n = len(rows)
    fat = [r for r in rows if not r.fatou_excluded]
    literal = [r for r in rows if r.edge_distance >= 2.0 ** -art.K]
    return OscillationReport(
        rows=rows,
        pass_rate=sum(r.passed for r in rows) / n if n else 0.0,
        fatou_rate=sum(r.fatou_passed for r in fat) / len(fat) if fat else 0.0,
        n_sampled=n, n_fatou=len(fat), n_fatou_literal=len(literal),
        fatou_rate_literal=(sum(r.fatou_osc < FATOU_LIMIT for r in literal) / len(literal)
                            if literal else 0.0),
        exclusion_radius=excl, tail_radius=radius)
