"""Hand-written SVG plots of a counterexample artifact."""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np

from .geometry import TWO_PI

WIDTH, HEIGHT, PAD = 720, 360, 40
COLORS = ("#1b6ca8", "#c0392b", "#27ae60", "#8e44ad", "#d35400", "#16a085", "#7f8c8d")


def _svg(body: list, width: int = WIDTH, height: int = HEIGHT) -> str:
    head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
            f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">')
    return "\n".join([head, f'<rect width="{width}" height="{height}" fill="white"/>', *body, "</svg>", ""])


def _text(x, y, s, anchor="start") -> str:
    return f'<text x="{x:.1f}" y="{y:.1f}" text-anchor="{anchor}">{s}</text>'


def level_density(art, bins: int = 512) -> str:
    """Per level, the fraction of each angular bin covered by ``V_j`` (a strip per level)."""
    K = art.K
    row = (HEIGHT - 2 * PAD) / K
    scale = (WIDTH - 2 * PAD) / bins
    edges = np.linspace(0.0, TWO_PI, bins + 1)
    body = [_text(PAD, PAD - 14, "coverage of each angular bin by V_j (darker = more)")]
    for j in range(1, K + 1):
        V = art.V[j - 1]
        s, l = V.starts_lengths()
        cover = np.zeros(bins)
        # clip every component to the bins it spans; components are far shorter than a bin
        for lo, hi in ((s, s + l),):
            a = np.searchsorted(edges, lo % TWO_PI, side="right") - 1
            np.add.at(cover, np.clip(a, 0, bins - 1), hi - lo)
        frac = np.clip(cover / (TWO_PI / bins), 0.0, 1.0)
        y = PAD + (j - 1) * row
        body.append(_text(PAD - 6, y + 0.7 * row, f"{j}", "end"))
        for i, f in enumerate(frac):
            if f > 0:
                shade = max(0, int(255 * (1.0 - f ** 0.25)))
                body.append(f'<rect x="{PAD + i * scale:.2f}" y="{y:.2f}" width="{scale:.2f}" '
                            f'height="{row * 0.85:.2f}" fill="rgb({shade},{shade},255)"/>')
    body.append(_text(PAD, HEIGHT - 10, "0"))
    body.append(_text(WIDTH - PAD, HEIGHT - 10, "2pi", "end"))
    return _svg(body)


def oscillation_plot(table: dict) -> str:
    """Measured oscillation over the per-level bound, on a log axis, against the boundary angle."""
    rows = table["rows"]
    lo, hi = -3.0, 9.0
    sx = (WIDTH - 2 * PAD) / TWO_PI
    sy = (HEIGHT - 2 * PAD) / (hi - lo)
    body = [_text(PAD, PAD - 14, "log10(osc / bound) against w; line = pass threshold")]
    y_thr = HEIGHT - PAD - (math.log10(0.8) - lo) * sy
    body.append(f'<line x1="{PAD}" y1="{y_thr:.1f}" x2="{WIDTH - PAD}" y2="{y_thr:.1f}" stroke="black"/>')
    for r in rows:
        ratio = max(r["osc"] / r["bound"], 10 ** lo)
        y = HEIGHT - PAD - (min(math.log10(ratio), hi) - lo) * sy
        color = COLORS[(r["j"] - 1) % len(COLORS)]
        body.append(f'<circle cx="{PAD + r["w"] * sx:.1f}" cy="{y:.1f}" r="1.6" fill="{color}"/>')
    for k in range(int(lo), int(hi) + 1, 3):
        y = HEIGHT - PAD - (k - lo) * sy
        body.append(_text(PAD - 6, y + 4, f"1e{k}", "end"))
    return _svg(body)


def region_plot(art, count: int = 400) -> str:
    """The region at angle 0: its sampled points in (angle, log10 delta) coordinates."""
    region = art.config.family.at(0.0)
    th, de = region.sample_tail(min(0.5, region.r_max), count)
    x = np.log10(np.maximum(np.abs(np.mod(th + math.pi, TWO_PI) - math.pi), 1e-300))
    y = np.log10(de)
    x0, x1, y0, y1 = x.min(), x.max() + 1e-9, y.min(), y.max() + 1e-9
    sx = (WIDTH - 2 * PAD) / (x1 - x0)
    sy = (HEIGHT - 2 * PAD) / (y1 - y0)
    body = [_text(PAD, PAD - 14, f"{region.name}: log10 |angle| (x) against log10 distance to circle (y)")]
    for a, b in zip(x, y):
        body.append(f'<circle cx="{PAD + (a - x0) * sx:.1f}" cy="{HEIGHT - PAD - (b - y0) * sy:.1f}" '
                    f'r="1.5" fill="{COLORS[0]}"/>')
    body.append(_text(PAD, HEIGHT - 10, f"{x0:.2f}"))
    body.append(_text(WIDTH - PAD, HEIGHT - 10, f"{x1:.2f}", "end"))
    return _svg(body)


def write_all(art, table, outdir: Path) -> list:
    """Write the SVG set into ``outdir``; ``table`` is an oscillation report, its dict form, or None."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    if table is not None and hasattr(table, "to_dict"):
        table = table.to_dict()
    out = {"levels.svg": level_density(art), "region.svg": region_plot(art)}
    if table:
        out["oscillation.svg"] = oscillation_plot(table)
    paths = []
    for name, text in sorted(out.items()):
        p = outdir / name
        p.write_text(text)
        paths.append(p)
    return paths
