"""Command-line entry point: ``projadj <command> [options]``.

Commands write JSON (default) or CSV to ``--out`` or stdout; ``figures``
writes SVG files into a directory.  Exit status is 0 on success, 2 when the
construction's hypothesis gate rejects the family, 1 on bad input.

CSV columns (angles in radians, floats with 17 significant digits):

- classify: ``r,lower_tau,upper_tau,count``
- adjacency (witness): ``r,n_points,witness_start,witness_length,side,certified_tail``
- adjacency (refute): ``side,index,angle,max_tau_sq,tested_upto,tail_bound``
- poisson: ``theta,delta,u``
- tent-constant: ``theta,minimum``
- build / verify: ``w,j,osc,bound,pass,fatou_osc,edge_distance,fatou_excluded,fatou_pass``
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import os
import sys
from dataclasses import dataclass, fields
from pathlib import Path

import numpy as np

from .adjacency import boundary_grid, refute_projective_adjacency, test_projective_adjacency
from .arcs import ArcUnion
from .counterexample import (CounterexampleArtifact, CounterexampleConfig, HypothesisError,
                             build_counterexample, verify_oscillation)
from .geometry import DomainError
from .harmonic import BoundaryIndicator, estimate_tent_constant
from .regions import (DEFAULT_BUDGET, DEFAULT_LADDER, RegionError, RegionFamily, UnsupportedRegion,
                      classify, make_attached_example, make_explicit, make_prop2b_region,
                      make_prop2c_region, make_radial_region, make_stolz_region)

LOG_ENV = "PROJADJ_LOG_LEVEL"
EXIT_OK, EXIT_ERROR, EXIT_GATE = 0, 1, 2

log = logging.getLogger("projadj")


class ConfigError(ValueError):
    """Invalid command input; the message names the offending field."""


# -- deterministic serialization ------------------------------------------------------

def _fmt_float(x: float) -> str:
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    s = "%.17g" % x
    if not any(ch in s for ch in ".en"):
        s += ".0"
    return s


def dumps(obj) -> str:
    """JSON with sorted keys and 17-digit floats; identical input gives identical bytes."""
    out = io.StringIO()
    _write(obj, out)
    out.write("\n")
    return out.getvalue()


def _write(obj, out) -> None:
    if isinstance(obj, (bool, np.bool_)):
        out.write("true" if obj else "false")
    elif obj is None:
        out.write("null")
    elif isinstance(obj, (int, np.integer)):
        out.write(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        out.write(_fmt_float(float(obj)))
    elif isinstance(obj, str):
        out.write(json.dumps(obj))
    elif isinstance(obj, dict):
        out.write("{")
        for i, k in enumerate(sorted(obj, key=str)):
            if i:
                out.write(",")
            out.write(json.dumps(str(k)))
            out.write(":")
            _write(obj[k], out)
        out.write("}")
    elif isinstance(obj, (list, tuple, np.ndarray)):
        out.write("[")
        for i, v in enumerate(obj):
            if i:
                out.write(",")
            _write(v, out)
        out.write("]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def csv_text(header: list, rows: list) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt_float(float(v)) if isinstance(v, (float, np.floating)) and not isinstance(v, bool)
                    else int(v) if isinstance(v, (bool, np.bool_)) else v for v in row])
    return buf.getvalue()


# -- region specs ---------------------------------------------------------------------

def parse_region(spec: str):
    """``prop2b``, ``prop2c``, ``stolz:B``, ``radial``, ``attached``, ``explicit:FILE``; ``@ANGLE`` rotates."""
    base, _, rot = spec.partition("@")
    try:
        angle = float(rot) if rot else 0.0
    except ValueError:
        raise ConfigError(f"region: bad rotation angle {rot!r}") from None
    name, _, arg = base.partition(":")
    if name == "prop2b":
        region = make_prop2b_region()
    elif name == "prop2c":
        region = make_prop2c_region()
    elif name == "stolz":
        try:
            region = make_stolz_region(int(arg))
        except ValueError:
            raise ConfigError(f"region: stolz needs an integer aperture >= 1, got {arg!r}") from None
    elif name == "radial":
        region = make_radial_region()
    elif name == "attached":
        region = make_attached_example()
    elif name == "explicit":
        region = make_explicit(_read_points(arg))
    else:
        raise ConfigError(f"region: unknown spec {spec!r}")
    return region.rotate(angle) if angle else region


def parse_family(spec: str, b: int = 2) -> RegionFamily:
    """Rotation-invariant family generated by a region spec."""
    return RegionFamily.rotation_invariant(parse_region(spec), b)


def _read_points(path: str) -> np.ndarray:
    """Points as rows ``(theta, delta)``, from JSON (list of pairs) or CSV with those columns."""
    if not path:
        raise ConfigError("points: missing file name")
    p = Path(path)
    text = p.read_text()
    if p.suffix == ".csv":
        rows = list(csv.DictReader(io.StringIO(text)))
        try:
            arr = np.array([[float(r["theta"]), float(r["delta"])] for r in rows])
        except (KeyError, ValueError):
            raise ConfigError(f"points: {path} needs numeric theta,delta columns") from None
    else:
        arr = np.asarray(json.loads(text), dtype=float)
    arr = arr.reshape(-1, 2)
    if np.any(~np.isfinite(arr)) or np.any(arr[:, 1] <= 0) or np.any(arr[:, 1] > 1):
        raise ConfigError(f"points: {path} needs finite theta and delta in (0, 1]")
    return arr


def parse_ladder(text: str) -> tuple:
    """``A:B`` means radii 2^-A .. 2^-B; otherwise a comma list of decreasing positive radii."""
    try:
        if ":" in text:
            a, b = (int(x) for x in text.split(":"))
            vals = tuple(2.0 ** -k for k in range(a, b + 1))
        else:
            vals = tuple(float(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise ConfigError(f"ladder: cannot parse {text!r}") from None
    if not vals or any(v <= 0 for v in vals):
        raise ConfigError("ladder: entries must be positive")
    return vals


# -- run configuration ----------------------------------------------------------------

@dataclass
class RunConfig:
    command: str
    region: str = "prop2b"
    family: str = "prop2b"
    ladder: tuple = DEFAULT_LADDER
    budget: int = DEFAULT_BUDGET
    grid: int = 4096
    levels: int = 5
    truncation: int = 12
    b: int = 2
    mode: str = "witness"
    out: str | None = None
    format: str = "json"
    seed: int = 0
    samples: int = 0
    density: int = 256
    thetas: tuple = (1e-3, 1e-2, 1e-1, 1.0)
    indicator: str | None = None
    points: str | None = None
    artifact: str | None = None
    full_arcs: bool = False

    POSITIVE = ("budget", "grid", "levels", "truncation", "b", "density")

    def validate(self) -> "RunConfig":
        for name in self.POSITIVE:
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool) or v < 1:
                raise ConfigError(f"{name}: must be a positive integer, got {v!r}")
        if not isinstance(self.seed, int) or self.seed < 0:
            raise ConfigError(f"seed: must be a non-negative integer, got {self.seed!r}")
        if not isinstance(self.samples, int) or self.samples < 0:
            raise ConfigError(f"samples: must be a non-negative integer, got {self.samples!r}")
        if self.format not in ("json", "csv", "svg"):
            raise ConfigError(f"format: must be json, csv or svg, got {self.format!r}")
        if self.mode not in ("witness", "refute"):
            raise ConfigError(f"mode: must be witness or refute, got {self.mode!r}")
        if self.levels > self.truncation:
            raise ConfigError("levels: must not exceed truncation")
        ladder = list(self.ladder)
        if not ladder or any(v <= 0 for v in ladder) or any(b >= a for a, b in zip(ladder, ladder[1:])):
            raise ConfigError("ladder: must be strictly decreasing positive radii")
        if not self.thetas or any(not (0 < t < 2 * math.pi) for t in self.thetas):
            raise ConfigError("thetas: arc lengths must lie in (0, 2pi)")
        return self


def _apply_config_file(cfg: RunConfig, path: str) -> RunConfig:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as e:
        raise ConfigError(f"config: {path} is not valid JSON ({e})") from None
    if not isinstance(data, dict):
        raise ConfigError("config: top level must be an object")
    names = {f.name for f in fields(RunConfig)} - {"command"}
    for key, value in data.items():
        if key not in names:
            raise ConfigError(f"config: unknown field {key!r}")
        if key == "ladder":
            value = parse_ladder(value) if isinstance(value, str) else tuple(float(v) for v in value)
        elif key == "thetas":
            value = tuple(float(v) for v in value)
        setattr(cfg, key, value)
    return cfg


# -- commands -------------------------------------------------------------------------

def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_classify(cfg: RunConfig) -> int:
    rep = classify(parse_region(cfg.region), cfg.ladder, cfg.budget)
    if cfg.format == "csv":
        rows = list(zip(rep.ladder, rep.lower, rep.upper, rep.counts))
        _emit(cfg, csv_text(["r", "lower_tau", "upper_tau", "count"], rows))
    else:
        _emit(cfg, dumps(rep.to_dict()))
    return EXIT_OK


def cmd_adjacency(cfg: RunConfig) -> int:
    region = parse_region(cfg.region)
    if cfg.mode == "refute":
        res = refute_projective_adjacency(region, cfg.b)
        header = ["side", "index", "angle", "max_tau_sq", "tested_upto", "tail_bound"]
        rows = [[p.side, p.index, p.angle, p.max_tau_sq, p.tested_upto, p.tail_bound] for p in res.probes]
    else:
        ladder = [r for r in cfg.ladder if r <= region.r_max]
        res = test_projective_adjacency(region, cfg.b, ladder, cfg.budget)
        header = ["r", "n_points", "witness_start", "witness_length", "side", "certified_tail"]
        rows = [[r.r, r.n_points, r.witness.start if r.witness else "", r.witness.length if r.witness else "",
                 r.side or "", r.certified_tail] for r in res.radii]
    _emit(cfg, csv_text(header, rows) if cfg.format == "csv" else dumps(res.to_dict()))
    return EXIT_OK


def load_indicator(path: str) -> BoundaryIndicator:
    """An indicator file ``{"terms": [{"coeff": c, "arcs": [[start, length], ...]}]}`` or a build artifact."""
    data = json.loads(Path(path).read_text())
    if "terms" in data:
        f = BoundaryIndicator()
        for i, term in enumerate(data["terms"]):
            try:
                arcs = np.asarray(term["arcs"], dtype=float).reshape(-1, 2)
                support = ArcUnion.from_starts_lengths(arcs[:, 0], arcs[:, 1])
                f = f + BoundaryIndicator.single(support, float(term["coeff"]))
            except (KeyError, ValueError) as e:
                raise ConfigError(f"indicator: term {i} is malformed ({e})") from None
        return f
    if "levels" in data and "config" in data:
        return load_artifact(path).f
    raise ConfigError("indicator: expected a 'terms' list or a build artifact")


def cmd_poisson(cfg: RunConfig) -> int:
    if not cfg.indicator or not cfg.points:
        raise ConfigError("poisson: --indicator and --points are required")
    f = load_indicator(cfg.indicator)
    pts = _read_points(cfg.points)
    u = f.step_function().tree()(pts[:, 0], pts[:, 1])
    if cfg.format == "csv":
        _emit(cfg, csv_text(["theta", "delta", "u"], [list(p) + [v] for p, v in zip(pts.tolist(), u)]))
    else:
        _emit(cfg, dumps({"points": pts.tolist(), "u": u.tolist()}))
    return EXIT_OK


def cmd_tent_constant(cfg: RunConfig) -> int:
    rep = estimate_tent_constant(cfg.thetas, cfg.density)
    if cfg.format == "csv":
        _emit(cfg, csv_text(["theta", "minimum"], sorted(rep["per_theta"].items())))
    else:
        rep = dict(rep, per_theta=[[k, v] for k, v in sorted(rep["per_theta"].items())])
        _emit(cfg, dumps(rep))
    return EXIT_OK


def _table_csv(table) -> str:
    header = ["w", "j", "osc", "bound", "pass", "fatou_osc", "edge_distance", "fatou_excluded", "fatou_pass"]
    rows = [[r.w, r.level, r.osc, r.bound, r.passed, r.fatou_osc, r.edge_distance, r.fatou_excluded,
             r.fatou_passed] for r in table.rows]
    return csv_text(header, rows)


def _counterexample_config(cfg: RunConfig) -> CounterexampleConfig:
    return CounterexampleConfig(family=parse_family(cfg.family, cfg.b), levels=cfg.levels,
                                truncation=cfg.truncation, grid=cfg.grid, full_arcs=cfg.full_arcs,
                                family_spec=cfg.family)


def cmd_build(cfg: RunConfig) -> int:
    art = build_counterexample(_counterexample_config(cfg))
    _emit(cfg, _table_csv(art.table) if cfg.format == "csv" else dumps(art.to_dict()))
    return EXIT_OK


def load_artifact(path: str) -> CounterexampleArtifact:
    data = json.loads(Path(path).read_text())
    try:
        spec, b = data["config"]["family"], int(data["config"]["b"])
    except (KeyError, TypeError):
        raise ConfigError(f"artifact: {path} lacks config.family or config.b") from None
    return CounterexampleArtifact.from_dict(data, parse_family(spec, b))


def _samples(cfg: RunConfig, grid: int) -> np.ndarray:
    if cfg.samples:
        rng = np.random.default_rng(cfg.seed)
        return np.sort(rng.uniform(0.0, 2 * math.pi, cfg.samples))
    return boundary_grid(grid)


def cmd_verify(cfg: RunConfig) -> int:
    if not cfg.artifact:
        raise ConfigError("verify: an artifact path is required")
    art = load_artifact(cfg.artifact)
    table = verify_oscillation(art, _samples(cfg, art.config.grid))
    _emit(cfg, _table_csv(table) if cfg.format == "csv" else dumps(table.to_dict()))
    return EXIT_OK


def cmd_figures(cfg: RunConfig) -> int:
    from . import figures

    if not cfg.artifact:
        raise ConfigError("figures: an artifact path is required")
    art = load_artifact(cfg.artifact)
    data = json.loads(Path(cfg.artifact).read_text())
    outdir = Path(cfg.out or "figures")
    outdir.mkdir(parents=True, exist_ok=True)
    written = figures.write_all(art, data.get("oscillation"), outdir)
    sys.stdout.write("".join(f"{p}\n" for p in written))
    return EXIT_OK


COMMANDS = {
    "classify": cmd_classify, "adjacency": cmd_adjacency, "poisson": cmd_poisson,
    "tent-constant": cmd_tent_constant, "build": cmd_build, "verify": cmd_verify,
    "figures": cmd_figures,
}


class _Parser(argparse.ArgumentParser):
    # argparse would exit with status 2, which is reserved for the hypothesis gate
    def error(self, message):
        raise ConfigError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="projadj", description=__doc__.split("\n")[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="output file (directory for figures); default stdout")
    common.add_argument("--format", choices=["json", "csv", "svg"], default="json")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--config", help="JSON file whose fields override the flags")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("classify", parents=[common], help="classify an approach region")
    s.add_argument("region")
    s.add_argument("--ladder", type=parse_ladder, default=DEFAULT_LADDER)
    s.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    s = sub.add_parser("adjacency", parents=[common], help="projective adjacency witness or refutation")
    s.add_argument("region")
    s.add_argument("--b", type=int, default=2)
    s.add_argument("--mode", choices=["witness", "refute"], default="witness")
    s.add_argument("--ladder", type=parse_ladder, default=parse_ladder("3:10"))
    s.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    s = sub.add_parser("poisson", parents=[common], help="Poisson integral of an indicator combination")
    s.add_argument("--indicator", required=False)
    s.add_argument("--points", required=False)

    s = sub.add_parser("tent-constant", parents=[common], help="estimate the tent constant")
    s.add_argument("--thetas", type=lambda t: tuple(float(x) for x in t.split(",")),
                   default=(1e-3, 1e-2, 1e-1, 1.0))
    s.add_argument("--density", type=int, default=256)

    s = sub.add_parser("build", parents=[common], help="build the counterexample artifact")
    s.add_argument("--family", default="prop2b")
    s.add_argument("--b", type=int, default=2)
    s.add_argument("--levels", type=int, default=5)
    s.add_argument("--truncation", type=int, default=12)
    s.add_argument("--grid", type=int, default=4096)
    s.add_argument("--full-arcs", action="store_true")

    s = sub.add_parser("verify", parents=[common], help="recompute the oscillation table of an artifact")
    s.add_argument("artifact")
    s.add_argument("--samples", type=int, default=0, help="random boundary samples (0 = the artifact grid)")

    s = sub.add_parser("figures", parents=[common], help="SVG plots of an artifact")
    s.add_argument("artifact")
    return p


def make_config(argv=None) -> RunConfig:
    ns = build_parser().parse_args(argv)
    names = {f.name for f in fields(RunConfig)}
    cfg = RunConfig(**{k: v for k, v in vars(ns).items() if k in names and v is not None})
    if ns.config:
        cfg = _apply_config_file(cfg, ns.config)
    return cfg.validate()


def main(argv=None) -> int:
    logging.basicConfig(level=os.environ.get(LOG_ENV, "WARNING").upper(),
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = make_config(argv)
        return COMMANDS[cfg.command](cfg)
    except HypothesisError as e:
        sys.stderr.write(f"gate: {e}\n")
        return EXIT_GATE
    except (ConfigError, DomainError, RegionError, UnsupportedRegion, OSError, json.JSONDecodeError,
            ValueError) as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
