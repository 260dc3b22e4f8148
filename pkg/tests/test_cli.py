import csv
import io
import json
import math

import pytest
from hypothesis import given, strategies as st

from projadj.cli import ConfigError, RunConfig, csv_text, dumps, main, parse_ladder, parse_region

SMALL = ["--levels", "2", "--truncation", "5", "--grid", "512"]

json_values = st.recursive(
    st.none() | st.booleans() | st.integers(-10 ** 12, 10 ** 12) | st.floats(allow_nan=False, allow_infinity=False)
    | st.text(max_size=8),
    lambda kids: st.lists(kids, max_size=4) | st.dictionaries(st.text(max_size=5), kids, max_size=4),
    max_leaves=20)


@given(json_values)
def test_dumps_round_trip(obj):
    text = dumps(obj)
    assert json.loads(text) == obj
    assert dumps(json.loads(text)) == text


def test_dumps_non_finite():
    assert dumps([math.inf, -math.inf]).strip() == "[Infinity,-Infinity]"
    assert dumps(1.0).strip() == "1.0"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_classify_json(capsys):
    code, out, _ = run(capsys, "classify", "prop2b")
    assert code == 0
    assert json.loads(out)["verdict"] == "Tangential"


def test_classify_csv_header(capsys):
    code, out, _ = run(capsys, "classify", "radial", "--format", "csv", "--ladder", "3:8")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and rows[0] == ["r", "lower_tau", "upper_tau", "count"] and len(rows) == 7


def test_adjacency_witness_csv(capsys):
    code, out, _ = run(capsys, "adjacency", "prop2b@1.0", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 8
    for r in rows:
        assert r["side"] == "right"
        assert float(r["witness_length"]) >= float(r["certified_tail"]) > 0


def test_adjacency_refute(capsys):
    code, out, _ = run(capsys, "adjacency", "prop2c", "--mode", "refute")
    assert code == 0 and json.loads(out)["verdict"] == "RefutedAtProbes"


def test_tent_constant_golden_range(capsys):
    code, out, _ = run(capsys, "tent-constant", "--density", "64")
    c0 = json.loads(out)["c0"]
    assert code == 0 and 0.41 < c0 < 0.43


def test_poisson_command(tmp_path, capsys):
    ind = tmp_path / "f.json"
    ind.write_text(json.dumps({"terms": [{"coeff": 1.0, "arcs": [[0.0, math.pi]]}]}))
    pts = tmp_path / "p.csv"
    pts.write_text("theta,delta\n0.0,1.0\n1.5707963267948966,1e-9\n")
    code, out, _ = run(capsys, "poisson", "--indicator", str(ind), "--points", str(pts))
    u = json.loads(out)["u"]
    assert code == 0
    assert u[0] == pytest.approx(0.5, abs=1e-13) and u[1] == pytest.approx(1.0, abs=1e-8)


@pytest.mark.parametrize("argv", [
    ["classify", "bogus"],
    ["classify", "prop2b", "--budget", "-1"],
    ["classify", "prop2b", "--ladder", "0.1,0.2"],
    ["build", "--levels", "6", "--truncation", "5"],
    ["nonsense"],
    ["poisson"],
    ["verify", "/nonexistent/artifact.json"],
])
def test_bad_input_exits_1(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 1 and err


def test_gate_exits_2(capsys):
    code, _, err = run(capsys, "build", "--family", "stolz:2", *SMALL)
    assert code == 2 and "(t)" in err


def test_config_overrides_flags(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"region": "radial", "ladder": "3:6"}))
    code, out, _ = run(capsys, "classify", "prop2b", "--config", str(cfg))
    assert code == 0
    d = json.loads(out)
    assert d["verdict"] == "Nontangential" and len(d["ladder"]) == 4
    cfg.write_text(json.dumps({"colour": "red"}))
    code, _, err = run(capsys, "classify", "prop2b", "--config", str(cfg))
    assert code == 1 and "colour" in err


def test_build_deterministic_and_verify(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(capsys, "build", *SMALL, "--out", str(a))[0] == 0
    assert run(capsys, "build", *SMALL, "--out", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    code, out, _ = run(capsys, "verify", str(a), "--format", "csv", "--samples", "16", "--seed", "3")
    rows = list(csv.reader(io.StringIO(out)))
    # samples inside the innermost level set have no row
    assert code == 0 and rows[0][:4] == ["w", "j", "osc", "bound"] and 2 <= len(rows) <= 17
    figs = tmp_path / "figs"
    assert run(capsys, "figures", str(a), "--out", str(figs))[0] == 0
    assert sorted(p.name for p in figs.iterdir()) == ["levels.svg", "oscillation.svg", "region.svg"]


def test_parsers():
    assert parse_ladder("3:5") == (0.125, 0.0625, 0.03125)
    with pytest.raises(ConfigError):
        parse_ladder("x")
    assert parse_region("prop2b@0.5").base == pytest.approx(0.5)
    with pytest.raises(ConfigError):
        RunConfig("classify", budget=0).validate()
    assert csv_text(["a"], [[0.1]]) == "a\n0.10000000000000001\n"
