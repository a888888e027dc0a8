import io
import json

import pytest

from alphastab.cli import run
from alphastab.io import variety_from_dict
from alphastab.models import builtin
from helpers import INSTANCES


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


def write(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return p


P1P1 = ["--builtin", "p1xp1", "--problem", INSTANCES / "p1xp1_problem.json", "--region", INSTANCES / "p1xp1_region.json"]


def test_ss_strictly_semistable():
    code, out, _ = call("ss", "--builtin", "p2", "--problem", INSTANCES / "p2_LN_problem.json")
    assert code == 0
    doc = json.loads(out)
    assert doc["verdict"]["status"] == "strictly-semistable"
    assert {d["id"] for d in doc["verdict"]["destabilizers"]} == {"L", "L^2"}


def test_degrees_zero_class(tmp_path):
    prob = write(tmp_path, "z.json", {"gamma": {"ch": {"0": ["0"]}, "dim": 2},
                                      "degree_system": {"d": 2, "r": 0, "alphas": {"2": ["1"], "1": ["1"], "0": ["1"]}}})
    code, out, _ = call("degrees", "--builtin", "p2", "--problem", prob)
    assert code == 0
    assert set(json.loads(out)["degrees"].values()) == {"0/1"}


def test_hilbert_csv():
    code, out, _ = call("hilbert", "--builtin", "p2", "--problem", INSTANCES / "p2_LN_problem.json", "--format", "csv")
    assert code == 0 and out.count("\n") >= 2


def test_hn_chain():
    code, out, _ = call("hn", "--builtin", "p2", "--problem", INSTANCES / "p2_hn_problem.json",
                        "--lattice", INSTANCES / "p2_hn_lattice.json")
    assert code == 0
    assert json.loads(out)["chain"] == ["0", "a", "ab", "abc"]


def test_hn_ambiguous_exit_3(tmp_path):
    def node(nid, r, a, b, c):
        return {"id": nid, "ch": {"0": [str(r)], "1": [str(a), str(b)], "2": [str(c)]}, "dim": 2}
    # A = O(1,0), B = O(0,1), R = A + B + O(-2,-2): no node joins A and B below R
    lat = {"root": "R", "zero": "0",
           "nodes": [node("0", 0, 0, 0, 0), node("A", 1, 1, 0, 0), node("B", 1, 0, 1, 0), node("R", 3, -1, -1, 4)],
           "edges": [["0", "A"], ["0", "B"], ["A", "R"], ["B", "R"]]}
    prob = {"degree_system": {"d": 2, "r": 1, "alphas": {"2": ["1"], "1": ["1/2", "1/2"]}}}
    code, _, err = call("hn", "--builtin", "p1xp1", "--problem", write(tmp_path, "p.json", prob),
                        "--lattice", write(tmp_path, "l.json", lat))
    assert code == 3, err
    assert "A" in err and "B" in err


def test_walls_and_chambers():
    code, out, _ = call("walls", *P1P1)
    assert code == 0 and len(json.loads(out)["walls"]) == 1
    code, out, _ = call("chambers", *P1P1, "--format", "csv")
    assert code == 0
    assert len(out.strip().splitlines()) == 3  # header and two chambers


def test_chambers_json_report():
    code, out, _ = call("chambers", *P1P1, "--samples", 200)
    doc = json.loads(out)
    assert code == 0
    assert len(doc["chambers"]) == 2
    assert doc["constancy"]["violations"] == []


def test_enumerated_walls():
    code, out, _ = call("walls", "--builtin", "p1xp1", "--problem", INSTANCES / "p1xp1_enumerate_problem.json",
                        "--region", INSTANCES / "p1xp1_region.json")
    assert code == 0 and len(json.loads(out)["walls"]) >= 1


def test_cross():
    code, out, _ = call("cross", *P1P1)
    assert code == 0
    ev = json.loads(out)["events"]
    assert len(ev) == 1 and ev[0]["t"] == "1/2" and ev[0]["rational"]


def test_deterministic_output():
    a = call("chambers", *P1P1, "--seed", 7)
    b = call("chambers", *P1P1, "--seed", 7)
    assert a == b


def test_dump_model_round_trip(tmp_path):
    code, out, _ = call("dump-model", "--builtin", "example-threefold")
    assert code == 0
    model = variety_from_dict(json.loads(out))
    assert model == builtin("example-threefold")
    path = write(tmp_path, "m.json", out)
    code2, out2, _ = call("dump-model", "--variety", path)
    assert code2 == 0 and out2 == out


def test_parse_error_has_position(tmp_path):
    bad = write(tmp_path, "b.json", '{"gamma": \n {"ch": }')
    code, _, err = call("degrees", "--builtin", "p2", "--problem", bad)
    assert code == 2 and "line 2" in err and "column" in err


def test_float_rejected_with_path(tmp_path):
    bad = write(tmp_path, "f.json", {"gamma": {"ch": {"0": [0.5]}, "dim": 2}})
    code, _, err = call("degrees", "--builtin", "p2", "--problem", bad)
    assert code == 2 and "gamma.ch.0[0]" in err


@pytest.mark.parametrize("argv", [
    ["bogus"],
    ["ss", "--builtin", "p2"],
    ["ss", "--builtin", "p2", "--problem", "/nonexistent.json"],
    ["chambers", "--builtin", "p1xp1", "--samples", "-1"],
    ["ss", "--builtin", "grassmannian", "--problem", str(INSTANCES / "p2_LN_problem.json")],
])
def test_validation_exit_2(argv):
    assert call(*argv)[0] == 2


def test_svg_requires_two_coordinates(tmp_path):
    code, _, err = call("chambers", *P1P1, "--svg", tmp_path / "x.svg")
    assert code == 2


def test_svg_written_for_threefold(tmp_path):
    svg = tmp_path / "ch.svg"
    code, _, err = call("chambers", "--variety", INSTANCES / "threefold_model.json",
                        "--problem", INSTANCES / "threefold_prismatic_problem.json",
                        "--region", INSTANCES / "threefold_prismatic_region.json", "--svg", svg, "--samples", 100)
    assert code == 0, err
    assert svg.read_text().startswith("<svg")


def test_output_file(tmp_path):
    out = tmp_path / "o.json"
    code, stdout, _ = call("walls", *P1P1, "-o", out)
    assert code == 0 and stdout == ""
    assert json.loads(out.read_text())["walls"]
