import io
import json

import pytest

from chebtrees.cli import run
from chebtrees.planetree import build_tree, canonical_code


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), stdout=out)
    return code, out.getvalue()


def test_enumerate():
    code, out = call("enumerate", "--edges", "5")
    assert code == 0
    trees = json.loads(out)
    assert len(trees) == 5
    assert all(canonical_code(build_tree(t)).code == t["code"] for t in trees)


def test_enumerate_mirror():
    code, out = call("enumerate", "--edges", "6", "--mirror")
    assert code == 0 and len(json.loads(out)) == 11


@pytest.mark.parametrize("argv", [("enumerate", "--edges", "0"), ("enumerate",), ("frobnicate",),
                                  ("track", "--family", "nope", "--path", "0,1"),
                                  ("track", "--family", "F1", "--path", "0,,1"),
                                  ("solve", "--tree", "missing.json"), ("degree5",),
                                  ("verify-paper", "--only", "99"), ("enumerate", "--edges", "5", "--jobs", "0")])
def test_usage_errors(argv, capsys):
    assert call(*argv)[0] == 2


def test_domain_error_exit_code(tmp_path, capsys):
    star = {"n_edges": 3, "vertices": [{"id": 0, "color": "white", "neighbors": [1, 2, 3]}] +
            [{"id": k, "color": "black", "neighbors": [0]} for k in (1, 2, 3)]}
    f = tmp_path / "star.json"
    f.write_text(json.dumps(star))
    assert call("solve", "--tree", str(f))[0] == 1
    assert "StarTree" in capsys.readouterr().err
    bad = {"n_edges": 1, "vertices": [{"id": 0, "color": "white", "neighbors": [1]},
                                      {"id": 1, "color": "white", "neighbors": [0]}]}
    f.write_text(json.dumps(bad))
    assert call("solve", "--tree", str(f))[0] == 1
    assert "ColorClash" in capsys.readouterr().err


def test_track_f1():
    code, out = call("track", "--family", "F1", "--path", "0,0.6")
    assert code == 0
    d = json.loads(out)
    assert d["is_zhomotopy"] and d["interior_passport"] == "<3|2|2>"
    assert all(d["endpoint_trees"])


def test_track_jump_is_domain_error(capsys):
    assert call("track", "--family", "F1", "--path", "0,1")[0] == 1
    assert "PassportJump" in capsys.readouterr().err


def test_solve_classify_pullback(tmp_path):
    code, out = call("solve", "--tree", "n5/T3")
    assert code == 0
    poly = tmp_path / "p.json"
    poly.write_text(out)
    code, out = call("classify", "--poly", str(poly))
    assert code == 0 and json.loads(out)["kind"] == "Chebyshev"
    svg = tmp_path / "t.svg"
    code, out = call("pullback", "--poly", str(poly), "--svg", str(svg))
    assert code == 0
    g = json.loads(out)
    assert g["n_edges"] == 5
    assert svg.read_text().startswith("<?xml")
    tree = build_tree({"n_edges": 5, "vertices": [{k: v[k] for k in ("id", "color", "neighbors")}
                                                  for v in g["vertices"]]})
    assert canonical_code(tree).code == json.loads(call("solve", "--tree", "n5/T3")[1])["tree"]


def test_pullback_with_arc(tmp_path):
    poly = tmp_path / "z.json"
    # x^2 (x - 1)^2 (3x - 1), expanded from the constant term up
    poly.write_text(json.dumps([0, 0, -1, 5, -7, 3]))
    arc = tmp_path / "arc.json"
    arc.write_text(json.dumps({"anchors": ["-32/3125", "0", "4/81"]}))
    code, out = call("pullback", "--poly", str(poly), "--arc", str(arc))
    assert code == 0 and json.loads(out)["n_edges"] == 10


def test_obstruct():
    code, out = call("obstruct", "--t1", "n5/T3", "--t2", "n5/T5")
    assert code == 0 and json.loads(out)["verdict"] == "blocked"
    code, out = call("obstruct", "--t1", "n5/T1", "--t2", "n5/T2")
    assert json.loads(out)["certificate"]["shared"] == "<3|2|2>"


def test_obstruct_edge_mismatch(capsys):
    assert call("obstruct", "--t1", "n5/T3", "--t2", "n6/T5")[0] == 2


def test_graph():
    code, out = call("graph", "--edges", "5")
    d = json.loads(out)
    assert [sorted((e["u"], e["v"])) for e in d["edges"] if e["status"] == "blocked"] == [["n5/T3", "n5/T5"]]


def test_scan():
    code, out = call("scan", "--family", "F1")
    assert code == 0 and len(json.loads(out)["points"]) == 6


def test_degree5():
    code, out = call("degree5", "--abc=-3/4,0,1/16")
    assert code == 0 and json.loads(out)["membership"] == "C1_only"


def test_degree7_sample():
    code, out = call("degree7", "--count", "1", "--seed", "2")
    d = json.loads(out)
    assert code == 0 and d[0]["order"] in (168, 2520)


def test_output_is_deterministic():
    assert call("track", "--catalog", "quintic-T2-T5")[1] == call("track", "--catalog", "quintic-T2-T5")[1]
    assert call("degree7", "--seed", "4")[1] == call("degree7", "--seed", "4")[1]


def test_out_flag(tmp_path):
    dest = tmp_path / "trees.json"
    code, out = call("enumerate", "--edges", "4", "--out", str(dest))
    assert code == 0 and out == ""
    assert len(json.loads(dest.read_text())) == 2


def test_verify_paper_subset():
    code, out = call("verify-paper", "--only", "1,2,3")
    assert code == 0
    assert out.splitlines()[:3] == ["PASS   1  tree counts 5 / 13 / 11 mirror classes",
                                    "PASS   2  figure tree passport <3,2|2,1,1,1>",
                                    "PASS   3  x^2(x-1)^2(3x-1) is Zolotarev <2,2|2|2>"]


def test_verify_paper_failure_exit_code():
    code, out = call("verify-paper", "--only", "5")
    assert code == 1 and out.startswith("FAIL")
