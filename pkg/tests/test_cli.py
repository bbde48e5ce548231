import json

import pytest

from permgraph.cli import main, parse_pairs, parse_range, UsageError


def run(capsys, *argv):
    rc = main(list(argv))
    out, err = capsys.readouterr()
    return rc, out, err


def test_parse_range():
    assert parse_range("1..3") == [1, 2, 3]
    assert parse_range("2,5") == [2, 5]
    assert parse_pairs("7:3,9:4") == [(7, 3), (9, 4)]
    with pytest.raises(UsageError):
        parse_range("x..2")


def test_census_g3_csv(capsys, cache_dir):
    rc, out, _ = run(capsys, "census", "--n", "3", "--k", "1..3", "--format", "csv")
    assert rc == 0
    assert out.splitlines() == ["n,k,C,v,w,walk_classes", "3,1,2,2,2,2", "3,2,6,4,6,8", "3,3,26,6,6,28"]


def test_census_g2(capsys, cache_dir):
    rc, out, _ = run(capsys, "census", "--n", "2", "--k", "1", "--format", "csv")
    assert rc == 0 and out.splitlines()[1] == "2,1,2,2,2,2"


def test_census_json_schema_and_cache(capsys, cache_dir):
    rc, out, _ = run(capsys, "census", "--n", "4", "--k", "2")
    doc = json.loads(out)
    assert rc == 0 and doc["version"] == 1 and doc["n"] == 4 and doc["k"] == [2]
    r = doc["results"][0]
    assert (r["cycle_count"], r["vertices_in_cycles"]) == (6, 10)
    assert len(list(cache_dir.iterdir())) == 1
    rc, again, _ = run(capsys, "census", "--n", "4", "--k", "2")
    assert again == out


def test_census_resource_limit(capsys, cache_dir):
    rc, out, err = run(capsys, "census", "--n", "6", "--k", "2,5", "--limit", "2000", "--no-cache")
    assert rc == 3
    doc = json.loads(out)
    assert doc["partial"] and [r["k"] for r in doc["results"]] == [2]


@pytest.mark.parametrize("argv", [
    ["census", "--n", "1"], ["census", "--n", "x"], ["census", "--n", "4", "--k", "0"],
    ["classify", "--perm", "1224"], ["classify"], ["walk", "--perm", "12345", "--k", "2..3"],
    ["verify", "--claims", "nope"], ["census", "--n", "4", "--threads", "0"],
])
def test_usage_errors(capsys, cache_dir, argv):
    rc, _, err = run(capsys, *argv)
    assert rc == 2 and err


def test_verify_pass(capsys):
    rc, out, _ = run(capsys, "verify", "--claims", "Ex3.7,Ex11", "--format", "json")
    recs = json.loads(out)["records"]
    assert rc == 0 and recs and all(r["status"] == "pass" for r in recs)


def test_verify_pairs(capsys):
    rc, out, _ = run(capsys, "verify", "--claims", "Thm5.2", "--pairs", "7:3")
    assert rc == 0 and out.startswith("PASS") and "1750" in out and "152" in out


def test_classify_json(capsys):
    rc, out, _ = run(capsys, "classify", "--perm", "14263758", "--k", "6", "--format", "json")
    doc = json.loads(out)
    assert rc == 0 and doc["alternating"] and not doc["trivial"]
    row = doc["by_k"][0]
    assert row["condition"] and row["branching_general"] == {"m": 3, "i": 6, "j": 7, "ells": [3, 5]}


def test_classify_obstructed(capsys):
    rc, out, _ = run(capsys, "classify", "--perm", "1234567", "--format", "json")
    assert rc == 0 and len(json.loads(out)["by_k"]) == 5


def test_walk_construct(capsys):
    rc, out, _ = run(capsys, "walk", "--perm", "21435", "--k", "4", "--format", "json")
    w = json.loads(out)["walk"]
    assert rc == 0 and w["vertices"][0] == "21435" and len(w["edges"]) == 4


def test_walk_condition_fails(capsys):
    rc, _, err = run(capsys, "walk", "--perm", "13254", "--k", "3")
    assert rc == 1 and "13254" in err


def test_walk_exhaustive(capsys):
    rc, out, _ = run(capsys, "walk", "--perm", "21435", "--k", "4", "--mode", "exhaustive", "--format", "json")
    doc = json.loads(out)
    assert rc == 0 and len(doc["classes"]) == 4 and doc["edge_distinguished_classes"] == 5
    assert sum(c["cycle"] for c in doc["classes"]) == 3


def test_export_dot_g3(capsys, tmp_path):
    rc, out, _ = run(capsys, "export", "--n", "3")
    assert rc == 0
    assert out.count(" -> ") == 24
    nodes = [l for l in out.splitlines() if l.strip().endswith('";') and "->" not in l]
    assert len(nodes) == 6
    rc, again, _ = run(capsys, "export", "--n", "3")
    assert again == out


def test_export_json_and_file(capsys, tmp_path):
    path = tmp_path / "g4.json"
    rc, _, _ = run(capsys, "export", "--n", "4", "--format", "json", "--out", str(path))
    doc = json.loads(path.read_text())
    assert rc == 0 and len(doc["vertices"]) == 24 and len(doc["edges"]) == 120


def test_export_too_large(capsys):
    rc, _, err = run(capsys, "export", "--n", "7")
    assert rc == 3 and "n <= 6" in err
