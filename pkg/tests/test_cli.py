import json

import pytest

from dplab.cli import EXIT_CAP, EXIT_FALSE, EXIT_TRUE, EXIT_USAGE, UsageError, main, parse_quota
from dplab.cover import loads_cover
from dplab.coloring import find_multicoloring
from dplab.generators import cube, triangle_free_plane_graph
from dplab.graph import format_rotation_document


@pytest.fixture
def files(tmp_path):
    def edge_list(name, n, edges):
        p = tmp_path / name
        p.write_text(f"{n} {len(edges)}\n" + "".join(f"{u} {v}\n" for u, v in edges))
        return str(p)

    return {
        "k2": edge_list("k2.txt", 2, [(0, 1)]),
        "p3": edge_list("p3.txt", 3, [(0, 1), (1, 2)]),
        "c4": edge_list("c4.txt", 4, [(0, 1), (1, 2), (2, 3), (3, 0)]),
        "tri": edge_list("tri.txt", 3, [(0, 1), (1, 2), (2, 0)]),
        "tmp": tmp_path,
    }


def _json(capsys):
    return json.loads(capsys.readouterr().out)


def test_parse_quota(tmp_path):
    assert parse_quota("uniform:3", 2) == (3, 3)
    assert parse_quota("4", 3) == (4, 4, 4)
    assert parse_quota("3,4,3", 3) == (3, 4, 3)
    p = tmp_path / "q.txt"
    p.write_text("1, 2\n3")
    assert parse_quota(str(p), 3) == (1, 2, 3)
    p.write_text("[5, 6]")
    assert parse_quota(str(p), 2) == (5, 6)
    with pytest.raises(UsageError):
        parse_quota("1,2", 3)
    with pytest.raises(UsageError):
        parse_quota("a", 3)


def test_dp_check_true_and_false(files, capsys):
    assert main(["dp-check", files["p3"], "--f", "3,4,3", "--g", "2"]) == EXIT_TRUE
    assert _json(capsys)["answer"] is True
    w = files["tmp"] / "w.json"
    assert main(["dp-check", files["k2"], "--f", "3", "--g", "2", "--witness", str(w)]) == EXIT_FALSE
    doc = _json(capsys)
    assert doc["answer"] is False and "witness_cover" in doc
    cover = loads_cover(w.read_text())
    assert find_multicoloring(cover, 2) is None


def test_dp_check_scaled(files, capsys):
    assert main(["dp-check", files["p3"], "--f", "3,4,3", "--g", "2", "--m", "2"]) == EXIT_TRUE
    assert _json(capsys)["covers_total"] == 3


def test_exit_codes_for_errors(files, capsys):
    bad = files["tmp"] / "bad.txt"
    bad.write_text("3 2\n0 1\n")
    assert main(["dp-check", str(bad), "--f", "3", "--g", "2"]) == EXIT_USAGE
    assert "line" in capsys.readouterr().err
    assert main(["dp-check", files["k2"], "--f", "2", "--g", "3"]) == EXIT_USAGE
    assert main(["dp-check", files["k2"], "--f", "2"]) == EXIT_USAGE
    assert main(["nonsense"]) == EXIT_USAGE
    assert main(["dp-check", str(files["tmp"] / "missing.txt"), "--f", "3", "--g", "2"]) == EXIT_USAGE


def test_cap_exit_code(files, capsys):
    assert main(["dp-check", files["c4"], "--f", "5", "--g", "2", "--cap", "10"]) == EXIT_CAP
    assert "--sample" in capsys.readouterr().err
    assert main(["dp-check", files["c4"], "--f", "4", "--g", "2", "--node-cap", "1"]) == EXIT_CAP


def test_sampled_run(files, capsys):
    assert main(["dp-check", files["c4"], "--f", "5", "--g", "2", "--sample", "20"]) == EXIT_TRUE
    assert _json(capsys)["mode"] == "statistical"


def test_shard_with_checkpoint(files, capsys):
    ck = files["tmp"] / "ck.json"
    args = ["dp-check", files["c4"], "--f", "3,5,3,5", "--g", "2", "--shard", "1/3",
            "--checkpoint", str(ck)]
    assert main(args) == EXIT_TRUE
    first = _json(capsys)
    assert first["shard"] == "1/3" and first["covers_total"] == 60
    assert ck.exists()
    assert main(args) == EXIT_TRUE
    assert _json(capsys) == first


def test_class_check(files, capsys):
    assert main(["class-check", files["c4"]]) == EXIT_TRUE
    assert _json(capsys)["in_class"] is True
    assert main(["class-check", files["tri"]]) == EXIT_FALSE
    assert _json(capsys)["triangle"] == [0, 1, 2]
    k5 = files["tmp"] / "k5.txt"
    edges = [(a, b) for a in range(5) for b in range(a + 1, 5)]
    k5.write_text(f"5 10\n" + "".join(f"{a} {b}\n" for a, b in edges))
    assert main(["class-check", str(k5)]) == EXIT_FALSE
    assert _json(capsys)["planar"] is False


def test_solve(files, capsys):
    rot = files["tmp"] / "g.json"
    rot.write_text(format_rotation_document(triangle_free_plane_graph(15, 4)))
    assert main(["solve", str(rot), "--random", "3", "--count", "5"]) == EXIT_TRUE
    doc = _json(capsys)
    assert doc["failures"] == 0 and len(doc["runs"]) == 5 and doc["f"][0] == 7
    assert main(["solve", files["tri"]]) == EXIT_USAGE
    capsys.readouterr()
    assert main(["solve", files["tri"], "--force", "--f", "3", "--g", "1"]) == EXIT_TRUE


def test_solve_cover_file(files, capsys):
    assert main(["dp-check", files["k2"], "--f", "3", "--g", "2",
                 "--witness", str(files["tmp"] / "w.json")]) == EXIT_FALSE
    capsys.readouterr()
    assert main(["solve", files["k2"], "--cover", str(files["tmp"] / "w.json"),
                 "--g", "2"]) == EXIT_FALSE
    doc = _json(capsys)
    assert doc["failures"] == 1 and "failed_cover" in doc


def test_verify_ids(capsys, tmp_path):
    out = tmp_path / "v.json"
    assert main(["verify", "--id", "path-343", "--id", "cycle-4", "--out", str(out), "--plot"]) == EXIT_TRUE
    doc = json.loads(out.read_text())
    assert [e["status"] for e in doc["entries"]] == ["verified", "verified"]
    assert (tmp_path / "v.csv").exists() and (tmp_path / "v.png").exists()
    assert main(["verify", "--id", "path-3553"]) == EXIT_FALSE
    assert _json(capsys)["entries"][0]["status"] == "refuted"


def test_verify_budget_skips(capsys):
    assert main(["verify", "--all", "--budget", "0"]) == EXIT_CAP
    assert set(_json(capsys)["counts"]) == {"skipped"}
    assert main(["verify", "--all", "--shard", "0/2"]) == EXIT_USAGE


def test_verify_unknown_id():
    assert main(["verify", "--id", "no-such-entry"]) == EXIT_USAGE


def test_discharge(files, capsys, tmp_path):
    rot = tmp_path / "cube.json"
    rot.write_text(format_rotation_document(cube()))
    assert main(["discharge", str(rot), "--predicates"]) == EXIT_TRUE
    doc = _json(capsys)
    assert doc["ledger"]["sum_sixths"] == -72 and doc["predicates"] == []
    assert main(["discharge", files["c4"]]) == EXIT_USAGE
    out = tmp_path / "d.json"
    assert main(["discharge", str(rot), "--out", str(out), "--plot"]) == EXIT_TRUE
    assert (tmp_path / "d.csv").exists() and (tmp_path / "d.png").exists()


def test_oracle_command(capsys):
    assert main(["oracle", "--max-n", "2", "--fmax", "2"]) == EXIT_TRUE
    doc = _json(capsys)
    assert doc["instances"] > 0 and doc["disagreements"] == []


def test_help_exits_zero(capsys):
    assert main(["--help"]) == EXIT_TRUE
