from dplab import report


def _verify_doc():
    return {
        "kind": "verify",
        "m": 1,
        "entries": [
            {"id": "a", "m": 1, "status": "verified", "verdict": True, "mode": "exhaustive",
             "covers_checked": 3, "covers_total": 3, "nodes_expanded": 9, "problems": []},
            {"id": "b", "m": 1, "status": "refuted", "verdict": False, "mode": "exhaustive",
             "covers_checked": 1, "covers_total": 5, "nodes_expanded": 2,
             "problems": ["x", "y"]},
        ],
    }


def test_json_round_trip(tmp_path):
    doc = _verify_doc()
    p = report.write_json(doc, tmp_path / "sub" / "r.json")
    assert report.read_json(p) == doc
    assert p.read_text().endswith("\n")


def test_emit_writes_csv_next_to_json(tmp_path):
    paths = report.emit(_verify_doc(), tmp_path / "r.json")
    assert [p.suffix for p in paths] == [".json", ".csv"]
    rows = report.read_csv(tmp_path / "r.csv")
    assert [r["id"] for r in rows] == ["a", "b"]
    assert rows[1]["problems"] == "x;y"
    assert list(rows[0]) == report.VERIFY_COLUMNS


def test_emit_plot(tmp_path):
    paths = report.emit(_verify_doc(), tmp_path / "r.json", plot=True)
    png = tmp_path / "r.png"
    assert png in paths and png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_kinds_without_table_or_chart(tmp_path):
    doc = {"kind": "dp-check", "answer": True}
    paths = report.emit(doc, tmp_path / "d.json", plot=True)
    assert paths == [tmp_path / "d.json"]


def test_discharge_and_solve_tables():
    d = {"kind": "discharge", "ledger": {"transfers": [
        {"from_vertex": 1, "to_face": 2, "amount_sixths": 6, "rule": "R5", "case": "4-face"}]}}
    rows, cols = report.tables(d)
    assert cols == report.TRANSFER_COLUMNS and rows[0]["rule"] == "R5"
    s = {"kind": "solve", "runs": [{"index": 0, "solved": True, "nodes": 4}]}
    assert report.tables(s)[1] == ["index", "solved", "nodes"]
