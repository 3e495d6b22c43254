"""Report files: JSON documents, flat CSV tables and optional PNG charts.

Charts summarise numbers only (statuses, cover counts, charges); no graph
is ever drawn.
"""

from __future__ import annotations

import csv
import io
import json
from collections import Counter
from pathlib import Path

SCHEMA_VERSION = 1


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def write_json(doc: dict, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(doc))
    return path


def read_json(path) -> dict:
    return json.loads(Path(path).read_text())


def _csv_text(rows: list[dict], columns: list[str]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=columns, extrasaction="ignore", lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: _cell(r.get(k)) for k in columns})
    return buf.getvalue()


def _cell(x):
    if isinstance(x, (list, tuple)):
        return ";".join(map(str, x))
    if x is None:
        return ""
    return x


def write_csv(rows: list[dict], columns: list[str], path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(_csv_text(rows, columns))
    return path


def read_csv(path) -> list[dict]:
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


VERIFY_COLUMNS = ["id", "m", "status", "verdict", "mode", "covers_checked", "covers_total",
                  "nodes_expanded", "problems"]
TRANSFER_COLUMNS = ["from_vertex", "to_face", "amount_sixths", "rule", "case"]


def tables(doc: dict) -> tuple[list[dict], list[str]]:
    """The flat table that goes with a report document."""
    kind = doc.get("kind")
    if kind == "verify":
        return doc["entries"], VERIFY_COLUMNS
    if kind == "discharge":
        return doc["ledger"]["transfers"], TRANSFER_COLUMNS
    if kind == "solve":
        return doc["runs"], ["index", "solved", "nodes"]
    if kind == "oracle":
        return doc["disagreements"], ["n", "edges", "f", "g", "normalized", "raw"]
    raise ValueError(f"no table for report kind {kind!r}")


# ---------------------------------------------------------------------------
# charts


def _plt():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def _verify_chart(doc, ax_pair):
    ax1, ax2 = ax_pair
    counts = Counter(e["status"] for e in doc["entries"])
    names = sorted(counts)
    ax1.bar(names, [counts[k] for k in names], color="0.4")
    ax1.set_ylabel("entries")
    ax1.set_title(f"status at m={doc['m']}")
    rows = [e for e in doc["entries"] if e.get("covers_total")]
    ax2.barh([e["id"] for e in rows], [e["covers_total"] for e in rows], color="0.6")
    ax2.set_xscale("log")
    ax2.set_xlabel("cover family size")
    ax2.tick_params(axis="y", labelsize=6)


def _discharge_chart(doc, ax_pair):
    ax1, ax2 = ax_pair
    led = doc["ledger"]
    per_rule = Counter()
    for t in led["transfers"]:
        per_rule[t["rule"]] += t["amount_sixths"]
    names = sorted(per_rule)
    ax1.bar(names, [per_rule[k] / 6 for k in names], color="0.4")
    ax1.set_ylabel("charge moved")
    ax1.set_title("transfers by rule")
    final = led["final"]["vertices"] + led["final"]["faces"]
    vals = sorted(Counter(final).items())
    ax2.bar([str(round(k / 6, 2)) for k, _ in vals], [c for _, c in vals], color="0.6")
    ax2.set_xlabel("final charge")
    ax2.set_ylabel("elements")


def _solve_chart(doc, ax_pair):
    ax1, ax2 = ax_pair
    runs = doc["runs"]
    solved = sum(1 for r in runs if r["solved"])
    ax1.bar(["solved", "failed"], [solved, len(runs) - solved], color="0.4")
    ax1.set_title(f"{len(runs)} covers")
    ax2.hist([r["nodes"] for r in runs], bins=20, color="0.6")
    ax2.set_xlabel("search nodes")


_CHARTS = {"verify": _verify_chart, "discharge": _discharge_chart, "solve": _solve_chart}


def plot_summary(doc: dict, path) -> Path | None:
    """Render the two-panel summary chart of a report, if its kind has one."""
    draw = _CHARTS.get(doc.get("kind"))
    if draw is None:
        return None
    plt = _plt()
    fig, axes = plt.subplots(1, 2, figsize=(10, 4))
    draw(doc, axes)
    fig.tight_layout()
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=100)
    plt.close(fig)
    return path


def emit(doc: dict, out, plot: bool = False) -> list[Path]:
    """Write ``out`` (JSON) plus a CSV table next to it and, with ``plot``,
    a PNG chart."""
    out = Path(out)
    written = [write_json(doc, out)]
    try:
        rows, cols = tables(doc)
    except ValueError:
        rows = None
    if rows is not None:
        written.append(write_csv(rows, cols, out.with_suffix(".csv")))
    if plot:
        p = plot_summary(doc, out.with_suffix(".png"))
        if p is not None:
            written.append(p)
    return written
