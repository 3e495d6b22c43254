"""Command-line front end.

Exit codes: 0 true / success, 1 false with a witness, 2 usage, parse or
structural error, 3 a resource cap was hit.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import report
from .coloring import (
    DEFAULT_NODE_CAP,
    CoverSolver,
    QuotaError,
    SearchBudgetExceeded,
    check_multicoloring,
    is_dp_colorable,
    scale,
)
from .cover import (
    DEFAULT_CAP,
    CoverError,
    CoverSpaceTooLarge,
    as_quota,
    cover_to_document,
    identity_cover,
    loads_cover,
    sample_cover,
)
from .graph import (
    Graph,
    GraphError,
    ParseError,
    PlaneGraph,
    find_normally_adjacent_c4,
    find_triangle,
    load_graph,
)
from .shards import ShardSpec

EXIT_TRUE, EXIT_FALSE, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3
SCHEMA_VERSION = 1


class UsageError(Exception):
    pass


def parse_quota(spec: str, n: int) -> tuple[int, ...]:
    """``uniform:K``, a bare integer, a comma list, or a file holding either
    a JSON list or whitespace/comma separated integers."""
    text = spec.strip()
    if text.startswith("uniform:"):
        text = text.split(":", 1)[1]
    elif Path(text).is_file():
        body = Path(text).read_text().strip()
        vals = json.loads(body) if body.startswith("[") else body.replace(",", " ").split()
        try:
            return as_quota([int(x) for x in vals], n)
        except (ValueError, CoverError) as exc:
            raise UsageError(f"bad quota file {spec}: {exc}") from None
    try:
        vals = [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"bad quota {spec!r}") from None
    if len(vals) == 1:
        return (vals[0],) * n
    if len(vals) != n:
        raise UsageError(f"quota {spec!r} has {len(vals)} values for {n} vertices")
    return tuple(vals)


def _base(graph) -> Graph:
    return graph.graph if isinstance(graph, PlaneGraph) else graph


def _write(doc: dict, args) -> None:
    if args.out:
        paths = report.emit(doc, args.out, plot=getattr(args, "plot", False))
        for p in paths:
            print(f"wrote {p}", file=sys.stderr)
    else:
        sys.stdout.write(report.dumps(doc))


# ---------------------------------------------------------------------------
# commands


def class_membership(g: Graph, planar: bool | None = None) -> dict:
    tri = find_triangle(g)
    c4 = find_normally_adjacent_c4(g)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "kind": "class-check",
        "n": g.n,
        "m": g.m,
        "triangle": list(tri) if tri else None,
        "normally_adjacent_c4": None if c4 is None else {
            "first": list(c4.first), "second": list(c4.second), "shared_edge": list(c4.shared_edge)},
    }
    if planar is not None:
        doc["planar"] = planar
    doc["in_class"] = tri is None and c4 is None and planar is not False
    return doc


def _planar(graph) -> bool:
    if isinstance(graph, PlaneGraph):
        return True  # the rotation system already passed the Euler check
    import networkx as nx

    h = nx.Graph()
    h.add_nodes_from(range(graph.n))
    h.add_edges_from(graph.edges)
    return nx.check_planarity(h)[0]


def cmd_class_check(args) -> int:
    graph = load_graph(args.graph)
    doc = class_membership(_base(graph), _planar(graph))
    _write(doc, args)
    return EXIT_TRUE if doc["in_class"] else EXIT_FALSE


def cmd_dp_check(args) -> int:
    g = _base(load_graph(args.graph))
    f = scale(parse_quota(args.f, g.n), args.m)
    gq = scale(parse_quota(args.g, g.n), args.m)
    shard = ShardSpec.parse(args.shard) if args.shard else None
    v = is_dp_colorable(g, f, gq, cap=args.cap, node_cap=args.node_cap, sample=args.sample,
                        seed=args.seed, shard=shard, workers=args.workers,
                        checkpoint=args.checkpoint)
    doc = {"schema_version": SCHEMA_VERSION, "kind": "dp-check", "m": args.m, **v.to_document()}
    if shard is not None:
        doc["shard"] = f"{shard.index}/{shard.total}"
    _write(doc, args)
    if args.witness and v.witness_cover is not None:
        report.write_json(cover_to_document(v.witness_cover), args.witness)
    if v.answer is None:
        return EXIT_CAP
    return EXIT_TRUE if v.answer else EXIT_FALSE


def _solve_one(cover, g, node_cap):
    s = CoverSolver(cover)
    col = s.solve(g, node_cap=node_cap)
    if col is not None and check_multicoloring(cover, g, col):
        raise AssertionError("solver returned an invalid colouring")
    return col, s.nodes


def cmd_solve(args) -> int:
    graph = _base(load_graph(args.graph))
    if not args.force:
        mem = class_membership(graph, _planar(graph))
        if not mem["in_class"]:
            raise UsageError("graph is outside the class (triangle, adjacent 4-cycles or "
                             "non-planar); pass --force to solve anyway")
    f = scale(parse_quota(args.f, graph.n), args.m) if args.f else (7 * args.m,) * graph.n
    g = scale(parse_quota(args.g, graph.n), args.m) if args.g else (2 * args.m,) * graph.n
    if args.cover:
        covers = [(0, loads_cover(Path(args.cover).read_text(), graph))]
        if covers[0][1].list_size != f:
            f = covers[0][1].list_size
    elif args.random is not None:
        covers = ((i, sample_cover(graph, f, args.random, i)) for i in range(args.count))
    else:
        covers = [(0, identity_cover(graph, f))]
    runs = []
    failed = None
    for i, c in covers:
        col, nodes = _solve_one(c, g, args.node_cap)
        runs.append({"index": i, "solved": col is not None, "nodes": nodes,
                     "coloring": None if col is None else [list(x) for x in col]})
        if col is None and failed is None:
            failed = c
    doc = {
        "schema_version": SCHEMA_VERSION,
        "kind": "solve",
        "n": graph.n,
        "edges": [list(e) for e in graph.edges],
        "f": list(f),
        "g": list(g),
        "m": args.m,
        "source": "file" if args.cover else ("random" if args.random is not None else "identity"),
        "seed": args.random,
        "runs": runs,
        "failures": sum(1 for r in runs if not r["solved"]),
    }
    if failed is not None:
        doc["failed_cover"] = cover_to_document(failed)
    _write(doc, args)
    return EXIT_FALSE if failed is not None else EXIT_TRUE


def cmd_verify(args) -> int:
    from .lemmas import load_registry, verify_all, verify_entry, Summary

    entries = load_registry(args.registry) if args.registry else load_registry()
    shard = ShardSpec.parse(args.shard) if args.shard else None
    kw = dict(cap=args.cap, node_cap=args.node_cap, seed=args.seed, workers=args.workers,
              entries=entries)
    if args.id:
        known = {e.id for e in entries}
        missing = [i for i in args.id if i not in known]
        if missing:
            raise UsageError(f"unknown entry id(s): {', '.join(missing)}")
        results = [verify_entry(i, args.m, sample=args.sample,
                                allow_sampling=args.sample is not None, shard=shard,
                                checkpoint=args.checkpoint, **kw) for i in args.id]
        summary = Summary(args.m, results)
    else:
        if shard is not None or args.checkpoint:
            raise UsageError("--shard and --checkpoint need a single --id")
        summary = verify_all(args.m, args.budget, sample=args.sample,
                             allow_sampling=args.sample is not None, **kw)
    doc = {"kind": "verify", **summary.to_document()}
    if shard is not None:
        doc["shard"] = f"{shard.index}/{shard.total}"
    _write(doc, args)
    if any(r.status in ("refuted", "error") for r in summary.results):
        return EXIT_FALSE
    if any(r.status in ("undecided", "skipped") for r in summary.results):
        return EXIT_CAP
    return EXIT_TRUE


def cmd_discharge(args) -> int:
    from .discharging import check_structural_predicates, final_report

    pg = load_graph(args.graph)
    if not isinstance(pg, PlaneGraph):
        raise UsageError("discharge needs a rotation document (JSON with 'rotations')")
    rep = final_report(pg)
    doc = {"schema_version": SCHEMA_VERSION, "kind": "discharge", "ledger": rep.to_document()}
    if args.predicates:
        doc["predicates"] = [o.to_document() for o in check_structural_predicates(pg)]
    _write(doc, args)
    return EXIT_TRUE


def cmd_oracle(args) -> int:
    from .oracle import oracle_suite

    count, bad = oracle_suite(args.max_n, args.fmax)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "kind": "oracle",
        "max_n": args.max_n,
        "fmax": args.fmax,
        "instances": count,
        "disagreements": [
            {"n": d.graph.n, "edges": [list(e) for e in d.graph.edges], "f": list(d.f),
             "g": list(d.g), "normalized": d.normalized, "raw": d.raw}
            for d in bad
        ],
    }
    _write(doc, args)
    return EXIT_TRUE if not bad else EXIT_FALSE


# ---------------------------------------------------------------------------
# argument parsing


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dplab", description="DP-colouring verification lab")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, search=True):
        sp.add_argument("--out", help="write the report here (plus .csv next to it)")
        sp.add_argument("--plot", action="store_true", help="also render a PNG summary chart")
        if search:
            sp.add_argument("--m", type=_positive, default=1)
            sp.add_argument("--cap", type=int, default=DEFAULT_CAP, help="cover family cap")
            sp.add_argument("--node-cap", type=int, default=DEFAULT_NODE_CAP)
            sp.add_argument("--sample", type=_positive, help="check N random covers instead")
            sp.add_argument("--seed", type=int, default=0)
            sp.add_argument("--shard", help="i/t: scan only the i-th of t index ranges")
            sp.add_argument("--checkpoint", help="resumable progress file for a shard")
            sp.add_argument("--workers", type=_positive, default=1)

    sp = sub.add_parser("class-check", help="triangle and adjacent 4-cycle witnesses")
    sp.add_argument("graph")
    common(sp, search=False)
    sp.set_defaults(func=cmd_class_check)

    sp = sub.add_parser("dp-check", help="decide (f,g)-DP-colourability")
    sp.add_argument("graph")
    sp.add_argument("--f", required=True)
    sp.add_argument("--g", required=True)
    sp.add_argument("--witness", help="write a failing cover here")
    common(sp)
    sp.set_defaults(func=cmd_dp_check)

    sp = sub.add_parser("solve", help="find a (7m,2m)-colouring of given covers")
    sp.add_argument("graph")
    src = sp.add_mutually_exclusive_group()
    src.add_argument("--cover", help="cover document")
    src.add_argument("--identity", action="store_true")
    src.add_argument("--random", type=int, metavar="SEED")
    sp.add_argument("--count", type=_positive, default=1, help="random covers to try")
    sp.add_argument("--f")
    sp.add_argument("--g")
    sp.add_argument("--force", action="store_true", help="skip the class check")
    common(sp)
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("verify", help="verify registry entries")
    which = sp.add_mutually_exclusive_group(required=True)
    which.add_argument("--all", action="store_true")
    which.add_argument("--id", action="append")
    sp.add_argument("--budget", type=int, help="skip entries with a larger cover family")
    sp.add_argument("--registry", help="alternative registry JSON")
    common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("discharge", help="charges and transfer ledger of a plane graph")
    sp.add_argument("graph", help="rotation document")
    sp.add_argument("--predicates", action="store_true", help="also list structural violations")
    common(sp, search=False)
    sp.set_defaults(func=cmd_discharge)

    sp = sub.add_parser("oracle", help="brute-force cross-check on small graphs")
    sp.add_argument("--max-n", type=_positive, default=4)
    sp.add_argument("--fmax", type=_positive, default=3)
    common(sp, search=False)
    sp.set_defaults(func=cmd_oracle)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_TRUE
    try:
        return args.func(args)
    except CoverSpaceTooLarge as exc:
        print(f"error: {exc}; use --sample N for a statistical run", file=sys.stderr)
        return EXIT_CAP
    except SearchBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, GraphError, CoverError, QuotaError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

if __name__ == "__main__":
    sys.exit(main())
