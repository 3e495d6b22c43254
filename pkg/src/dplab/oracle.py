"""Naive raw-cover brute force, kept deliberately independent of the
canonical enumeration in :mod:`dplab.cover`.

Every matching on every edge is tried.  For one quota pair the colour-set
choices per vertex are fixed, so each matching turns into a boolean
compatibility table between choices at its two ends; the tables of all
edges are combined with numpy broadcasting and a cover is colourable when
some joint choice survives every edge.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations, product

import numpy as np

from .coloring import is_dp_colorable
from .graph import Graph, build_graph

# above this many raw covers the table product gets too large to hold
RAW_LIMIT = 2_000_000


def raw_matchings(fu: int, fv: int, saturating: bool = True) -> list[tuple[tuple[int, int], ...]]:
    """All matchings between ``range(fu)`` and ``range(fv)``; only those
    of size ``min(fu, fv)`` when ``saturating``."""
    sizes = [min(fu, fv)] if saturating else range(min(fu, fv) + 1)
    out = []
    for k in sizes:
        for left in combinations(range(fu), k):
            for right in permutations(range(fv), k):
                out.append(tuple(zip(left, right)))
    return out


def raw_cover_count(g: Graph, f, saturating: bool = True) -> int:
    n = 1
    for u, v in g.edges:
        n *= len(raw_matchings(f[u], f[v], saturating))
    return n


@dataclass
class OracleAnswer:
    answer: bool
    covers: int
    witness: tuple[tuple[tuple[int, int], ...], ...] | None = None


def raw_is_dp_colorable(g: Graph, f, g_quota, saturating: bool = True) -> OracleAnswer:
    n = g.n
    choices = [list(combinations(range(f[v]), g_quota[v])) for v in range(n)]
    joint = np.array(list(product(*[range(len(c)) for c in choices])), dtype=np.int64)
    if joint.size == 0:
        joint = joint.reshape(1, n) if n == 0 else joint
    total = raw_cover_count(g, f, saturating)
    if total > RAW_LIMIT:
        raise ValueError(f"{total} raw covers exceed the oracle limit {RAW_LIMIT}")
    edges = g.edges
    per_edge = []
    alive = None  # shape (covers so far, joint choices)
    for u, v in edges:
        ms = raw_matchings(f[u], f[v], saturating)
        table = np.ones((len(ms), len(choices[u]), len(choices[v])), dtype=bool)
        su = [set(c) for c in choices[u]]
        sv = [set(c) for c in choices[v]]
        for k, m in enumerate(ms):
            for a, A in enumerate(su):
                for b, B in enumerate(sv):
                    table[k, a, b] = not any(i in A and j in B for i, j in m)
        ok = table[:, joint[:, u], joint[:, v]]  # (matchings, joint)
        per_edge.append(ms)
        alive = ok if alive is None else (alive[:, None, :] & ok[None, :, :]).reshape(-1, len(joint))
    if alive is None:
        return OracleAnswer(bool(len(joint)), 1)
    colourable = alive.any(axis=1)
    bad = np.flatnonzero(~colourable)
    if bad.size == 0:
        return OracleAnswer(True, total)
    # row index is mixed radix with the last edge least significant
    idx = int(bad[0])
    pick = []
    for ms in reversed(per_edge):
        idx, r = divmod(idx, len(ms))
        pick.append(ms[r])
    return OracleAnswer(False, total, tuple(reversed(pick)))


def connected_graphs(n: int) -> list[Graph]:
    """Connected graphs on ``n`` vertices, one per isomorphism class."""
    pairs = list(combinations(range(n), 2))
    seen = set()
    out = []
    perms = list(permutations(range(n)))
    for mask in range(1 << len(pairs)):
        edges = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
        g = build_graph(edges, n)
        if not g.is_connected():
            continue
        key = min(
            tuple(sorted(tuple(sorted((p[a], p[b]))) for a, b in edges)) for p in perms
        )
        if key in seen:
            continue
        seen.add(key)
        out.append(build_graph(key, n))
    return out


@dataclass
class Disagreement:
    graph: Graph
    f: tuple[int, ...]
    g: tuple[int, ...]
    normalized: bool | None
    raw: bool


def quota_pairs(n: int, fmax: int):
    for f in product(range(1, fmax + 1), repeat=n):
        for g in product(*[range(1, x + 1) for x in f]):
            yield f, g


def oracle_suite(max_n: int = 4, fmax: int = 3, progress=None):
    """Compare the canonical decision procedure with the raw brute force on
    every connected graph up to ``max_n`` vertices and every ``1 <= g <= f
    <= fmax``.  Returns ``(instances, disagreements)``."""
    count = 0
    bad = []
    for n in range(1, max_n + 1):
        for graph in connected_graphs(n):
            for f, g in quota_pairs(n, fmax):
                count += 1
                fast = is_dp_colorable(graph, f, g).answer
                slow = raw_is_dp_colorable(graph, f, g).answer
                if fast != slow:
                    bad.append(Disagreement(graph, f, g, fast, slow))
            if progress:
                progress(graph, count, len(bad))
    return count, bad


def _independent(g: Graph, cover_m, col: dict) -> bool:
    for (u, v), m in zip(g.edges, cover_m):
        if u in col and v in col:
            cu, cv = col[u], col[v]
            if any(i in cu and j in cv for i, j in m):
                return False
    return True


def _assignments(vs, f, quota, base: dict):
    pools = [
        [frozenset(base.get(v, ())) | frozenset(extra)
         for extra in combinations(sorted(set(range(f[v])) - set(base.get(v, ()))),
                                   quota[v] - len(base.get(v, ())))]
        for v in vs
    ]
    for pick in product(*pools):
        yield dict(zip(vs, pick))


def raw_preceq(g: Graph, X, f, g_quota, h, saturating: bool = True) -> OracleAnswer:
    """Brute-force (f,h)_X strongly (f,g)-extendable to G over raw covers.
    Exponential; intended for graphs with a handful of vertices."""
    X = sorted(set(X))
    rest = [v for v in range(g.n) if v not in X]
    per_edge = [raw_matchings(f[u], f[v], saturating) for u, v in g.edges]
    covers = 0
    for cover_m in product(*per_edge):
        covers += 1
        ok = False
        for phi in _assignments(X, f, h, {}):
            if not _independent(g, cover_m, phi):
                continue
            augs = [a for a in _assignments(X, f, g_quota, phi) if _independent(g, cover_m, a)]
            if augs and all(
                any(_independent(g, cover_m, {**a, **b})
                    for b in _assignments(rest, f, g_quota, {}))
                for a in augs
            ):
                ok = True
                break
        if not ok:
            return OracleAnswer(False, covers, tuple(cover_m))
    return OracleAnswer(True, covers)
