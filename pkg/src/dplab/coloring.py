"""Multicolouring search on a single cover and the quantified checks built
on it: (f,g)-DP-colourability and strong extendability from a vertex set.

A multicolouring is a tuple of sorted colour tuples, one per vertex.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from .cover import (
    DEFAULT_CAP,
    Cover,
    CoverSpace,
    CoverSpaceTooLarge,
    SampleSpace,
    as_quota,
    cover_to_document,
    quota_le,
)
from .graph import Graph, induced_subgraph
from .shards import ShardResult, ShardSpec, run_parallel, run_shard

DEFAULT_NODE_CAP = 10**6

Coloring = tuple[tuple[int, ...], ...]


class QuotaError(ValueError):
    pass


class SearchBudgetExceeded(RuntimeError):
    def __init__(self, nodes: int):
        self.nodes = nodes
        super().__init__(f"search stopped after {nodes} nodes")


class CoverSolver:
    """Backtracking (H,g)-colouring search for one cover.

    Lists are bitmasks.  The vertex with the largest need/available ratio is
    branched on first, subsets in index order, and every uncoloured vertex
    must keep at least as many available colours as it still needs.
    """

    def __init__(self, cover: Cover):
        self.cover = cover
        self.n = cover.n
        self.f = cover.list_size
        block = [[{} for _ in range(k)] for k in self.f]
        for (u, v), pairs in zip(cover.base.edges, cover.matchings):
            for i, j in pairs:
                block[u][i][v] = block[u][i].get(v, 0) | (1 << j)
                block[v][j][u] = block[v][j].get(u, 0) | (1 << i)
        self.block = [[tuple(d.items()) for d in row] for row in block]
        self.nodes = 0

    def solve(self, g, fixed: Mapping[int, Iterable[int]] | None = None,
              node_cap: int = DEFAULT_NODE_CAP) -> Coloring | None:
        g = as_quota(g, self.n)
        for v in range(self.n):
            if g[v] > self.f[v]:
                raise QuotaError(f"quota {g[v]} exceeds list size {self.f[v]} at vertex {v}")
        self.nodes = 0
        self._cap = node_cap
        chosen: list[tuple[int, ...]] = [()] * self.n
        avail = [(1 << k) - 1 for k in self.f]
        fixed = {v: tuple(sorted(set(cs))) for v, cs in (fixed or {}).items()}
        for v, cs in fixed.items():
            if any(not 0 <= i < self.f[v] for i in cs):
                raise QuotaError(f"fixed colours at {v} fall outside its list")
            chosen[v] = cs
        for v, cs in fixed.items():
            for i in cs:
                for w, m in self.block[v][i]:
                    if w in fixed and any(m >> j & 1 for j in fixed[w]):
                        return None
                    avail[w] &= ~m
        todo = [v for v in range(self.n) if v not in fixed and g[v] > 0]
        for v in todo:
            if avail[v].bit_count() < g[v]:
                return None
        found = self._search(avail, g, todo, chosen)
        return tuple(found) if found is not None else None

    def _search(self, avail, need, todo, chosen):
        self.nodes += 1
        if self.nodes > self._cap:
            raise SearchBudgetExceeded(self.nodes)
        if not todo:
            return chosen
        best = todo[0]
        bp = avail[best].bit_count()
        for v in todo[1:]:
            pc = avail[v].bit_count()
            if need[v] * bp > need[best] * pc:
                best, bp = v, pc
        rest = [v for v in todo if v != best]
        mask = avail[best]
        colors = [i for i in range(self.f[best]) if mask >> i & 1]
        block = self.block[best]
        for combo in combinations(colors, need[best]):
            new = avail[:]
            for i in combo:
                for w, m in block[i]:
                    new[w] &= ~m
            if all(new[w].bit_count() >= need[w] for w in rest):
                chosen[best] = combo
                out = self._search(new, need, rest, chosen)
                if out is not None:
                    return out
        chosen[best] = ()
        return None


def find_multicoloring(c: Cover, g, node_cap: int = DEFAULT_NODE_CAP) -> Coloring | None:
    """An (H,g)-colouring of ``c`` or None.  Raises SearchBudgetExceeded when
    the node cap runs out before a decision."""
    return CoverSolver(c).solve(g, node_cap=node_cap)


def check_multicoloring(c: Cover, g, coloring: Sequence[Iterable[int]]) -> list[str]:
    """Problems with ``coloring`` as an (H,g)-colouring; empty when valid.

    Deliberately naive: walks every matching pair.
    """
    g = as_quota(g, c.n)
    problems = []
    if len(coloring) != c.n:
        return [f"coloring has {len(coloring)} entries for {c.n} vertices"]
    sets = [set(x) for x in coloring]
    for v, s in enumerate(sets):
        if len(s) != g[v]:
            problems.append(f"vertex {v} has {len(s)} colours, quota {g[v]}")
        if any(not 0 <= i < c.list_size[v] for i in s):
            problems.append(f"vertex {v} uses a colour outside its list")
    for (u, v), pairs in zip(c.base.edges, c.matchings):
        for i, j in pairs:
            if i in sets[u] and j in sets[v]:
                problems.append(f"({u},{i}) and ({v},{j}) are joined")
    return problems


def _independent_on(conf, vertices, coloring: Mapping[int, Sequence[int]]) -> bool:
    vs = set(vertices)
    for v in vertices:
        for i in coloring[v]:
            for w, j in conf[v][i]:
                if w in vs and j in coloring[w]:
                    return False
    return True


def colorings_of_subset(c: Cover, quota, vertices: Sequence[int],
                        within: Mapping[int, Sequence[int]] | None = None,
                        conf=None) -> Iterator[dict[int, tuple[int, ...]]]:
    """All (H,quota)-colourings of G[vertices] in lexicographic order.

    With ``within`` each vertex must contain the given colours (so the
    result ranges over the augmentations of ``within``).
    """
    quota = as_quota(quota, c.n)
    conf = conf if conf is not None else c.conflicts()
    vertices = sorted(vertices)
    per = []
    for v in vertices:
        base = tuple(sorted((within or {}).get(v, ())))
        if len(base) > quota[v]:
            return
        free = [i for i in range(c.list_size[v]) if i not in base]
        per.append([tuple(sorted(base + extra)) for extra in combinations(free, quota[v] - len(base))])
    for choice in product(*per):
        col = dict(zip(vertices, choice))
        if _independent_on(conf, vertices, col):
            yield col


# ---------------------------------------------------------------------------
# verdicts


@dataclass
class Verdict:
    answer: bool | None
    query: dict
    mode: str = "exhaustive"
    covers_checked: int = 0
    covers_total: int = 0
    nodes_expanded: int = 0
    budget_exhausted: int = 0
    witness_index: int | None = None
    witness_cover: Cover | None = None
    witness_coloring: Coloring | None = None
    time_ms: float = field(default=0.0, compare=False)

    def to_document(self) -> dict:
        doc = {
            "query": self.query,
            "answer": self.answer,
            "mode": self.mode,
            "covers_checked": self.covers_checked,
            "covers_total": self.covers_total,
            "nodes_expanded": self.nodes_expanded,
            "budget_exhausted": self.budget_exhausted,
        }
        if self.witness_index is not None:
            doc["witness_index"] = self.witness_index
        if self.witness_cover is not None:
            doc["witness_cover"] = cover_to_document(self.witness_cover)
        if self.witness_coloring is not None:
            doc["witness_coloring"] = [list(x) for x in self.witness_coloring]
        return doc


@lru_cache(maxsize=64)
def _cover_space(graph: Graph, f: tuple[int, ...]) -> CoverSpace:
    return CoverSpace(graph, f)


@dataclass(frozen=True)
class _Task:
    graph: Graph
    f: tuple[int, ...]
    sample: int | None
    seed: int

    def space(self):
        if self.sample is not None:
            return SampleSpace(self.graph, self.f, self.sample, self.seed)
        return _cover_space(self.graph, self.f)

    def iter_checks(self, start: int, stop: int):
        for cover in self.space().iter_range(start, stop):
            yield self.check(cover)


# batches on the last non-tree edge pay off once it has more matchings
# than there are colour-set pairs to probe at its ends
BATCH_MIN_RADIX = 500


@lru_cache(maxsize=32)
def _injection_images(fu: int, fw: int, gu: int):
    """``img[k, a]``: bitmask in L(w) hit by the a-th g(u)-subset of L(u)
    under the k-th saturating matching (CoverSpace order)."""
    from .cover import injections

    inj = injections(fu, fw)
    hit = np.zeros((len(inj), fu), dtype=np.int64)
    for k, pairs in enumerate(inj):
        for i, j in pairs:
            hit[k, i] = 1 << j
    subsets = list(combinations(range(fu), gu))
    inc = np.zeros((fu, len(subsets)), dtype=np.int64)
    for a, sub in enumerate(subsets):
        inc[list(sub), a] = 1
    return hit @ inc


def _mask(cs) -> int:
    m = 0
    for i in cs:
        m |= 1 << i
    return m


@dataclass(frozen=True)
class ColoringTask(_Task):
    g: tuple[int, ...] = ()
    node_cap: int = DEFAULT_NODE_CAP
    batch_min_radix: int = BATCH_MIN_RADIX

    def key(self) -> str:
        return f"dp|{self.graph.edges}|{self.f}|{self.g}|{self.sample}|{self.seed}|{self.node_cap}"

    def check(self, cover: Cover):
        solver = CoverSolver(cover)
        try:
            ok = solver.solve(self.g, node_cap=self.node_cap) is not None
        except SearchBudgetExceeded as exc:
            return None, exc.nodes
        return ok, solver.nodes

    def iter_checks(self, start: int, stop: int):
        space = self.space()
        if (
            self.sample is not None
            or not space.non_tree_edges
            or space.radices[-1] < self.batch_min_radix
        ):
            yield from super().iter_checks(start, stop)
            return
        block = space.radices[-1]
        pos = start
        while pos < stop:
            base = pos - pos % block
            oks, nodes = self._batch(space, base // block)
            hi = min(stop, base + block)
            for k in range(pos - base, hi - base):
                yield oks[k], nodes
                nodes = 0
            pos = hi

    def _batch(self, space: CoverSpace, block_index: int):
        """Verdicts for every matching on the last non-tree edge, all other
        matchings fixed: probe which (S_u, S_w) pairs extend to a colouring
        of the rest, then test each matching against those pairs."""
        from .cover import _unrank_injection

        f, g = self.f, self.g
        u, w = space.non_tree_edges[-1]
        per_tree = space.per_tree // space.radices[-1]
        t, r = divmod(block_index, per_tree)
        digits = []
        for rad in reversed(space.radices[:-1]):
            r, d = divmod(r, rad)
            digits.append(d)
        digits.reverse()
        data = dict(space.trees[t])
        for (a, b), d in zip(space.non_tree_edges[:-1], digits):
            data[(a, b)] = _unrank_injection(f[a], f[b], d)
        data[(u, w)] = ()
        cover = Cover.trusted(self.graph, f, tuple(data[e] for e in self.graph.edges), False)
        solver = CoverSolver(cover)
        size = space.radices[-1]
        nodes = 0
        if g[u] == 0 or g[w] == 0:
            try:
                ok = solver.solve(g, node_cap=self.node_cap) is not None
            except SearchBudgetExceeded as exc:
                return [None] * size, exc.nodes
            return [ok] * size, solver.nodes
        su = list(combinations(range(f[u]), g[u]))
        sw = list(combinations(range(f[w]), g[w]))
        good, unknown = [], []
        for a, A in enumerate(su):
            try:
                alone = solver.solve(g, fixed={u: A}, node_cap=self.node_cap)
                nodes += solver.nodes
            except SearchBudgetExceeded as exc:
                nodes += exc.nodes
                alone = True
            if alone is None:
                continue
            for B in sw:
                try:
                    hit = solver.solve(g, fixed={u: A, w: B}, node_cap=self.node_cap)
                    nodes += solver.nodes
                except SearchBudgetExceeded as exc:
                    nodes += exc.nodes
                    unknown.append((a, _mask(B)))
                    continue
                if hit is not None:
                    good.append((a, _mask(B)))
        img = _injection_images(f[u], f[w], g[u])

        def any_clear(pairs):
            if not pairs:
                return np.zeros(size, dtype=bool)
            cols = np.array([p[0] for p in pairs])
            masks = np.array([p[1] for p in pairs], dtype=np.int64)
            return ((img[:, cols] & masks) == 0).any(axis=1)

        ok = any_clear(good)
        maybe = any_clear(unknown) & ~ok
        out = [True if o else (None if m else False) for o, m in zip(ok.tolist(), maybe.tolist())]
        return out, nodes


@dataclass(frozen=True)
class PreceqTask(_Task):
    g: tuple[int, ...] = ()
    h: tuple[int, ...] = ()
    X: tuple[int, ...] = ()
    node_cap: int = DEFAULT_NODE_CAP

    def key(self) -> str:
        return (f"preceq|{self.graph.edges}|{self.f}|{self.g}|{self.h}|{self.X}|"
                f"{self.sample}|{self.seed}|{self.node_cap}")

    def check(self, cover: Cover):
        try:
            phi, nodes = strongly_extendable_coloring(cover, self.X, self.h, self.g, self.node_cap)
        except SearchBudgetExceeded as exc:
            return None, exc.nodes
        return phi is not None, nodes


def strongly_extendable_coloring(c: Cover, X: Sequence[int], h, g,
                                 node_cap: int = DEFAULT_NODE_CAP):
    """First (H,h)-colouring of G[X] (lexicographic order) that has a
    g-augmentation and whose every g-augmentation extends to all of G.

    Returns ``(phi or None, nodes)``.
    """
    h = as_quota(h, c.n)
    g = as_quota(g, c.n)
    X = sorted(X)
    conf = c.conflicts()
    solver = CoverSolver(c)
    nodes = 0
    extends: dict[tuple, bool] = {}
    for phi in colorings_of_subset(c, h, X, conf=conf):
        augmented = False
        good = True
        for psi in colorings_of_subset(c, g, X, within=phi, conf=conf):
            augmented = True
            key = tuple(psi[v] for v in X)
            if key not in extends:
                extends[key] = solver.solve(g, fixed=psi, node_cap=node_cap) is not None
                nodes += solver.nodes
            if not extends[key]:
                good = False
                break
        if augmented and good:
            return phi, nodes
    return None, nodes


def _check_quotas(graph: Graph, f, g, h=None, X=()):
    f = as_quota(f, graph.n)
    g = as_quota(g, graph.n)
    if not quota_le(g, f):
        raise QuotaError("g must not exceed f")
    if h is not None:
        h = as_quota(h, graph.n)
        if any(h[v] > g[v] for v in X):
            raise QuotaError("h must not exceed g on X")
    return f, g, h


def _run(task, query: dict, cap: int, sample: int | None, shard: ShardSpec | None,
         workers: int, checkpoint) -> Verdict:
    t0 = time.perf_counter()
    if sample is None:
        space = task.space()
        if space.size > cap:
            raise CoverSpaceTooLarge(space.size, cap)
    else:
        space = task.space()
    start, stop = 0, space.size
    if shard is not None:
        start, stop = shard.bounds(space.size)
    if checkpoint is not None or workers <= 1:
        res: ShardResult = run_shard(task, start, stop, checkpoint=checkpoint)
    else:
        res = run_parallel(task, start, stop, workers=workers)
    if res.failure is not None:
        answer = False
    elif res.budget_count:
        answer = None
    else:
        answer = True
    v = Verdict(
        answer=answer,
        query=query,
        mode="statistical" if sample is not None else "exhaustive",
        covers_checked=res.checked,
        covers_total=stop - start,
        nodes_expanded=res.nodes,
        budget_exhausted=res.budget_count,
    )
    if res.failure is not None:
        v.witness_index = res.failure
        v.witness_cover = space[res.failure]
    elif res.budget_first is not None:
        v.witness_index = res.budget_first
    v.time_ms = (time.perf_counter() - t0) * 1000
    return v


def is_dp_colorable(graph: Graph, f, g, *, cap: int = DEFAULT_CAP,
                    node_cap: int = DEFAULT_NODE_CAP, sample: int | None = None,
                    seed: int = 0, shard: ShardSpec | None = None, workers: int = 1,
                    checkpoint=None) -> Verdict:
    """Decide whether every f-cover of ``graph`` has an (H,g)-colouring.

    Exhaustive over canonical covers unless ``sample`` is given, in which
    case that many random covers are tried and the verdict is statistical.
    A ``False`` verdict carries the first failing cover.
    """
    f, g, _ = _check_quotas(graph, f, g)
    query = {"kind": "dp-colorable", "edges": [list(e) for e in graph.edges], "n": graph.n,
             "f": list(f), "g": list(g)}
    task = ColoringTask(graph, f, sample, seed, g, node_cap)
    return _run(task, query, cap, sample, shard, workers, checkpoint)


def check_preceq(graph: Graph, X: Iterable[int], f, g, h, *, cap: int = DEFAULT_CAP,
                 node_cap: int = DEFAULT_NODE_CAP, sample: int | None = None, seed: int = 0,
                 shard: ShardSpec | None = None, workers: int = 1, checkpoint=None) -> Verdict:
    """Decide (f,h)_X ⪯ (f,g)_G: every f-cover has an (H,h)-colouring of G[X]
    that is strongly (H,g)-extendable.  Values of ``h`` off X are ignored."""
    X = tuple(sorted(set(X)))
    if any(not 0 <= v < graph.n for v in X):
        raise QuotaError("X must be a set of vertices of the graph")
    f, g, h = _check_quotas(graph, f, g, h, X)
    h = tuple(h[v] if v in X else 0 for v in range(graph.n))
    query = {"kind": "preceq", "edges": [list(e) for e in graph.edges], "n": graph.n,
             "f": list(f), "g": list(g), "h": list(h), "X": list(X)}
    task = PreceqTask(graph, f, sample, seed, g, h, X, node_cap)
    return _run(task, query, cap, sample, shard, workers, checkpoint)


# ---------------------------------------------------------------------------
# the calculus


class LemmaHypothesisError(ValueError):
    pass


def path_graph(k: int) -> Graph:
    from .graph import build_graph

    return build_graph([(i, i + 1) for i in range(k - 1)], k)


def lemma_key_hypotheses(f3: Sequence[int], g3: Sequence[int], p: int) -> list[str]:
    f1, f2, f3_ = f3
    g1, g2, g3_ = g3
    bad = []
    if p < 0:
        bad.append("p must be non-negative")
    if not (p <= g1 and p <= g3_):
        bad.append("h=(p,0,p) must not exceed g")
    if not all(a <= b for a, b in zip(g3, f3)):
        bad.append("g must not exceed f")
    if f1 - f2 + f3_ < p:
        bad.append("f(v1) - f(v2) + f(v3) < p")
    if f2 < g1 + g2 + g3_ - p:
        bad.append("f(v2) < g(v1) + g(v2) + g(v3) - p")
    return bad


def check_lemma_key_instance(f3: Sequence[int], g3: Sequence[int], p: int,
                             enforce: bool = True, **kw) -> Verdict:
    """(f,(p,0,p))_{v1,v3} ⪯ (f,g) on the 3-path.

    Instances outside the hypotheses raise unless ``enforce`` is off; then
    the check still runs and the query lists the violated hypotheses.
    """
    bad = lemma_key_hypotheses(f3, g3, p)
    if bad and enforce:
        raise LemmaHypothesisError("; ".join(bad))
    v = check_preceq(path_graph(3), (0, 2), tuple(f3), tuple(g3), (p, 0, p), **kw)
    v.query["p"] = p
    if bad:
        v.query["hypotheses_violated"] = bad
    return v


@dataclass
class Implication:
    premises: list[Verdict]
    conclusion: Verdict | None
    note: str = ""

    @property
    def premises_hold(self) -> bool:
        return all(p.answer is True for p in self.premises)

    @property
    def holds(self) -> bool | None:
        """True/False for a decided implication, None if undecided."""
        if any(p.answer is False for p in self.premises):
            return True
        if any(p.answer is None for p in self.premises):
            return None
        if self.conclusion is None or self.conclusion.answer is None:
            return None
        return self.conclusion.answer

    def to_document(self) -> dict:
        return {
            "premises": [p.to_document() for p in self.premises],
            "conclusion": self.conclusion.to_document() if self.conclusion else None,
            "holds": self.holds,
            "note": self.note,
        }


def check_monotonicity(graph: Graph, X, f, g, h, h_prime=None, X_prime=None, **kw) -> Implication:
    """Enlarging h (up to g) or shrinking X preserves strong extendability."""
    X = tuple(sorted(set(X)))
    premise = check_preceq(graph, X, f, g, h, **kw)
    h = as_quota(h, graph.n)
    if h_prime is not None:
        h_prime = as_quota(h_prime, graph.n)
        g_ = as_quota(g, graph.n)
        if any(not h[v] <= h_prime[v] <= g_[v] for v in X):
            raise QuotaError("need h <= h' <= g on X")
    target_X = X if X_prime is None else tuple(sorted(set(X_prime)))
    if not set(target_X) <= set(X):
        raise QuotaError("X' must be a subset of X")
    target_h = h if h_prime is None else h_prime
    if premise.answer is not True:
        return Implication([premise], None, "premise not established")
    conclusion = check_preceq(graph, target_X, f, g, target_h, **kw)
    return Implication([premise], conclusion)


def _split(graph: Graph, V1: Iterable[int], V2: Iterable[int]):
    V1, V2 = set(V1), set(V2)
    X = V1 & V2
    if not X:
        raise QuotaError("the separating set X is empty")
    if V1 | V2 != set(range(graph.n)):
        raise QuotaError("the two sides must cover the graph")
    for u, v in graph.edges:
        if (u in V1 - X and v in V2 - X) or (u in V2 - X and v in V1 - X):
            raise QuotaError(f"X does not separate: edge {(u, v)} crosses")
    return sorted(X), sorted(V1), sorted(V2)


def _restrict(q: Sequence[int], index: Sequence[int]) -> tuple[int, ...]:
    return tuple(q[i] for i in index)


def check_gluing(graph: Graph, V1, V2, X1, X2, f, g, h1, h2, **kw) -> Implication:
    """Strong extendability from X1 in G[V1] and from X2 in G[V2] combine to
    strong extendability from X1 ∪ X2 with quota h1 + h2 in G, where
    V1 ∩ V2 separates the graph and lies inside X1 and X2."""
    X, V1, V2 = _split(graph, V1, V2)
    X1, X2 = sorted(set(X1)), sorted(set(X2))
    if not (set(X) <= set(X1) <= set(V1) and set(X) <= set(X2) <= set(V2)):
        raise QuotaError("need X ⊆ X1 ⊆ V1 and X ⊆ X2 ⊆ V2")
    f, g = as_quota(f, graph.n), as_quota(g, graph.n)
    h1 = tuple(x if v in X1 else 0 for v, x in enumerate(as_quota(h1, graph.n)))
    h2 = tuple(x if v in X2 else 0 for v, x in enumerate(as_quota(h2, graph.n)))
    hs = tuple(a + b for a, b in zip(h1, h2))
    if not quota_le(hs, g):
        raise QuotaError("h1 + h2 must not exceed g")
    premises = []
    for side, Xi, hi in ((V1, X1, h1), (V2, X2, h2)):
        sub, idx = induced_subgraph(graph, side)
        where = {old: new for new, old in enumerate(idx)}
        premises.append(check_preceq(sub, [where[v] for v in Xi], _restrict(f, idx),
                                     _restrict(g, idx), _restrict(hi, idx), **kw))
    conclusion = check_preceq(graph, sorted(set(X1) | set(X2)), f, g, hs, **kw)
    return Implication(premises, conclusion)


def cut_quotas(graph: Graph, X, V2, f, g, h) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(f', g') on the whole graph: f reduced on V2 by the h-values of
    closed neighbours in X, g reduced by h on X."""
    X, V2 = set(X), set(V2)
    f = list(as_quota(f, graph.n))
    g = list(as_quota(g, graph.n))
    h = as_quota(h, graph.n)
    fp = list(f)
    for v in V2:
        fp[v] = f[v] - sum(h[u] for u in graph.closed_neighborhood(v) if u in X)
    gp = [g[v] - h[v] if v in X else g[v] for v in range(graph.n)]
    return tuple(fp), tuple(gp)


def check_cut_reduction(graph: Graph, V1, V2, f, g, h, **kw) -> Implication:
    """If (f,h)_X ⪯ (f,g) on G[V1] and G[V2] is (f',g')-DP-colourable then
    G is (f,g)-DP-colourable, with X = V1 ∩ V2."""
    X, V1, V2 = _split(graph, V1, V2)
    f, g = as_quota(f, graph.n), as_quota(g, graph.n)
    h = tuple(x if v in X else 0 for v, x in enumerate(as_quota(h, graph.n)))
    fp, gp = cut_quotas(graph, X, V2, f, g, h)
    sub1, idx1 = induced_subgraph(graph, V1)
    w1 = {old: new for new, old in enumerate(idx1)}
    p1 = check_preceq(sub1, [w1[v] for v in X], _restrict(f, idx1), _restrict(g, idx1),
                      _restrict(h, idx1), **kw)
    sub2, idx2 = induced_subgraph(graph, V2)
    f2, g2 = _restrict(fp, idx2), _restrict(gp, idx2)
    note = ""
    if any(x < 0 for x in f2) or any(a > b for a, b in zip(g2, f2)):
        note = "vacuous: reduced lists cannot carry the reduced quotas"
        p2 = Verdict(False, {"kind": "dp-colorable", "f": list(f2), "g": list(g2),
                             "note": note}, covers_checked=0)
    else:
        p2 = is_dp_colorable(sub2, f2, g2, **kw)
    conclusion = is_dp_colorable(graph, f, g, **kw)
    return Implication([p1, p2], conclusion, note)


def replay_witness(v: Verdict, node_cap: int = DEFAULT_NODE_CAP) -> bool:
    """Re-run the single-cover check on a failure witness; True when the
    failure reproduces."""
    if v.witness_cover is None:
        return False
    q = v.query
    c = v.witness_cover
    if q["kind"] == "dp-colorable":
        return find_multicoloring(c, tuple(q["g"]), node_cap) is None
    phi, _ = strongly_extendable_coloring(c, q["X"], tuple(q["h"]), tuple(q["g"]), node_cap)
    return phi is None


def scale(q: Sequence[int], m: int) -> tuple[int, ...]:
    return tuple(x * m for x in q)

