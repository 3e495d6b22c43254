"""Covers of a graph: per-vertex colour lists plus per-edge matchings.

The list of a vertex ``v`` is the index range ``0..f(v)-1``.  A matching on
edge ``(u, v)`` with ``u < v`` is stored as a sorted tuple of pairs
``(i, j)``: colour ``i`` of ``u`` conflicts with colour ``j`` of ``v``.

Enumeration works on canonical representatives.  Relabelling colours
inside the lists is a cover isomorphism, so the matchings on a spanning
tree can be brought to a canonical shape.  When ``f`` is constant along a
tree edge this shape is the identity matching; when the child list is
shorter than the parent list the only invariant left is *which* parent
colours are hit, up to the relabellings still available at the parent.
That choice is enumerated explicitly (see :class:`CoverSpace`).
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from itertools import islice, permutations, product
from typing import Iterable, Iterator, Mapping, Sequence

from .graph import Graph, bfs_order, bfs_tree

DEFAULT_CAP = 10**8

Pairs = tuple[tuple[int, int], ...]


class CoverError(ValueError):
    pass


class CoverSpaceTooLarge(CoverError):
    def __init__(self, size: int, cap: int):
        self.size = size
        self.cap = cap
        super().__init__(f"cover space has {size} members, cap is {cap}")


def as_quota(values, n: int) -> tuple[int, ...]:
    """Normalise an int (constant map) or a sequence into a length-``n`` tuple."""
    if isinstance(values, int):
        q = (values,) * n
    else:
        q = tuple(int(x) for x in values)
    if len(q) != n:
        raise CoverError(f"quota map has {len(q)} entries for {n} vertices")
    if any(x < 0 for x in q):
        raise CoverError("quota values must be non-negative")
    return q


def quota_le(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(a, b))


@dataclass(frozen=True)
class Cover:
    base: Graph
    list_size: tuple[int, ...]
    matchings: tuple[Pairs, ...]  # aligned with base.edges
    strict: bool = field(default=True, compare=False)

    @classmethod
    def trusted(cls, base: Graph, list_size, matchings, strict: bool = True) -> "Cover":
        """Skip validation; for covers assembled by the enumerators."""
        c = object.__new__(cls)
        object.__setattr__(c, "base", base)
        object.__setattr__(c, "list_size", list_size)
        object.__setattr__(c, "matchings", matchings)
        object.__setattr__(c, "strict", strict)
        return c

    def __post_init__(self):
        edges = self.base.edges
        if len(self.list_size) != self.base.n:
            raise CoverError("one list size per vertex required")
        if len(self.matchings) != len(edges):
            raise CoverError("one matching per base edge required")
        f = self.list_size
        for (u, v), pairs in zip(edges, self.matchings):
            left = [i for i, _ in pairs]
            right = [j for _, j in pairs]
            if len(set(left)) != len(left):
                raise CoverError(f"matching on {(u, v)} repeats a colour of {u}")
            if len(set(right)) != len(right):
                raise CoverError(f"matching on {(u, v)} repeats a colour of {v}")
            if any(not 0 <= i < f[u] for i in left) or any(not 0 <= j < f[v] for j in right):
                raise CoverError(f"matching on {(u, v)} uses a colour outside the lists")
            if self.strict and len(pairs) != min(f[u], f[v]):
                raise CoverError(
                    f"matching on {(u, v)} has {len(pairs)} pairs, "
                    f"saturation needs {min(f[u], f[v])}"
                )

    @property
    def n(self) -> int:
        return self.base.n

    def matching(self, u: int, v: int) -> Pairs:
        """Pairs on edge ``uv`` oriented as (colour of u, colour of v)."""
        a, b = (u, v) if u < v else (v, u)
        idx = self._edge_index()[(a, b)]
        pairs = self.matchings[idx]
        if u < v:
            return pairs
        return tuple(sorted((j, i) for i, j in pairs))

    def _edge_index(self) -> dict[tuple[int, int], int]:
        cache = self.__dict__.get("_eidx")
        if cache is None:
            cache = {e: k for k, e in enumerate(self.base.edges)}
            object.__setattr__(self, "_eidx", cache)
        return cache

    def conflicts(self) -> list[list[list[tuple[int, int]]]]:
        """``conf[v][i]`` lists the ``(w, j)`` joined to colour ``i`` of ``v``."""
        conf = [[[] for _ in range(k)] for k in self.list_size]
        for (u, v), pairs in zip(self.base.edges, self.matchings):
            for i, j in pairs:
                conf[u][i].append((v, j))
                conf[v][j].append((u, i))
        return conf

    def is_saturated(self) -> bool:
        f = self.list_size
        return all(len(p) == min(f[u], f[v]) for (u, v), p in zip(self.base.edges, self.matchings))


def make_cover(
    g: Graph,
    f,
    matchings: Mapping[tuple[int, int], Iterable[Sequence[int]]] | None = None,
    strict: bool = True,
) -> Cover:
    """Validated cover.  ``matchings`` maps edges (either orientation) to
    pairs oriented along the key; omitted edges get an empty matching."""
    f = as_quota(f, g.n)
    given: dict[tuple[int, int], Pairs] = {}
    for (u, v), pairs in (matchings or {}).items():
        if not g.has_edge(u, v):
            raise CoverError(f"{(u, v)} is not an edge of the base graph")
        pairs = [(int(i), int(j)) for i, j in pairs]
        if u > v:
            u, v = v, u
            pairs = [(j, i) for i, j in pairs]
        given[(u, v)] = tuple(sorted(pairs))
    return Cover(g, f, tuple(given.get(e, ()) for e in g.edges), strict)


def identity_cover(g: Graph, f) -> Cover:
    f = as_quota(f, g.n)
    return Cover(g, f, tuple(tuple((i, i) for i in range(min(f[u], f[v]))) for u, v in g.edges))


def from_list_assignment(g: Graph, lists: Sequence[Iterable]) -> tuple[Cover, list[list]]:
    """Cover whose colourings are exactly the list colourings for ``lists``.

    Returns the cover and, per vertex, the abstract colour behind each index.
    """
    if len(lists) != g.n:
        raise CoverError("one list per vertex required")
    palette = []
    for colours in lists:
        colours = list(dict.fromkeys(colours))
        try:
            colours.sort()
        except TypeError:
            colours.sort(key=repr)
        palette.append(colours)
    matchings = []
    for u, v in g.edges:
        where = {c: j for j, c in enumerate(palette[v])}
        matchings.append(tuple((i, where[c]) for i, c in enumerate(palette[u]) if c in where))
    f = tuple(len(p) for p in palette)
    return Cover(g, f, tuple(matchings), strict=False), palette


# ---------------------------------------------------------------------------
# canonical tree parts


def spanning_forest(g: Graph) -> tuple[list[tuple[int, int]], list[tuple[int, int]]]:
    """BFS forest (roots = least unvisited vertex) and the sorted non-tree edges."""
    seen: set[int] = set()
    tree = []
    for r in range(g.n):
        if r not in seen:
            seen.update(bfs_order(g, r))
            tree.extend(bfs_tree(g, r))
    in_tree = {(min(e), max(e)) for e in tree}
    non_tree = [e for e in g.edges if e not in in_tree]
    return tree, non_tree


class _Components:
    """Connected pieces of H restricted to the tree edges seen so far."""

    def __init__(self, f: Sequence[int]):
        self.f = f
        self.label_comp: dict[int, list[int]] = {}
        self.support: list[set[int]] = []

    def copy(self) -> "_Components":
        other = _Components.__new__(_Components)
        other.f = self.f
        other.label_comp = {v: list(c) for v, c in self.label_comp.items()}
        other.support = [set(s) for s in self.support]
        return other

    def add_root(self, v: int):
        self.label_comp[v] = []
        for _ in range(self.f[v]):
            self.label_comp[v].append(len(self.support))
            self.support.append({v})

    def classes(self, p: int) -> list[list[int]]:
        """Labels of ``p`` grouped by the support of their component,
        ordered by least label."""
        groups: dict[frozenset, list[int]] = {}
        for label, cid in enumerate(self.label_comp[p]):
            groups.setdefault(frozenset(self.support[cid]), []).append(label)
        return sorted(groups.values(), key=lambda ls: ls[0])

    def attach(self, p: int, c: int, pairs: Sequence[tuple[int, int]]):
        comp = [None] * self.f[c]
        for i, j in pairs:
            cid = self.label_comp[p][i]
            comp[j] = cid
            self.support[cid].add(c)
        for j in range(self.f[c]):
            if comp[j] is None:
                comp[j] = len(self.support)
                self.support.append({c})
        self.label_comp[c] = comp


def _count_vectors(sizes: Sequence[int], total: int) -> Iterator[tuple[int, ...]]:
    if not sizes:
        if total == 0:
            yield ()
        return
    rest = sum(sizes[1:])
    for k in range(min(sizes[0], total), max(0, total - rest) - 1, -1):
        for tail in _count_vectors(sizes[1:], total - k):
            yield (k,) + tail


def _chosen_labels(classes: list[list[int]], counts: Sequence[int]) -> list[int]:
    chosen = []
    for labels, k in zip(classes, counts):
        chosen.extend(labels[:k])
    return sorted(chosen)


def _tree_pairs(p: int, c: int, fp: int, fc: int, chosen: list[int] | None) -> list[tuple[int, int]]:
    if chosen is None:
        return [(i, i) for i in range(fp)]
    return [(chosen[j], j) for j in range(fc)]


def _roots(g: Graph) -> list[int]:
    seen: set[int] = set()
    roots = []
    for r in range(g.n):
        if r not in seen:
            roots.append(r)
            seen.update(bfs_order(g, r))
    return roots


def _orient(p: int, c: int, pairs) -> tuple[tuple[int, int], Pairs]:
    """Pairs given as (label of p, label of c) re-oriented to the edge key."""
    if p < c:
        return (p, c), tuple(sorted(pairs))
    return (c, p), tuple(sorted((j, i) for i, j in pairs))


class TreeParts:
    """Indexed family of canonical tree parts, one per relabelling class of
    saturated matchings on the spanning forest.

    Nothing is stored per member: counts of completions are memoised on a
    description of the component structure that later choices can see, so
    members can be counted, unranked and streamed from any rank.
    """

    def __init__(self, g: Graph, f: Sequence[int]):
        self.graph = g
        self.f = tuple(f)
        self.edges, _ = spanning_forest(g)
        self.roots = _roots(g)
        branching = [self.f[c] < self.f[p] for p, c in self.edges]
        # last_branch[k]: whether edge k or a later one can branch
        self._tail = [any(branching[k:]) for k in range(len(self.edges) + 1)]
        self._future = [sorted({p for p, _ in self.edges[k:]}) for k in range(len(self.edges) + 1)]
        self._memo: dict = {}
        start = _Components(self.f)
        for r in self.roots:
            start.add_root(r)
        self._start = start
        self.size = self._count(0, start)

    def __len__(self):
        return self.size

    def _options(self, k: int, comps: _Components):
        p, c = self.edges[k]
        if self.f[c] >= self.f[p]:
            return [None]
        classes = comps.classes(p)
        return [_chosen_labels(classes, cnt)
                for cnt in _count_vectors([len(x) for x in classes], self.f[c])]

    def _key(self, k: int, comps: _Components):
        ids: dict = {}
        out = []
        for p in self._future[k]:
            if p not in comps.label_comp:
                continue
            out.append(tuple(ids.setdefault(frozenset(comps.support[cid]), len(ids))
                             for cid in comps.label_comp[p]))
        return k, tuple(out)

    def _step(self, k, comps, chosen):
        p, c = self.edges[k]
        nxt = comps.copy()
        nxt.attach(p, c, _tree_pairs(p, c, self.f[p], self.f[c], chosen))
        return nxt

    def _count(self, k: int, comps: _Components) -> int:
        if not self._tail[k]:
            return 1
        key = self._key(k, comps)
        hit = self._memo.get(key)
        if hit is None:
            opts = self._options(k, comps)
            if len(opts) == 1:
                hit = self._count(k + 1, self._step(k, comps, opts[0]))
            else:
                hit = sum(self._count(k + 1, self._step(k, comps, o)) for o in opts)
            self._memo[key] = hit
        return hit

    def _forced_rest(self, k: int, acc: dict) -> dict:
        out = dict(acc)
        for p, c in self.edges[k:]:
            key, pairs = _orient(p, c, _tree_pairs(p, c, self.f[p], self.f[c], None))
            out[key] = pairs
        return out

    def __getitem__(self, rank: int) -> dict[tuple[int, int], Pairs]:
        if not 0 <= rank < self.size:
            raise IndexError(rank)
        return next(self.iter_from(rank))

    def __iter__(self):
        return self.iter_from(0)

    def iter_from(self, rank: int) -> Iterator[dict[tuple[int, int], Pairs]]:
        if rank >= self.size:
            return iter(())
        return self._walk(0, self._start, {}, rank)

    def _walk(self, k, comps, acc, skip):
        if not self._tail[k]:
            yield self._forced_rest(k, acc)
            return
        p, c = self.edges[k]
        opts = self._options(k, comps)
        last = not self._tail[k + 1]
        for chosen in opts:
            pairs = _tree_pairs(p, c, self.f[p], self.f[c], chosen)
            key, oriented = _orient(p, c, pairs)
            acc[key] = oriented
            if last:
                if skip:
                    skip -= 1
                else:
                    yield self._forced_rest(k + 1, acc)
                continue
            nxt = self._step(k, comps, chosen)
            n = self._count(k + 1, nxt)
            if skip >= n:
                skip -= n
                continue
            yield from self._walk(k + 1, nxt, acc, skip)
            skip = 0
        acc.pop(key, None)


def tree_parts(g: Graph, f: Sequence[int]) -> list[dict[tuple[int, int], Pairs]]:
    """One representative per relabelling class of saturated tree matchings."""
    return list(TreeParts(g, f))


def injections(fu: int, fv: int) -> list[Pairs]:
    """All saturating matchings between lists of sizes ``fu`` and ``fv`` in
    lexicographic order of the injection from the shorter list."""
    if fu <= fv:
        return [tuple((i, perm[i]) for i in range(fu)) for perm in permutations(range(fv), fu)]
    return [tuple(sorted((perm[j], j) for j in range(fv))) for perm in permutations(range(fu), fv)]


def injection_count(fu: int, fv: int) -> int:
    a, b = min(fu, fv), max(fu, fv)
    return math.perm(b, a)


def _unrank_injection(fu: int, fv: int, r: int) -> Pairs:
    small, big = min(fu, fv), max(fu, fv)
    avail = list(range(big))
    image = []
    for t in range(small):
        block = math.perm(big - t - 1, small - t - 1)
        q, r = divmod(r, block)
        image.append(avail.pop(q))
    if fu <= fv:
        return tuple((i, image[i]) for i in range(fu))
    return tuple(sorted((image[j], j) for j in range(fv)))


class CoverSpace:
    """The ordered family of canonical covers of ``g`` with list sizes ``f``.

    Index ``k`` decomposes as ``tree_index * P + rest`` where ``P`` is the
    product of the non-tree injection counts and ``rest`` is mixed radix over
    the non-tree edges sorted by ``(min endpoint, max endpoint)``, the first
    edge most significant.
    """

    def __init__(self, g: Graph, f):
        self.graph = g
        self.f = as_quota(f, g.n)
        self.tree_edges, self.non_tree_edges = spanning_forest(g)
        self.trees = TreeParts(g, self.f)
        self.radices = [injection_count(self.f[u], self.f[v]) for u, v in self.non_tree_edges]
        self.per_tree = math.prod(self.radices)
        self.size = len(self.trees) * self.per_tree

    def __len__(self):
        return self.size

    def _assemble(self, tree: dict, rest: Sequence[Pairs]) -> Cover:
        data = dict(tree)
        data.update(zip(self.non_tree_edges, rest))
        return Cover.trusted(self.graph, self.f, tuple(data[e] for e in self.graph.edges))

    def __getitem__(self, index: int) -> Cover:
        if not 0 <= index < self.size:
            raise IndexError(index)
        t, r = divmod(index, self.per_tree)
        digits = []
        for rad in reversed(self.radices):
            r, d = divmod(r, rad)
            digits.append(d)
        digits.reverse()
        rest = [
            _unrank_injection(self.f[u], self.f[v], d)
            for (u, v), d in zip(self.non_tree_edges, digits)
        ]
        return self._assemble(self.trees[t], rest)

    def __iter__(self) -> Iterator[Cover]:
        return self.iter_range(0, self.size)

    def iter_range(self, start: int, stop: int) -> Iterator[Cover]:
        start, stop = max(0, start), min(stop, self.size)
        if start >= stop:
            return
        choices = [injections(self.f[u], self.f[v]) for u, v in self.non_tree_edges]
        t0, r0 = divmod(start, self.per_tree)
        remaining = stop - start
        for t, tree in enumerate(self.trees.iter_from(t0), t0):
            it = product(*choices)
            if t == t0 and r0:
                it = islice(it, r0, None)
            for rest in it:
                yield self._assemble(tree, rest)
                remaining -= 1
                if remaining == 0:
                    return


def count_covers(g: Graph, f) -> int:
    return CoverSpace(g, f).size


def enumerate_covers(g: Graph, f, cap: int = DEFAULT_CAP) -> Iterator[Cover]:
    """Every canonical cover; raises :class:`CoverSpaceTooLarge` up front
    when the family exceeds ``cap``."""
    space = CoverSpace(g, f)
    if space.size > cap:
        raise CoverSpaceTooLarge(space.size, cap)
    return iter(space)


def sample_cover(g: Graph, f, seed: int, index: int) -> Cover:
    """The ``index``-th sampled cover for ``seed``; each index has its own
    generator so shards can sample independently."""
    f = as_quota(f, g.n)
    rng = random.Random(f"{seed}:{index}")
    matchings = []
    for u, v in g.edges:
        if f[u] <= f[v]:
            img = rng.sample(range(f[v]), f[u])
            matchings.append(tuple((i, img[i]) for i in range(f[u])))
        else:
            img = rng.sample(range(f[u]), f[v])
            matchings.append(tuple(sorted((img[j], j) for j in range(f[v]))))
    return Cover(g, f, tuple(matchings))


class SampleSpace:
    """``count`` independent uniformly random saturated covers, indexable."""

    def __init__(self, g: Graph, f, count: int, seed: int):
        self.graph = g
        self.f = as_quota(f, g.n)
        self.size = count
        self.seed = seed

    def __len__(self):
        return self.size

    def __getitem__(self, index: int) -> Cover:
        if not 0 <= index < self.size:
            raise IndexError(index)
        return sample_cover(self.graph, self.f, self.seed, index)

    def __iter__(self):
        return self.iter_range(0, self.size)

    def iter_range(self, start: int, stop: int) -> Iterator[Cover]:
        for k in range(max(0, start), min(stop, self.size)):
            yield sample_cover(self.graph, self.f, self.seed, k)


def sample_covers(g: Graph, f, count: int, seed: int) -> Iterator[Cover]:
    return iter(SampleSpace(g, f, count, seed))


# ---------------------------------------------------------------------------
# normalisation


def _raw_components(c: Cover, tree: Sequence[tuple[int, int]]):
    parent = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p, q in tree:
        for i, j in c.matching(p, q):
            a, b = find((p, i)), find((q, j))
            if a != b:
                parent[b] = a
    groups: dict = {}
    for v in range(c.n):
        for i in range(c.list_size[v]):
            groups.setdefault(find((v, i)), {})[v] = i
    return list(groups.values())  # each maps vertex -> label


def canonical_relabelling(c: Cover) -> list[list[int]]:
    """Per-vertex permutations ``perm[v][old] = new`` carrying ``c`` to the
    canonical representative of its class (tree part as in
    :func:`tree_parts`).  Tree matchings must be saturated."""
    g, f = c.base, c.list_size
    tree, _ = spanning_forest(g)
    for p, q in tree:
        if len(c.matching(p, q)) != min(f[p], f[q]):
            raise CoverError("normalisation needs saturated matchings on the spanning tree")
    raw = _raw_components(c, tree)

    comps = _Components(f)
    processed = set(_roots(g))
    for r in sorted(processed):
        comps.add_root(r)
    for p, q in tree:
        fp, fq = f[p], f[q]
        chosen = None
        if fq < fp:
            classes = comps.classes(p)
            counts = []
            for labels in classes:
                key = comps.support[comps.label_comp[p][labels[0]]] & processed
                counts.append(
                    sum(1 for comp in raw if p in comp and q in comp and set(comp) & processed == key)
                )
            chosen = _chosen_labels(classes, counts)
        comps.attach(p, q, _tree_pairs(p, q, fp, fq, chosen))
        processed.add(q)

    canon: dict[frozenset, list[dict[int, int]]] = {}
    for cid, sup in enumerate(comps.support):
        canon.setdefault(frozenset(sup), []).append(cid)
    by_support: dict[frozenset, list[dict[int, int]]] = {}
    for comp in raw:
        by_support.setdefault(frozenset(comp), []).append(comp)
    perm = [[-1] * k for k in f]
    for sup, cids in canon.items():
        raws = by_support.get(sup, [])
        if len(raws) != len(cids):
            raise CoverError("internal error: component supports do not match")
        anchor = min(sup)
        raws.sort(key=lambda comp: comp[anchor])
        labelled = [{v: comps.label_comp[v].index(cid) for v in sup} for cid in cids]
        labelled.sort(key=lambda comp: comp[anchor])
        for r, cl in zip(raws, labelled):
            for v in sup:
                perm[v][r[v]] = cl[v]
    return perm


def relabel(c: Cover, perm: Sequence[Sequence[int]]) -> Cover:
    matchings = tuple(
        tuple(sorted((perm[u][i], perm[v][j]) for i, j in pairs))
        for (u, v), pairs in zip(c.base.edges, c.matchings)
    )
    return Cover(c.base, c.list_size, matchings, c.strict)


def normalize(c: Cover) -> Cover:
    """Isomorphic cover whose spanning-tree matchings are in canonical form."""
    if not c.base.is_connected():
        raise CoverError("normalisation needs a connected base graph")
    return relabel(c, canonical_relabelling(c))


# ---------------------------------------------------------------------------
# surgery


@dataclass(frozen=True)
class SubCover:
    cover: Cover
    sizes: tuple[int, ...]
    kept: tuple[tuple[int, ...], ...]  # kept[v][new index] = old index


def delete_closed_neighborhood(c: Cover, s: Iterable[tuple[int, int]]) -> SubCover:
    """Remove the H-vertices ``s`` and everything joined to them by a
    cross-edge; surviving colours are re-indexed in increasing order."""
    s = {(int(v), int(i)) for v, i in s}
    for v, i in s:
        if not (0 <= v < c.n and 0 <= i < c.list_size[v]):
            raise CoverError(f"{(v, i)} is not a vertex of the cover")
    removed = set(s)
    conf = c.conflicts()
    for v, i in s:
        removed.update(conf[v][i])
    kept = tuple(
        tuple(i for i in range(c.list_size[v]) if (v, i) not in removed) for v in range(c.n)
    )
    index = [{old: new for new, old in enumerate(k)} for k in kept]
    matchings = []
    for (u, v), pairs in zip(c.base.edges, c.matchings):
        matchings.append(
            tuple(
                (index[u][i], index[v][j]) for i, j in pairs if i in index[u] and j in index[v]
            )
        )
    sizes = tuple(len(k) for k in kept)
    return SubCover(Cover(c.base, sizes, tuple(matchings), strict=False), sizes, kept)


def restrict(c: Cover, lists: Sequence[Iterable[int]]) -> SubCover:
    """Sub-cover induced by keeping only the given colours of each vertex."""
    keep = [set(x) for x in lists]
    kept = tuple(tuple(sorted(k)) for k in keep)
    index = [{old: new for new, old in enumerate(k)} for k in kept]
    matchings = tuple(
        tuple((index[u][i], index[v][j]) for i, j in pairs if i in index[u] and j in index[v])
        for (u, v), pairs in zip(c.base.edges, c.matchings)
    )
    sizes = tuple(len(k) for k in kept)
    return SubCover(Cover(c.base, sizes, matchings, strict=False), sizes, kept)


# ---------------------------------------------------------------------------
# documents


def cover_to_document(c: Cover) -> dict:
    return {
        "f": list(c.list_size),
        "matchings": [
            {"edge": [u, v], "pairs": [list(p) for p in pairs]}
            for (u, v), pairs in zip(c.base.edges, c.matchings)
        ],
    }


def cover_from_document(doc: Mapping, base: Graph | None = None, strict: bool = False) -> Cover:
    """Inverse of :func:`cover_to_document`.  Without ``base`` the graph is
    read off the listed edges."""
    from .graph import build_graph

    try:
        f = [int(x) for x in doc["f"]]
        entries = [(tuple(m["edge"]), m["pairs"]) for m in doc["matchings"]]
    except (KeyError, TypeError) as exc:
        raise CoverError(f"malformed cover document: {exc}") from None
    if base is None:
        base = build_graph([e for e, _ in entries], len(f))
    return make_cover(base, f, {e: p for e, p in entries}, strict=strict)


def dumps_cover(c: Cover) -> str:
    return json.dumps(cover_to_document(c), sort_keys=True) + "\n"


def loads_cover(text: str, base: Graph | None = None) -> Cover:
    return cover_from_document(json.loads(text), base)
