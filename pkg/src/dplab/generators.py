"""Plane graph families used by tests, the smoke run and the CLI.

Random graphs are subgraphs of a Delaunay triangulation of random points,
so the straight-line drawing is a valid embedding for free.
"""

from __future__ import annotations

import numpy as np
from scipy.spatial import Delaunay

from .graph import (
    Graph,
    PlaneGraph,
    build_graph,
    find_normally_adjacent_c4,
)


def cube() -> PlaneGraph:
    rot = [
        (1, 4, 3), (2, 5, 0), (3, 6, 1), (0, 7, 2),
        (7, 5, 0), (4, 6, 1), (5, 7, 2), (6, 4, 3),
    ]
    # outer square 0123 drawn ccw, inner square 4567 inside it
    pos = [(0, 0), (3, 0), (3, 3), (0, 3), (1, 1), (2, 1), (2, 2), (1, 2)]
    edges = {tuple(sorted((v, u))) for v, r in enumerate(rot) for u in r}
    return PlaneGraph.from_coordinates(sorted(edges), pos)


def grid(rows: int, cols: int) -> PlaneGraph:
    idx = lambda r, c: r * cols + c  # noqa: E731
    edges = []
    for r in range(rows):
        for c in range(cols):
            if c + 1 < cols:
                edges.append((idx(r, c), idx(r, c + 1)))
            if r + 1 < rows:
                edges.append((idx(r, c), idx(r + 1, c)))
    pos = [(c, r) for r in range(rows) for c in range(cols)]
    return PlaneGraph.from_coordinates(edges, pos)


def cycle(k: int) -> PlaneGraph:
    ang = np.linspace(0, 2 * np.pi, k, endpoint=False)
    pos = list(zip(np.cos(ang), np.sin(ang)))
    return PlaneGraph.from_coordinates([(i, (i + 1) % k) for i in range(k)], pos)


def hex_patch(rows: int, cols: int) -> PlaneGraph:
    """Honeycomb patch: ``rows`` x ``cols`` hexagons, as a brick wall."""
    # brick-wall drawing: vertices on a (rows+1) x (2*cols+2) lattice
    W = 2 * cols + 2
    pts = {}
    edges = set()

    def vid(r, c):
        if (r, c) not in pts:
            pts[(r, c)] = len(pts)
        return pts[(r, c)]

    for r in range(rows):
        off = r % 2
        for h in range(cols):
            c0 = 2 * h + off
            top = [vid(r + 1, c0 + j) for j in range(3)]
            bot = [vid(r, c0 + j) for j in range(3)]
            ring = bot + top[::-1]
            for i in range(6):
                a, b = ring[i], ring[(i + 1) % 6]
                edges.add((min(a, b), max(a, b)))
    del W
    pos = [None] * len(pts)
    for (r, c), i in pts.items():
        pos[i] = (float(c), float(r))
    return PlaneGraph.from_coordinates(sorted(edges), pos)


def _delaunay_edges(pts) -> list[tuple[int, int]]:
    tri = Delaunay(pts)
    edges = set()
    for s in tri.simplices:
        for i in range(3):
            a, b = int(s[i]), int(s[(i + 1) % 3])
            edges.add((min(a, b), max(a, b)))
    return sorted(edges)


def _points(n: int, rng) -> np.ndarray:
    # jittered lattice keeps triangles from degenerating
    side = int(np.ceil(np.sqrt(n)))
    cells = rng.choice(side * side, size=n, replace=False)
    xy = np.stack([cells % side, cells // side], axis=1).astype(float)
    return xy + rng.uniform(0.15, 0.85, size=xy.shape)


def _connected(n, edges) -> bool:
    return n <= 1 or build_graph(edges, n).is_connected()


def random_plane_graph(n: int, seed: int, drop: float = 0.3) -> PlaneGraph:
    """Delaunay triangulation of ``n`` random points with a random share
    ``drop`` of its edges removed, never disconnecting the graph."""
    if n < 3:
        raise ValueError("need at least 3 points")
    rng = np.random.default_rng(seed)
    pts = _points(n, rng)
    edges = _delaunay_edges(pts)
    order = rng.permutation(len(edges))
    target = int(drop * len(edges))
    kept = list(edges)
    removed = 0
    for i in order:
        if removed >= target:
            break
        trial = [e for e in kept if e != edges[i]]
        if _connected(n, trial):
            kept = trial
            removed += 1
    return PlaneGraph.from_coordinates(kept, pts.tolist())


def _c4_free_join(g_nbrs, u, v) -> bool:
    return not (g_nbrs[u] & g_nbrs[v])


def triangle_free_plane_graph(n: int, seed: int) -> PlaneGraph:
    """A maximal subgraph of a random Delaunay triangulation that has no
    triangle and no two 4-cycles sharing exactly one edge.

    Edges are offered in random order and kept when they create neither.
    An edge joining two components creates no cycle, so the result is
    connected.
    """
    rng = np.random.default_rng(seed)
    pts = _points(n, rng)
    cand = _delaunay_edges(pts)
    order = rng.permutation(len(cand))
    nbrs = [set() for _ in range(n)]
    kept = []
    for i in order:
        u, v = cand[i]
        if not _c4_free_join(nbrs, u, v):
            continue  # would close a triangle
        kept.append((u, v))
        if find_normally_adjacent_c4(build_graph(kept, n)) is not None:
            kept.pop()
            continue
        nbrs[u].add(v)
        nbrs[v].add(u)
    return PlaneGraph.from_coordinates(kept, pts.tolist())


def random_tree(n: int, seed: int) -> Graph:
    rng = np.random.default_rng(seed)
    return build_graph([(i, int(rng.integers(i))) for i in range(1, n)], n)
