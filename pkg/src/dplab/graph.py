"""Simple graphs, plane embeddings given by rotation systems, and the
structural searches used by the rest of the package.

Vertices are always ``0..n-1``.  A :class:`PlaneGraph` never computes an
embedding: callers declare one (a rotation per vertex, or coordinates of a
straight-line drawing) and the face structure is validated with Euler's
formula.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Iterable, Sequence


class GraphError(ValueError):
    """Malformed graph or embedding."""


class ParseError(GraphError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class Graph:
    n: int
    adjacency: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.adjacency) != self.n:
            raise GraphError("adjacency length does not match n")
        for v, nbrs in enumerate(self.adjacency):
            if v in nbrs:
                raise GraphError(f"loop at vertex {v}")
            if len(set(nbrs)) != len(nbrs):
                raise GraphError(f"parallel edge at vertex {v}")
            for u in nbrs:
                if not 0 <= u < self.n or v not in self.adjacency[u]:
                    raise GraphError(f"asymmetric adjacency {v}-{u}")

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adjacency[u] if u < v]

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def closed_neighborhood(self, v: int) -> frozenset[int]:
        return frozenset(self.adjacency[v]) | {v}

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.adjacency)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        return len(bfs_order(self, 0)) == self.n

    def cyclomatic_number(self) -> int:
        return self.m - self.n + count_components(self)

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.edges})"


def build_graph(edge_list: Iterable[Sequence[int]], n: int | None = None) -> Graph:
    """Graph on ``n`` vertices (default: one more than the largest endpoint).

    Duplicate edges are merged; loops and out-of-range endpoints raise
    :class:`GraphError`.
    """
    edges = [tuple(e) for e in edge_list]
    if n is None:
        n = 1 + max((max(e) for e in edges), default=-1)
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for e in edges:
        if len(e) != 2:
            raise GraphError(f"edge {e} does not have two endpoints")
        u, v = int(e[0]), int(e[1])
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
        if u == v:
            raise GraphError(f"loop at vertex {u}")
        nbrs[u].add(v)
        nbrs[v].add(u)
    return Graph(n, tuple(tuple(sorted(s)) for s in nbrs))


def bfs_order(g: Graph, root: int = 0) -> list[int]:
    seen = {root}
    order = [root]
    for v in order:
        for u in g.adjacency[v]:
            if u not in seen:
                seen.add(u)
                order.append(u)
    return order


def bfs_tree(g: Graph, root: int = 0) -> list[tuple[int, int]]:
    """Tree edges ``(parent, child)`` in discovery order; children are
    discovered in sorted neighbour order."""
    seen = {root}
    order = [root]
    tree = []
    for v in order:
        for u in g.adjacency[v]:
            if u not in seen:
                seen.add(u)
                order.append(u)
                tree.append((v, u))
    return tree


def count_components(g: Graph) -> int:
    seen: set[int] = set()
    count = 0
    for v in range(g.n):
        if v not in seen:
            count += 1
            seen.update(bfs_order(g, v))
    return count


def induced_subgraph(g: Graph, vs: Iterable[int]) -> tuple[Graph, list[int]]:
    """Induced subgraph on ``vs``.  Returns the subgraph and ``index_map``
    with ``index_map[new] = old``; new indices follow sorted old order."""
    keep = sorted(set(vs))
    for v in keep:
        if not 0 <= v < g.n:
            raise GraphError(f"vertex {v} not in graph")
    pos = {v: i for i, v in enumerate(keep)}
    edges = [(pos[u], pos[v]) for u, v in g.edges if u in pos and v in pos]
    return build_graph(edges, len(keep)), keep


def has_triangle(g: Graph) -> bool:
    return find_triangle(g) is not None


def find_triangle(g: Graph) -> tuple[int, int, int] | None:
    nbr = [set(a) for a in g.adjacency]
    for u, v in g.edges:
        common = nbr[u] & nbr[v]
        if common:
            w = min(common)
            return tuple(sorted((u, v, w)))
    return None


def four_cycles(g: Graph) -> list[tuple[int, int, int, int]]:
    """All 4-cycles, each reported once as ``(a, b, c, d)`` with ``a`` the
    least vertex and ``b < d``."""
    nbr = [set(a) for a in g.adjacency]
    found = set()
    for a, c in combinations(range(g.n), 2):
        common = sorted(nbr[a] & nbr[c])
        for b, d in combinations(common, 2):
            cyc = (a, b, c, d)
            found.add(_canonical_cycle(cyc))
    return sorted(found)


def _canonical_cycle(cyc: Sequence[int]) -> tuple[int, ...]:
    k = len(cyc)
    i = min(range(k), key=lambda j: cyc[j])
    fwd = tuple(cyc[(i + j) % k] for j in range(k))
    bwd = tuple(cyc[(i - j) % k] for j in range(k))
    return min(fwd, bwd)


def cycle_edges(cyc: Sequence[int]) -> frozenset[tuple[int, int]]:
    k = len(cyc)
    return frozenset(tuple(sorted((cyc[i], cyc[(i + 1) % k]))) for i in range(k))


@dataclass(frozen=True)
class AdjacentC4Witness:
    first: tuple[int, int, int, int]
    second: tuple[int, int, int, int]
    shared_edge: tuple[int, int]


def find_normally_adjacent_c4(g: Graph) -> AdjacentC4Witness | None:
    """Lexicographically least pair of 4-cycles sharing exactly one edge."""
    cycles = four_cycles(g)
    edge_sets = [cycle_edges(c) for c in cycles]
    for i, j in combinations(range(len(cycles)), 2):
        shared = edge_sets[i] & edge_sets[j]
        if len(shared) == 1:
            return AdjacentC4Witness(cycles[i], cycles[j], next(iter(shared)))
    return None


# ---------------------------------------------------------------------------
# plane graphs


@dataclass(frozen=True)
class Face:
    boundary: tuple[int, ...]
    darts: tuple[tuple[int, int], ...] = field(repr=False, compare=False, default=())

    @property
    def degree(self) -> int:
        return len(self.boundary)


@dataclass(frozen=True)
class PlaneGraph:
    """A connected graph together with a rotation system.

    ``rotations[v]`` lists the neighbours of ``v`` in cyclic order.  Faces
    are traced by following, from a dart ``(u, v)``, the dart
    ``(v, w)`` where ``w`` succeeds ``u`` in the rotation at ``v``.
    """

    graph: Graph
    rotations: tuple[tuple[int, ...], ...]
    faces: tuple[Face, ...] = field(init=False, repr=False, compare=False)
    _dart_face: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        g = self.graph
        if len(self.rotations) != g.n:
            raise GraphError("one rotation per vertex required")
        for v in range(g.n):
            if sorted(self.rotations[v]) != list(g.adjacency[v]):
                raise GraphError(f"rotation at {v} is not a permutation of its neighbours")
        if not g.is_connected():
            raise GraphError("plane graph must be connected")
        faces, dart_face = _trace_faces(self.rotations)
        if g.m == 0:
            faces = [Face(())]  # a lone vertex bounds the single face
        if sum(f.degree for f in faces) != 2 * g.m:
            raise GraphError("face degrees do not sum to 2|E|")
        if g.n - g.m + len(faces) != 2:
            raise GraphError(
                f"Euler check failed: V - E + F = {g.n} - {g.m} + {len(faces)} != 2"
            )
        object.__setattr__(self, "faces", tuple(faces))
        object.__setattr__(self, "_dart_face", dart_face)

    @property
    def n(self) -> int:
        return self.graph.n

    def face_of_dart(self, u: int, v: int) -> int:
        """Index of the face traversing the dart ``u -> v``."""
        return self._dart_face[(u, v)]

    def corners(self, v: int) -> list[int]:
        """Face indices around ``v``, one per incident dart, in rotation order."""
        return [self._dart_face[(v, w)] for w in self.rotations[v]]

    def incident_faces(self, v: int) -> list[int]:
        return sorted(set(self.corners(v)))

    def edge_faces(self, u: int, v: int) -> tuple[int, int]:
        return self._dart_face[(u, v)], self._dart_face[(v, u)]

    @classmethod
    def from_rotations(cls, rotations: Sequence[Sequence[int]]) -> "PlaneGraph":
        edges = [(v, u) for v, rot in enumerate(rotations) for u in rot]
        g = build_graph(edges, len(rotations))
        return cls(g, tuple(tuple(r) for r in rotations))

    @classmethod
    def from_coordinates(
        cls, edges: Iterable[Sequence[int]], pos: Sequence[Sequence[float]]
    ) -> "PlaneGraph":
        """Embedding induced by a straight-line drawing (counter-clockwise
        neighbour order).  Crossings are not detected here."""
        g = build_graph(edges, len(pos))
        rot = []
        for v in range(g.n):
            x0, y0 = pos[v]
            rot.append(
                tuple(
                    sorted(
                        g.adjacency[v],
                        key=lambda u: math.atan2(pos[u][1] - y0, pos[u][0] - x0),
                    )
                )
            )
        return cls(g, tuple(rot))


def _trace_faces(rotations):
    succ = {}
    for v, rot in enumerate(rotations):
        k = len(rot)
        for i, u in enumerate(rot):
            succ[(v, u)] = rot[(i + 1) % k]
    darts = sorted((v, u) for v, rot in enumerate(rotations) for u in rot)
    dart_face: dict[tuple[int, int], int] = {}
    faces = []
    for start in darts:
        if start in dart_face:
            continue
        idx = len(faces)
        walk = []
        d = start
        while d not in dart_face:
            dart_face[d] = idx
            walk.append(d)
            u, v = d
            d = (v, succ[(v, u)])
        if d != start:
            raise GraphError("inconsistent rotation system")
        faces.append(Face(tuple(u for u, _ in walk), tuple(walk)))
    return faces, dart_face


def faces(pg: PlaneGraph) -> list[Face]:
    return list(pg.faces)


# ---------------------------------------------------------------------------
# configurations and labelled pattern search


def _label_matches(label, degree: int) -> bool:
    # "k+" labels match any degree >= k; exact ints match exactly
    if isinstance(label, str):
        if not label.endswith("+"):
            raise GraphError(f"bad degree label {label!r}")
        return degree >= int(label[:-1])
    return degree == label


def find_configuration(host, pattern_graph: Graph, labels: Sequence) -> list[tuple[int, ...]]:
    """All injective maps (as tuples ``image[pattern_vertex]``) from the
    pattern into ``host`` that preserve adjacency and non-adjacency and send
    each pattern vertex to a host vertex of the labelled degree.

    ``host`` may be a :class:`Graph` or a :class:`PlaneGraph`.
    """
    hg = host.graph if isinstance(host, PlaneGraph) else host
    k = pattern_graph.n
    if k > 12:
        raise GraphError("pattern search is limited to 12 vertices")
    if len(labels) != k:
        raise GraphError("one degree label per pattern vertex required")
    order = []
    seen = set()
    for s in range(k):
        if s not in seen:
            for v in bfs_order(pattern_graph, s):
                seen.add(v)
                order.append(v)
    host_deg = hg.degrees()
    cands = [
        [x for x in range(hg.n) if _label_matches(labels[p], host_deg[x])] for p in range(k)
    ]
    hn = [set(a) for a in hg.adjacency]
    image = [-1] * k
    used: set[int] = set()
    out = []

    def extend(i):
        if i == k:
            out.append(tuple(image))
            return
        p = order[i]
        placed = order[:i]
        for x in cands[p]:
            if x in used:
                continue
            ok = True
            for q in placed:
                if pattern_graph.has_edge(p, q) != (image[q] in hn[x]):
                    ok = False
                    break
            if ok:
                image[p] = x
                used.add(x)
                extend(i + 1)
                used.discard(x)
                image[p] = -1

    extend(0)
    return sorted(out)


# ---------------------------------------------------------------------------
# file formats


def parse_edge_list(text: str) -> Graph:
    """First non-blank line ``n m``, then ``m`` lines ``u v`` (0-based).
    ``#`` starts a comment."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line))
    if not rows:
        raise ParseError("empty edge list", 1)
    lineno, header = rows[0]
    parts = header.split()
    if len(parts) != 2:
        raise ParseError("header must be 'n m'", lineno)
    try:
        n, m = int(parts[0]), int(parts[1])
    except ValueError:
        raise ParseError("header must contain two integers", lineno) from None
    if len(rows) - 1 != m:
        raise ParseError(f"expected {m} edge lines, found {len(rows) - 1}", lineno)
    edges = []
    for lineno, line in rows[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise ParseError("edge line must be 'u v'", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError("edge endpoints must be integers", lineno) from None
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"endpoint out of range 0..{n - 1}", lineno)
        if u == v:
            raise ParseError("loop edge", lineno)
        edges.append((u, v))
    return build_graph(edges, n)


def format_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def parse_rotation_document(text: str) -> PlaneGraph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno) from None
    if not isinstance(doc, dict) or "rotations" not in doc:
        raise ParseError("rotation document needs a 'rotations' field")
    rotations = doc["rotations"]
    n = doc.get("n", len(rotations))
    if n != len(rotations):
        raise ParseError(f"n={n} but {len(rotations)} rotations given")
    return PlaneGraph.from_rotations(rotations)


def format_rotation_document(pg: PlaneGraph) -> str:
    return json.dumps({"n": pg.n, "rotations": [list(r) for r in pg.rotations]}) + "\n"


def load_graph(path: str | Path) -> Graph | PlaneGraph:
    """Read an edge list, or a rotation document when the file is JSON."""
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        return parse_rotation_document(text)
    return parse_edge_list(text)
