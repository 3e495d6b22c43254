"""Charges, face and vertex taxonomy, and the transfer rules R1-R6 on a
concrete plane graph.

All charges are integers counting sixths, so ``ch(v) = 2d(v) - 6`` is
stored as ``6 * (2d(v) - 6)`` and a connected plane graph always sums to
-72.  Rule amounts (in sixths):

    R1   strong 4-vertex      4-face 4, 5-face 2
    R2   normal 4-vertex      light 6, 5-face 2
    R3   weak 4-vertex        light 6, non-light 4-face 3 (at most one
                              special 5-face) or 2 (two), special 5-face 2,
                              other 5-face 1
    R4i  very weak, on a (4,4,4,3)-face
                              light 6, (4,4,4,3)-face 4, special 5-face 2,
                              other 5-face 0
    R4ii other very weak      light 6, every other 4- or 5-face 2
    R5   5-vertex             4-face 6, 5-face 4
    R6   6+-vertex            4-face 8, 5-face 4

Note the asymmetry: a weak vertex gives a non-special 5-face 1, a very
weak vertex on a (4,4,4,3)-face gives it 0.  Both are applied as written.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field

from .graph import GraphError, PlaneGraph

SCHEMA_VERSION = 1
TOTAL_SIXTHS = -72

LIGHT_PATTERNS = ((4, 4, 3, 3), (4, 5, 3, 3), (4, 3, 5, 3))

# face kinds
LIGHT, OTHER4, FIVE, BIG, SMALL = "light-4", "other-4", "five", "six-plus", "small"

# vertex classes
STRONG, NORMAL, WEAK, VERY_WEAK = "strong", "normal", "weak", "very-weak"
NOT4, UNCLASSIFIABLE = "not-4-vertex", "unclassifiable"


class DischargeError(GraphError):
    pass


def dihedral_canonical(seq) -> tuple[int, ...]:
    """Smallest rotation or reflection of a cyclic sequence."""
    seq = tuple(seq)
    k = len(seq)
    if k == 0:
        return seq
    cands = []
    for s in (seq, seq[::-1]):
        cands.extend(s[i:] + s[:i] for i in range(k))
    return min(cands)


_LIGHT_CANON = frozenset(dihedral_canonical(p) for p in LIGHT_PATTERNS)
_4443 = dihedral_canonical((4, 4, 4, 3))


def has_pattern(degrees, pattern) -> bool:
    return dihedral_canonical(degrees) == dihedral_canonical(pattern)


@dataclass(frozen=True)
class FaceInfo:
    index: int
    boundary: tuple[int, ...]
    degrees: tuple[int, ...]
    kind: str

    @property
    def size(self) -> int:
        return len(self.boundary)

    @property
    def threes(self) -> int:
        return sum(1 for d in self.degrees if d == 3)

    @property
    def is_4443(self) -> bool:
        return self.size == 4 and self.kind != SMALL and dihedral_canonical(self.degrees) == _4443

    @property
    def pattern(self) -> str:
        return "(" + ",".join(map(str, dihedral_canonical(self.degrees))) + ")"


def classify_faces(pg: PlaneGraph) -> list[FaceInfo]:
    """Kind of each face.  A boundary walk of length at most 5 that repeats a
    vertex is not a genuine 4- or 5-face and is filed as ``small`` along
    with faces of length at most 3."""
    deg = pg.graph.degrees()
    out = []
    for i, face in enumerate(pg.faces):
        b = face.boundary
        degs = tuple(deg[v] for v in b)
        k = len(b)
        if k >= 6:
            kind = BIG
        elif k <= 3 or len(set(b)) < k:
            kind = SMALL
        elif k == 5:
            kind = FIVE
        elif dihedral_canonical(degs) in _LIGHT_CANON:
            kind = LIGHT
        else:
            kind = OTHER4
        out.append(FaceInfo(i, b, degs, kind))
    return out


@dataclass(frozen=True)
class VertexClass:
    cls: str
    special_faces: frozenset = frozenset()
    on_4443: bool = False
    reason: str = ""


def _special_faces(pg: PlaneGraph, finfo, v: int) -> frozenset:
    deg = pg.graph.degrees()
    out = set()
    for u in pg.graph.neighbors(v):
        if deg[u] != 3:
            continue
        a, b = pg.edge_faces(v, u)
        kinds = (finfo[a].kind, finfo[b].kind)
        if kinds == (LIGHT, FIVE):
            out.add(b)
        elif kinds == (FIVE, LIGHT):
            out.add(a)
    return frozenset(out)


def classify_vertex(pg: PlaneGraph, finfo, v: int) -> VertexClass:
    if pg.graph.degree(v) != 4:
        return VertexClass(NOT4)
    corners = pg.corners(v)
    kinds = [finfo[f].kind for f in corners]
    light = [f for f in corners if finfo[f].kind == LIGHT]
    if not light:
        return VertexClass(STRONG)
    if len(light) > 1:
        return VertexClass(UNCLASSIFIABLE, reason="on two light 4-faces")
    rest = [f for f in corners if f != light[0]]
    if all(finfo[f].kind in (FIVE, BIG) for f in rest):
        return VertexClass(NORMAL)
    fours = [f for f in rest if finfo[f].kind == OTHER4]
    if SMALL in kinds:
        return VertexClass(UNCLASSIFIABLE, reason="light 4-face next to a face of length <= 3")
    if len(fours) != 1:
        return VertexClass(UNCLASSIFIABLE, reason="light 4-face and two further 4-faces")
    other = finfo[fours[0]]
    special = _special_faces(pg, finfo, v)
    if other.threes == 0:
        return VertexClass(WEAK, special)
    return VertexClass(VERY_WEAK, special, on_4443=other.is_4443)


def classify_vertices(pg: PlaneGraph, finfo=None) -> list[VertexClass]:
    finfo = finfo or classify_faces(pg)
    return [classify_vertex(pg, finfo, v) for v in range(pg.n)]


@dataclass(frozen=True)
class Transfer:
    from_vertex: int
    to_face: int
    amount_sixths: int
    rule: str
    case: str

    def to_document(self) -> dict:
        return {
            "from_vertex": self.from_vertex,
            "to_face": self.to_face,
            "amount_sixths": self.amount_sixths,
            "rule": self.rule,
            "case": self.case,
        }


def _rule(deg: int, vc: VertexClass, face: FaceInfo):
    """(rule, case, amount) for one vertex-face incidence, or None."""
    k = face.kind
    if k not in (LIGHT, OTHER4, FIVE) or deg < 4:
        return None
    if deg >= 6:
        return ("R6", "4-face", 8) if k != FIVE else ("R6", "5-face", 4)
    if deg == 5:
        return ("R5", "4-face", 6) if k != FIVE else ("R5", "5-face", 4)
    c = vc.cls
    if c == STRONG:
        return ("R1", "4-face", 4) if k != FIVE else ("R1", "5-face", 2)
    if c == NORMAL:
        # a normal vertex has no non-light 4-face
        return ("R2", "light", 6) if k == LIGHT else ("R2", "5-face", 2)
    special = face.index in vc.special_faces
    if c == WEAK:
        if k == LIGHT:
            return "R3", "light", 6
        if k == OTHER4:
            if len(vc.special_faces) <= 1:
                return "R3", "non-light-4, <=1 special", 3
            return "R3", "non-light-4, 2 special", 2
        return ("R3", "special-5", 2) if special else ("R3", "non-special-5", 1)
    if c == VERY_WEAK and vc.on_4443:
        if k == LIGHT:
            return "R4i", "light", 6
        if k == OTHER4:
            return "R4i", "(4,4,4,3)", 4
        return ("R4i", "special-5", 2) if special else ("R4i", "non-special-5", 0)
    if c == VERY_WEAK:
        return ("R4ii", "light", 6) if k == LIGHT else ("R4ii", "other", 2)
    raise DischargeError(f"vertex {c!r} has no rule")


def apply_rules(pg: PlaneGraph, finfo=None, classes=None) -> list[Transfer]:
    finfo = finfo or classify_faces(pg)
    classes = classes or classify_vertices(pg, finfo)
    bad = [(v, vc.reason) for v, vc in enumerate(classes) if vc.cls == UNCLASSIFIABLE]
    if bad:
        detail = "; ".join(f"vertex {v}: {why}" for v, why in bad)
        raise DischargeError(f"unclassifiable 4-vertices: {detail}")
    deg = pg.graph.degrees()
    out = []
    for v in range(pg.n):
        for f in pg.incident_faces(v):
            r = _rule(deg[v], classes[v], finfo[f])
            if r is not None:
                out.append(Transfer(v, f, r[2], r[0], r[1]))
    return out


@dataclass
class ChargeLedger:
    vertex_charge: list[int]
    face_charge: list[int]
    transfers: list[Transfer] = field(default_factory=list)

    def total(self) -> int:
        return sum(self.vertex_charge) + sum(self.face_charge)

    def settled(self) -> "ChargeLedger":
        vc = list(self.vertex_charge)
        fc = list(self.face_charge)
        for t in self.transfers:
            vc[t.from_vertex] -= t.amount_sixths
            fc[t.to_face] += t.amount_sixths
        return ChargeLedger(vc, fc, [])


def initial_charges(pg: PlaneGraph) -> ChargeLedger:
    if not pg.graph.is_connected():
        raise DischargeError("initial charges need a connected embedding")
    return ChargeLedger(
        [6 * (2 * d - 6) for d in pg.graph.degrees()],
        [6 * (f.degree - 6) for f in pg.faces],
    )


@dataclass
class Report:
    faces: list[FaceInfo]
    classes: list[VertexClass]
    initial: ChargeLedger
    transfers: list[Transfer]
    final: ChargeLedger

    @property
    def negative(self) -> list[tuple[str, int, int]]:
        out = [("vertex", v, c) for v, c in enumerate(self.final.vertex_charge) if c < 0]
        out += [("face", f, c) for f, c in enumerate(self.final.face_charge) if c < 0]
        return out

    def to_document(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "faces": [
                {"id": f.index, "boundary": list(f.boundary), "kind": f.kind, "pattern": f.pattern}
                for f in self.faces
            ],
            "classes": [
                {
                    "vertex": v,
                    "class": c.cls,
                    "special_faces": sorted(c.special_faces),
                    **({"on_4443": True} if c.on_4443 else {}),
                }
                for v, c in enumerate(self.classes)
                if c.cls != NOT4
            ],
            "initial": {"vertices": self.initial.vertex_charge, "faces": self.initial.face_charge},
            "transfers": [t.to_document() for t in self.transfers],
            "final": {"vertices": self.final.vertex_charge, "faces": self.final.face_charge},
            "negative": [{"kind": k, "id": i, "charge_sixths": c} for k, i, c in self.negative],
            "sum_sixths": self.final.total(),
        }


def final_report(pg: PlaneGraph) -> Report:
    finfo = classify_faces(pg)
    classes = classify_vertices(pg, finfo)
    initial = initial_charges(pg)
    transfers = apply_rules(pg, finfo, classes)
    final = ChargeLedger(initial.vertex_charge, initial.face_charge, transfers).settled()
    return Report(finfo, classes, initial, transfers, final)


def dumps_ledger(doc: dict) -> str:
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def rule_rows(transfers) -> Counter:
    return Counter((t.rule, t.case) for t in transfers)


# every (rule, case) pair the rules can emit
ALL_ROWS = frozenset({
    ("R1", "4-face"), ("R1", "5-face"),
    ("R2", "light"), ("R2", "5-face"),
    ("R3", "light"), ("R3", "non-light-4, <=1 special"), ("R3", "non-light-4, 2 special"),
    ("R3", "special-5"), ("R3", "non-special-5"),
    ("R4i", "light"), ("R4i", "(4,4,4,3)"), ("R4i", "special-5"), ("R4i", "non-special-5"),
    ("R4ii", "light"), ("R4ii", "other"),
    ("R5", "4-face"), ("R5", "5-face"),
    ("R6", "4-face"), ("R6", "5-face"),
})


# ---------------------------------------------------------------------------
# structural predicates


@dataclass(frozen=True)
class Occurrence:
    predicate: str
    vertices: tuple[int, ...]
    faces: tuple[int, ...]

    def to_document(self) -> dict:
        return {"predicate": self.predicate, "vertices": list(self.vertices), "faces": list(self.faces)}


def _real4(f: FaceInfo) -> bool:
    return f.kind in (LIGHT, OTHER4)


def check_structural_predicates(pg: PlaneGraph, finfo=None, classes=None) -> list[Occurrence]:
    """Local patterns that cannot occur in a minimal counterexample.

    ``two-heavy-4-faces``: a 4-vertex on two 4-faces that each hold at
    least two 3-vertices.  ``4443-meets-4433`` and ``4443-meets-4353``: a
    (4,4,4,3)-face and the named face share a 4-vertex.  ``very-weak-pair``:
    a (4+,4+,4+,3)-face holding two very weak vertices.  ``weak-triple``: a
    (4,4,4,4)-face with three weak vertices, one of them on a (4,3,5,3)-face.
    ``zero-face-no-5``: a very weak vertex sending 0 to a 5-face without a
    5-neighbour on that face.
    """
    finfo = finfo or classify_faces(pg)
    classes = classes or classify_vertices(pg, finfo)
    g = pg.graph
    deg = g.degrees()
    out = []
    for v in range(g.n):
        if deg[v] != 4:
            continue
        fours = [finfo[f] for f in pg.incident_faces(v) if _real4(finfo[f])]
        for i, a in enumerate(fours):
            for b in fours[i + 1:]:
                if a.threes >= 2 and b.threes >= 2:
                    out.append(Occurrence("two-heavy-4-faces", (v,), (a.index, b.index)))
        for other, name in (((4, 4, 3, 3), "4443-meets-4433"), ((4, 3, 5, 3), "4443-meets-4353")):
            for a in fours:
                if not a.is_4443:
                    continue
                for b in fours:
                    if b is not a and has_pattern(b.degrees, other):
                        out.append(Occurrence(name, (v,), (a.index, b.index)))
    for f in finfo:
        if not _real4(f):
            continue
        if f.threes == 1 and all(d >= 3 for d in f.degrees):
            vw = tuple(sorted(v for v in f.boundary if classes[v].cls == VERY_WEAK))
            if len(vw) >= 2:
                out.append(Occurrence("very-weak-pair", vw, (f.index,)))
        if f.degrees == (4, 4, 4, 4):
            weak = [v for v in f.boundary if classes[v].cls == WEAK]
            trigger = any(
                has_pattern(finfo[h].degrees, (4, 3, 5, 3))
                for v in weak for h in pg.incident_faces(v) if finfo[h].kind == LIGHT
            )
            if trigger and len(weak) >= 3:
                out.append(Occurrence("weak-triple", tuple(sorted(weak)), (f.index,)))
    for v, vc in enumerate(classes):
        if vc.cls != VERY_WEAK or not vc.on_4443:
            continue
        for f in pg.incident_faces(v):
            fi = finfo[f]
            if fi.kind != FIVE or f in vc.special_faces:
                continue
            along = {u for u in g.neighbors(v) if f in pg.edge_faces(v, u)}
            if not any(deg[u] == 5 for u in along):
                out.append(Occurrence("zero-face-no-5", (v,), (f,)))
    return out
