"""Registry of small configurations with a colourability claim each, plus
the machinery to cross-check the transcription and verify the claims."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .coloring import (
    DEFAULT_NODE_CAP,
    Verdict,
    check_preceq,
    cut_quotas,
    is_dp_colorable,
    lemma_key_hypotheses,
    replay_witness,
    scale,
)
from .cover import DEFAULT_CAP, CoverSpace, CoverSpaceTooLarge
from .graph import Graph, build_graph

SCHEMA_VERSION = 1


class RegistryError(ValueError):
    pass


@dataclass(frozen=True)
class Claim:
    kind: str  # "dp-colorable" or "preceq"
    f: tuple[int, ...]
    g: tuple[int, ...]
    h: tuple[int, ...] | None = None
    X: tuple[int, ...] | None = None

    def scaled(self, m: int) -> "Claim":
        return Claim(self.kind, scale(self.f, m), scale(self.g, m),
                     scale(self.h, m) if self.h is not None else None, self.X)


@dataclass(frozen=True)
class Entry:
    id: str
    graph: Graph
    claim: Claim
    total_degree: tuple[int, ...] | None
    crosschecks: tuple = ()
    source: str = ""
    group: str = "extra"


def _entry_from_doc(doc: dict) -> Entry:
    try:
        n = doc["n"]
        g = build_graph([tuple(e) for e in doc["edges"]], n)
        c = doc["claim"]
        claim = Claim(
            c["kind"], tuple(c["f"]), tuple(c["g"]),
            tuple(c["h"]) if "h" in c else None,
            tuple(c["X"]) if "X" in c else None,
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise RegistryError(f"entry {doc.get('id')!r}: {exc}") from None
    if claim.kind not in ("dp-colorable", "preceq"):
        raise RegistryError(f"entry {doc['id']!r}: unknown claim kind {claim.kind!r}")
    td = tuple(doc["total_degree"]) if doc.get("total_degree") is not None else None
    return Entry(doc["id"], g, claim, td, tuple(doc.get("crosschecks", ())),
                 doc.get("source", ""), doc.get("group", "extra"))


def load_registry(path=None) -> list[Entry]:
    if path is None:
        text = resources.files("dplab").joinpath("data/registry.json").read_text()
    else:
        text = Path(path).read_text()
    docs = json.loads(text)
    entries = [_entry_from_doc(d) for d in docs]
    ids = [e.id for e in entries]
    if len(set(ids)) != len(ids):
        raise RegistryError("duplicate entry ids")
    return entries


def registry(path=None) -> list[Entry]:
    return load_registry(path)


def get_entry(entry_id: str, entries=None) -> Entry:
    for e in entries if entries is not None else load_registry():
        if e.id == entry_id:
            return e
    raise KeyError(entry_id)


# ---------------------------------------------------------------------------
# transcription cross-checks (all at m = 1)


def _compare(got, want, how: str) -> bool:
    if how == "eq":
        return tuple(got) == tuple(want)
    return all(a >= b for a, b in zip(got, want)) and len(got) == len(want)


def _is_induced_path(g: Graph, vs) -> bool:
    vs = list(vs)
    for a in range(len(vs)):
        for b in range(a + 1, len(vs)):
            if g.has_edge(vs[a], vs[b]) != (b == a + 1):
                return False
    return True


def crosscheck(entry: Entry, entries=None) -> list[str]:
    """Problems found in the entry's transcription; empty when consistent."""
    g, c = entry.graph, entry.claim
    out = []
    n = g.n
    for name, q in (("f", c.f), ("g", c.g)):
        if len(q) != n:
            out.append(f"{name} has {len(q)} values for {n} vertices")
    if out:
        return out
    if any(a > b for a, b in zip(c.g, c.f)):
        out.append("g exceeds f")
    if c.kind == "preceq":
        if c.X is None or c.h is None or len(c.h) != n:
            out.append("preceq claim needs X and a full h")
        elif any(c.h[v] > c.g[v] for v in c.X):
            out.append("h exceeds g on X")
    if entry.total_degree is not None:
        td = entry.total_degree
        for v in range(n):
            if td[v] < g.degree(v):
                out.append(f"v{v + 1}: total degree {td[v]} below degree {g.degree(v)}")
            want = 7 - 2 * (td[v] - g.degree(v))
            if want != c.f[v]:
                out.append(f"v{v + 1}: degree label gives f={want}, claim has {c.f[v]}")
    for chk in entry.crosschecks:
        kind = chk["type"]
        if kind == "induces_path":
            if not _is_induced_path(g, chk["vertices"]):
                out.append(f"{chk['vertices']} does not induce a path")
        elif kind == "adjacent_sums":
            k = n if chk["cyclic"] else n - 1
            for i in range(k):
                j = (i + 1) % n
                if c.f[i] + c.f[j] < chk["min"]:
                    out.append(f"f(v{i + 1}) + f(v{j + 1}) below {chk['min']}")
            if any(x not in chk["values"] for x in c.f):
                out.append("list sizes outside the allowed values")
        elif kind == "lemma_key":
            bad = lemma_key_hypotheses(c.f, c.g, chk["p"])
            out.extend(f"lemma hypotheses: {b}" for b in bad)
        elif kind == "cut_reduction":
            V1, V2 = chk["V1"], chk["V2"]
            X = sorted(set(V1) & set(V2))
            h = [0] * n
            for v, x in chk["h"].items():
                h[int(v)] = x
            if set(V1) | set(V2) != set(range(n)):
                out.append("cut sides do not cover the graph")
            for u, v in g.edges:
                if (u in V1 and u not in X and v in V2 and v not in X) or (
                    v in V1 and v not in X and u in V2 and u not in X
                ):
                    out.append(f"edge v{u + 1}v{v + 1} crosses the cut")
            fp, gp = cut_quotas(g, X, V2, c.f, c.g, h)
            fv = [fp[v] for v in sorted(V2)]
            gv = [gp[v] for v in sorted(V2)]
            if not _compare(fv, chk["expect_f"], chk["compare"]):
                out.append(f"cut reduction gives f'={fv}, expected {chk['expect_f']}")
            if "expect_g" in chk and gv != chk["expect_g"]:
                out.append(f"cut reduction gives g'={gv}, expected {chk['expect_g']}")
        elif kind == "removal":
            R = set(chk["remove"])
            ignore = {tuple(sorted(e)) for e in chk["ignore_edges"]}
            commit = {int(v): x for v, x in chk["commit"].items()}
            rest = [v for v in range(n) if v not in R]
            fv = []
            for v in rest:
                lost = sum(chk["quota"] for u in g.neighbors(v)
                           if u in R and tuple(sorted((u, v))) not in ignore)
                fv.append(c.f[v] - lost - commit.get(v, 0))
            if not _compare(fv, chk["expect_f"], chk["compare"]):
                out.append(f"removal gives f'={fv}, expected {chk['expect_f']}")
        elif kind == "cor_key":
            a, b, cc = chk["path"]
            k = chk["k"]
            if not _is_induced_path(g, [a, b, cc]):
                out.append("cor_key path is not induced")
            fv, gv = [], []
            for v in range(n):
                if v == b:
                    fv.append(c.f[v] - k)
                else:
                    fv.append(c.f[v] - k * len({a, cc} & set(g.closed_neighborhood(v))))
                gv.append(c.g[v] - k if v in (a, cc) else c.g[v])
            if fv != chk["expect_f"] or gv != chk["expect_g"]:
                out.append(f"reduction gives f'={fv}, g'={gv}")
        elif kind == "same_graph":
            try:
                other = get_entry(chk["id"], entries)
            except KeyError:
                out.append(f"unknown entry {chk['id']!r}")
                continue
            if other.graph != g or other.claim.f != c.f or other.claim.g != c.g:
                out.append(f"differs from {chk['id']}")
        else:
            out.append(f"unknown cross-check {kind!r}")
    return out


# ---------------------------------------------------------------------------
# verification


@dataclass
class EntryResult:
    id: str
    m: int
    status: str  # verified, partial, refuted, statistical, undecided, skipped, error
    verdict: Verdict | None = None
    problems: list[str] = field(default_factory=list)
    covers_total: int | None = None

    @property
    def mode(self) -> str:
        return self.verdict.mode if self.verdict is not None else "none"

    def to_document(self) -> dict:
        v = self.verdict
        return {
            "id": self.id,
            "m": self.m,
            "status": self.status,
            "verdict": v.answer if v is not None else None,
            "mode": self.mode,
            "covers_checked": v.covers_checked if v is not None else 0,
            "covers_total": self.covers_total,
            "nodes_expanded": v.nodes_expanded if v is not None else 0,
            "problems": self.problems,
        }


def cover_space_size(entry: Entry, m: int = 1) -> int:
    return CoverSpace(entry.graph, entry.claim.scaled(m).f).size


def run_claim(graph: Graph, claim: Claim, **kw) -> Verdict:
    if claim.kind == "dp-colorable":
        return is_dp_colorable(graph, claim.f, claim.g, **kw)
    return check_preceq(graph, claim.X, claim.f, claim.g, claim.h, **kw)


def verify_entry(entry_id, m: int = 1, *, cap: int = DEFAULT_CAP, sample: int | None = None,
                 allow_sampling: bool = False, seed: int = 0, node_cap: int = DEFAULT_NODE_CAP,
                 shard=None, workers: int = 1, checkpoint=None, entries=None) -> EntryResult:
    """Cross-check the entry and decide its claim at multiplier ``m``.

    Exhaustive when the cover family fits under ``cap``.  Otherwise, only
    if ``allow_sampling`` is set, ``sample`` random covers are tried and
    the result is labelled statistical.
    """
    if m < 1:
        raise ValueError("m must be a positive integer")
    entries = entries if entries is not None else load_registry()
    entry = entry_id if isinstance(entry_id, Entry) else get_entry(entry_id, entries)
    problems = crosscheck(entry, entries)
    if problems:
        return EntryResult(entry.id, m, "error", problems=problems)
    claim = entry.claim.scaled(m)
    size = CoverSpace(entry.graph, claim.f).size
    kw = dict(node_cap=node_cap, shard=shard, workers=workers, checkpoint=checkpoint)
    if size <= cap:
        v = run_claim(entry.graph, claim, cap=cap, **kw)
    elif allow_sampling:
        v = run_claim(entry.graph, claim, sample=sample or 10**5, seed=seed, **kw)
    else:
        raise CoverSpaceTooLarge(size, cap)
    if v.answer is False:
        problems = [] if replay_witness(v, node_cap) else ["witness did not replay"]
        status = "refuted"
    elif v.answer is None:
        status = "undecided"
    elif v.mode != "exhaustive":
        status = "statistical"
    else:
        # a shard covers only part of the family
        status = "verified" if v.covers_total == size else "partial"
    return EntryResult(entry.id, m, status, v, problems, size)


@dataclass
class Summary:
    m: int
    results: list[EntryResult]

    @property
    def ok(self) -> bool:
        return not any(r.status in ("refuted", "error", "undecided") for r in self.results)

    def counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for r in self.results:
            out[r.status] = out.get(r.status, 0) + 1
        return dict(sorted(out.items()))

    def to_document(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "m": self.m,
            "ok": self.ok,
            "counts": self.counts(),
            "entries": [r.to_document() for r in self.results],
        }


def verify_all(m: int = 1, budget: int | None = None, *, ids=None, sample: int | None = None,
               allow_sampling: bool = False, seed: int = 0, cap: int = DEFAULT_CAP,
               entries=None, **kw) -> Summary:
    """Verify every entry (or those in ``ids``).  ``budget`` bounds the
    cover-family size an entry may have; larger entries are skipped, so a
    zero budget skips everything."""
    entries = entries if entries is not None else load_registry()
    results = []
    done: dict = {}  # several figures repeat an earlier claim verbatim
    for e in entries:
        if ids is not None and e.id not in ids:
            continue
        problems = crosscheck(e, entries)
        if problems:
            results.append(EntryResult(e.id, m, "error", problems=problems))
            continue
        size = CoverSpace(e.graph, e.claim.scaled(m).f).size
        if budget is not None and size > budget:
            results.append(EntryResult(e.id, m, "skipped", covers_total=size,
                                       problems=[f"cover family of {size} exceeds budget {budget}"]))
            continue
        key = (e.graph, e.claim)
        if key in done:
            first = done[key]
            results.append(EntryResult(e.id, m, first.status, first.verdict,
                                       first.problems + [f"same claim as {first.id}"], size))
            continue
        try:
            res = verify_entry(e, m, cap=cap, sample=sample, allow_sampling=allow_sampling,
                               seed=seed, entries=entries, **kw)
        except CoverSpaceTooLarge as exc:
            res = EntryResult(e.id, m, "skipped", covers_total=exc.size, problems=[str(exc)])
        done[key] = res
        results.append(res)
    return Summary(m, results)


# ---------------------------------------------------------------------------
# falsifiability


@dataclass
class MutationReport:
    id: str
    m: int
    trials: list[dict]

    @property
    def refuted(self) -> int:
        return sum(1 for t in self.trials if t["answer"] is False and t["replayed"])

    def to_document(self) -> dict:
        return {"id": self.id, "m": self.m, "refuted": self.refuted, "trials": self.trials}


def perturbations(claim: Claim, m: int) -> list[tuple[int, ...]]:
    """List-size maps one step of m below the claim at a single vertex,
    kept at or above g."""
    out = []
    for v, (a, b) in enumerate(zip(claim.f, claim.g)):
        if a - m >= b and a - m >= 0:
            f = list(claim.f)
            f[v] -= m
            out.append(tuple(f))
    return out


def mutation_test(entry_id, m: int = 1, trials: int | None = None, seed: int = 0,
                  cap: int = DEFAULT_CAP, entries=None, **kw) -> MutationReport:
    """Shrink one list at a time and check that the claim can fail."""
    entries = entries if entries is not None else load_registry()
    entry = entry_id if isinstance(entry_id, Entry) else get_entry(entry_id, entries)
    claim = entry.claim.scaled(m)
    cands = perturbations(claim, m)
    random.Random(seed).shuffle(cands)
    if trials is not None:
        cands = cands[:trials]
    out = []
    for f in cands:
        c2 = Claim(claim.kind, f, claim.g, claim.h, claim.X)
        try:
            v = run_claim(entry.graph, c2, cap=cap, **kw)
        except CoverSpaceTooLarge:
            out.append({"f": list(f), "answer": None, "replayed": False, "note": "too large"})
            continue
        replayed = v.answer is False and replay_witness(v)
        out.append({"f": list(f), "answer": v.answer, "replayed": replayed,
                    "covers_checked": v.covers_checked})
    return MutationReport(entry.id, m, out)


def refute(graph: Graph, f, g, **kw) -> Verdict:
    """DP-colourability check meant to fail; the verdict's witness is
    replayed before it is returned."""
    v = is_dp_colorable(graph, f, g, **kw)
    if v.answer is False and not replay_witness(v):
        raise AssertionError("witness cover did not replay")
    return v



# ---------------------------------------------------------------------------
# parameter sweep over the 3-path key lemma


def lemma_key_instances(fmax=(5, 7, 5), fmin: int = 0):
    """Every (f, g, p) on the 3-path with fmin <= f <= fmax pointwise,
    0 <= g <= f, and both numeric hypotheses of the key lemma holding."""
    from itertools import product

    for f in product(*[range(fmin, k + 1) for k in fmax]):
        for g in product(*[range(x + 1) for x in f]):
            for p in range(min(g[0], g[2]) + 1):
                if not lemma_key_hypotheses(f, g, p):
                    yield f, g, p


def lemma_key_sweep(fmax=(5, 7, 5), fmin: int = 0, **kw):
    """Run every instance; returns ``(count, failures)`` where failures are
    the verdicts that were not TRUE."""
    from .coloring import check_lemma_key_instance

    count = 0
    bad = []
    for f, g, p in lemma_key_instances(fmax, fmin):
        count += 1
        v = check_lemma_key_instance(f, g, p, **kw)
        if v.answer is not True:
            bad.append(v)
    return count, bad
