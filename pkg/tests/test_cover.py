from itertools import permutations, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dplab.coloring import find_multicoloring
from dplab.cover import (
    Cover,
    CoverError,
    CoverSpace,
    CoverSpaceTooLarge,
    TreeParts,
    count_covers,
    delete_closed_neighborhood,
    dumps_cover,
    enumerate_covers,
    from_list_assignment,
    identity_cover,
    injections,
    loads_cover,
    make_cover,
    normalize,
    relabel,
    restrict,
    sample_cover,
    spanning_forest,
)
from dplab.graph import build_graph
from dplab.oracle import raw_matchings

P3 = build_graph([(0, 1), (1, 2)])
C4 = build_graph([(0, 1), (1, 2), (2, 3), (3, 0)])
STAR = build_graph([(0, 1), (0, 2), (0, 3)])


def _raw_covers(g, f):
    per = [raw_matchings(f[u], f[v]) for u, v in g.edges]
    for ms in product(*per):
        yield Cover(g, tuple(f), tuple(tuple(sorted(m)) for m in ms))


def _orbit_key(c, group):
    return min(relabel(c, perm).matchings for perm in group)


def _orbit_count(g, f):
    group = list(product(*[list(permutations(range(k))) for k in f]))
    return len({_orbit_key(c, group) for c in _raw_covers(g, f)})


@pytest.mark.parametrize(
    "g,f",
    [
        (P3, (3, 3, 3)),
        (P3, (2, 3, 2)),
        (P3, (3, 2, 3)),
        (STAR, (3, 2, 2, 2)),
        (STAR, (2, 3, 3, 1)),
        (build_graph([(0, 1), (1, 2), (2, 3)]), (2, 3, 2, 3)),
    ],
)
def test_tree_parts_match_orbit_count(g, f):
    # on a tree every cover is its tree part, so the canonical family is
    # exactly one member per relabelling orbit
    assert len(TreeParts(g, f)) == _orbit_count(g, f)


def test_known_tree_counts():
    assert count_covers(P3, (3, 4, 3)) == 2
    assert count_covers(P3, (6, 8, 6)) == 3
    assert count_covers(build_graph([(0, 1)]), (5, 5)) == 1


def test_cycle_count_is_tree_times_chord():
    assert count_covers(C4, (3, 5, 3, 5)) == 180
    assert count_covers(C4, (3, 3, 3, 3)) == 6


@pytest.mark.parametrize("g,f", [(C4, (2, 2, 2, 2)), (C4, (2, 3, 2, 2)),
                                 (build_graph([(0, 1), (1, 2), (2, 0)]), (2, 2, 3))])
def test_every_raw_cover_normalizes_into_the_family(g, f):
    family = {c.matchings for c in CoverSpace(g, f)}
    for c in _raw_covers(g, f):
        assert normalize(c).matchings in family


def test_space_indexing_agrees_with_iteration():
    space = CoverSpace(C4, (3, 4, 3, 4))
    listed = list(space)
    assert len(listed) == space.size
    for k in (0, 1, space.size // 2, space.size - 1):
        assert space[k] == listed[k]
    assert list(space.iter_range(5, 9)) == listed[5:9]
    with pytest.raises(IndexError):
        space[space.size]


def test_tree_parts_unrank_from_any_rank():
    tp = TreeParts(build_graph([(0, 1), (1, 2), (1, 3), (3, 4)]), (3, 6, 3, 4, 2))
    allp = list(tp)
    assert len(allp) == len(tp)
    for r in range(len(tp)):
        assert tp[r] == allp[r]
        assert next(tp.iter_from(r)) == allp[r]


def test_enumeration_cap():
    with pytest.raises(CoverSpaceTooLarge):
        list(enumerate_covers(C4, (5, 5, 5, 5), cap=10))


def test_cover_validation():
    with pytest.raises(CoverError):
        make_cover(P3, (2, 2, 2), {(0, 1): [(0, 0), (1, 0)], (1, 2): [(0, 0), (1, 1)]})
    with pytest.raises(CoverError):
        make_cover(P3, (2, 2, 2), {(0, 1): [(0, 0)], (1, 2): [(0, 0), (1, 1)]})
    c = make_cover(P3, (2, 2, 2), {(0, 1): [(0, 0)]}, strict=False)
    assert not c.is_saturated()
    with pytest.raises(CoverError):
        make_cover(P3, (2, 2, 2), {(0, 2): [(0, 0)]}, strict=False)


def test_matching_orientation():
    c = make_cover(P3, (2, 3, 2), {(1, 0): [(2, 0), (0, 1)], (1, 2): [(0, 0), (1, 1)]})
    assert c.matching(0, 1) == ((0, 2), (1, 0))
    assert c.matching(1, 0) == ((0, 1), (2, 0))


def test_list_assignment_embedding():
    lists = [["a", "b"], ["b", "c"], ["a", "c"]]
    tri = build_graph([(0, 1), (1, 2), (2, 0)])
    c, palette = from_list_assignment(tri, lists)
    col = find_multicoloring(c, 1)
    assert col is not None
    picked = [palette[v][col[v][0]] for v in range(3)]
    assert all(picked[u] != picked[v] for u, v in tri.edges)
    bad, _ = from_list_assignment(tri, [["a", "b"]] * 3)
    assert find_multicoloring(bad, 1) is None


def test_delete_closed_neighborhood():
    c = identity_cover(P3, (3, 3, 3))
    sub = delete_closed_neighborhood(c, [(1, 0)])
    assert sub.sizes == (2, 2, 2)
    assert sub.kept == ((1, 2), (1, 2), (1, 2))
    assert sub.cover.matchings == (((0, 0), (1, 1)), ((0, 0), (1, 1)))


def test_restrict():
    c = identity_cover(P3, (3, 3, 3))
    sub = restrict(c, [[0, 2], [2], [0, 1, 2]])
    assert sub.sizes == (2, 1, 3)
    assert sub.cover.matchings == (((1, 0),), ((0, 2),))


def test_document_round_trip():
    c = sample_cover(C4, (3, 4, 3, 4), seed=5, index=2)
    assert loads_cover(dumps_cover(c)) == c
    assert loads_cover(dumps_cover(c), C4) == c


def test_sampling_is_indexed():
    a = sample_cover(C4, (3, 3, 3, 3), 1, 7)
    assert a == sample_cover(C4, (3, 3, 3, 3), 1, 7)
    assert a.is_saturated()


def test_injections_count_and_order():
    inj = injections(2, 3)
    assert len(inj) == 6
    assert inj[0] == ((0, 0), (1, 1))
    assert injections(3, 2)[0] == ((0, 0), (1, 1))


def test_spanning_forest_covers_all_vertices():
    tree, rest = spanning_forest(C4)
    assert len(tree) == 3 and len(rest) == 1
    assert {tuple(sorted(e)) for e in tree} | set(rest) == set(C4.edges)


GRAPHS = [P3, C4, STAR, build_graph([(0, 1), (1, 2), (2, 0), (2, 3)])]


@st.composite
def covers(draw):
    g = draw(st.sampled_from(GRAPHS))
    f = tuple(draw(st.integers(1, 4)) for _ in range(g.n))
    seed = draw(st.integers(0, 10**6))
    return sample_cover(g, f, seed, 0)


@st.composite
def relabellings(draw, c):
    return [draw(st.permutations(range(k))) for k in c.list_size]


@settings(max_examples=60, deadline=None)
@given(covers(), st.data())
def test_normalize_is_relabelling_invariant_on_the_tree(c, data):
    perm = data.draw(relabellings(c))
    a, b = normalize(c), normalize(relabel(c, perm))
    tree, _ = spanning_forest(c.base)
    for u, v in tree:
        assert a.matching(u, v) == b.matching(u, v)
    # isomorphic covers have the same colourability
    for q in (1, 2):
        if all(q <= k for k in c.list_size):
            assert (find_multicoloring(a, q) is None) == (find_multicoloring(c, q) is None)


@settings(max_examples=60, deadline=None)
@given(covers())
def test_normalize_is_idempotent_and_lands_in_family(c):
    n1 = normalize(c)
    assert normalize(n1) == n1
    trees = list(TreeParts(c.base, c.list_size))
    tree, _ = spanning_forest(c.base)
    got = {tuple(sorted(e)): n1.matching(*sorted(e)) for e in tree}
    assert any(all(t[e] == got[e] for e in got) for t in trees)
