import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dplab.coloring import (
    ColoringTask,
    CoverSolver,
    LemmaHypothesisError,
    QuotaError,
    check_cut_reduction,
    check_gluing,
    check_lemma_key_instance,
    check_monotonicity,
    check_multicoloring,
    check_preceq,
    colorings_of_subset,
    find_multicoloring,
    is_dp_colorable,
    lemma_key_hypotheses,
    path_graph,
    replay_witness,
    strongly_extendable_coloring,
)
from dplab.cover import CoverSpace, CoverSpaceTooLarge, identity_cover, make_cover, sample_cover
from dplab.graph import build_graph
from dplab.oracle import raw_is_dp_colorable, raw_preceq

K2 = build_graph([(0, 1)])
P3 = path_graph(3)
C4 = build_graph([(0, 1), (1, 2), (2, 3), (3, 0)])
TRI = build_graph([(0, 1), (1, 2), (2, 0)])


def test_solver_finds_valid_colouring():
    c = sample_cover(C4, (5, 5, 5, 5), 3, 0)
    col = find_multicoloring(c, 2)
    assert col is not None
    assert check_multicoloring(c, 2, col) == []


def test_check_multicoloring_reports_conflicts():
    c = identity_cover(K2, (2, 2))
    assert check_multicoloring(c, 1, [(0,), (0,)]) == ["(0,0) and (1,0) are joined"]
    assert "quota" in check_multicoloring(c, 1, [(0, 1), (1,)])[0]


def test_solver_respects_fixed_colours():
    c = identity_cover(P3, (3, 3, 3))
    s = CoverSolver(c)
    col = s.solve(1, fixed={1: [2]})
    assert col[1] == (2,) and 2 not in col[0] and 2 not in col[2]
    assert s.solve(2, fixed={0: [0, 1], 2: [1, 2]}) is None
    with pytest.raises(QuotaError):
        s.solve(4)


def test_counting_bound_forces_failure():
    # an identity cover of K2 with f=3 cannot carry 2+2 colours
    assert find_multicoloring(identity_cover(K2, (3, 3)), 2) is None
    assert find_multicoloring(identity_cover(K2, (4, 4)), 2) is not None


@pytest.mark.parametrize(
    "g,f,q,want",
    [
        (K2, (3, 3), 2, False),
        (K2, (4, 4), 2, True),
        (P3, (3, 3, 3), 2, False),
        (C4, (3, 3, 3, 3), 2, False),
        (C4, (2, 2, 2, 2), 1, False),
        (TRI, (3, 3, 3), 1, True),
        (TRI, (2, 2, 2), 1, False),
        (P3, (2, 3, 2), 1, True),
    ],
)
def test_decision_against_raw_oracle(g, f, q, want):
    v = is_dp_colorable(g, f, q)
    assert v.answer is want
    assert raw_is_dp_colorable(g, f, (q,) * g.n).answer is want
    if not want:
        assert replay_witness(v)


def test_verdict_counts_and_document():
    v = is_dp_colorable(C4, (3, 5, 3, 5), 2)
    assert v.answer is True
    assert v.covers_checked == v.covers_total == 180
    doc = v.to_document()
    assert doc["mode"] == "exhaustive" and "witness_cover" not in doc


def test_cap_raises():
    with pytest.raises(CoverSpaceTooLarge):
        is_dp_colorable(C4, (5, 5, 5, 5), 2, cap=100)


def test_statistical_mode():
    v = is_dp_colorable(C4, (5, 5, 5, 5), 2, sample=50, seed=1)
    assert v.mode == "statistical" and v.covers_checked == 50 and v.answer is True


def test_node_cap_gives_undecided():
    v = is_dp_colorable(C4, (4, 4, 4, 4), 2, node_cap=1)
    assert v.answer is None and v.budget_exhausted > 0


def test_quota_order_enforced():
    with pytest.raises(QuotaError):
        is_dp_colorable(K2, (2, 2), (3, 1))
    with pytest.raises(QuotaError):
        check_preceq(P3, [0], (3, 3, 3), 1, (2, 0, 0))
    with pytest.raises(QuotaError):
        check_preceq(P3, [5], (3, 3, 3), 1, 1)


@pytest.mark.parametrize("radix", [1, 10**9])
def test_batched_scan_matches_per_cover(radix):
    g = build_graph([(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])
    f = (3, 5, 3, 5)
    space = CoverSpace(g, f)
    per_cover = [find_multicoloring(c, 2) is not None for c in space]
    task = ColoringTask(g, f, None, 0, (2, 2, 2, 2), batch_min_radix=radix)
    got = [ok for ok, _ in task.iter_checks(0, space.size)]
    assert got == per_cover
    # an unaligned window
    assert [ok for ok, _ in task.iter_checks(7, 131)] == per_cover[7:131]


def test_colorings_of_subset_augments():
    c = identity_cover(P3, (3, 3, 3))
    got = list(colorings_of_subset(c, 2, [0], within={0: (1,)}))
    assert got == [{0: (0, 1)}, {0: (1, 2)}]
    assert list(colorings_of_subset(c, 2, [0, 1], within={0: (0, 1)})) == []


def test_preceq_corollary_examples():
    # 3,4,3 path with both ends fixed at two colours
    assert check_preceq(P3, [0, 2], (3, 4, 3), 2, (2, 0, 2)).answer is True
    # 3,5,3 path with one colour fixed at each end
    assert check_preceq(P3, [0, 2], (3, 5, 3), 2, (1, 0, 1)).answer is True
    # with 3,3,3 nothing survives
    v = check_preceq(P3, [0, 2], (3, 3, 3), 2, (2, 0, 2))
    assert v.answer is False and replay_witness(v)


def test_preceq_matches_raw_brute_force_small():
    cases = [
        (K2, [0], (3, 3), (1, 1), (1, 0)),
        (K2, [0], (2, 3), (1, 2), (1, 0)),
        (P3, [0, 2], (2, 3, 2), (1, 1, 1), (1, 0, 1)),
        (P3, [1], (2, 3, 2), (1, 2, 1), (1, 0, 0)),
        (P3, [0], (2, 2, 2), (1, 1, 1), (1, 0, 0)),
    ]
    for g, X, f, gq, h in cases:
        assert check_preceq(g, X, f, gq, h).answer == raw_preceq(g, X, f, gq, h).answer


def test_strong_extendability_needs_an_augmentation():
    # phi = {0} at vertex 0 leaves vertex 1 with one colour; the only
    # augmentations of phi must keep it extendable
    c = identity_cover(K2, (2, 2))
    phi, _ = strongly_extendable_coloring(c, [0], (1, 0), (1, 1))
    assert phi == {0: (0,)}


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([K2, P3, C4, TRI]), st.data())
def test_full_set_preceq_is_colourability(g, data):
    f = tuple(data.draw(st.integers(1, 3)) for _ in range(g.n))
    q = tuple(data.draw(st.integers(1, x)) for x in f)
    a = check_preceq(g, range(g.n), f, q, q).answer
    b = is_dp_colorable(g, f, q).answer
    assert a == b


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([K2, P3, C4]), st.data())
def test_decision_agrees_with_oracle_property(g, data):
    f = tuple(data.draw(st.integers(1, 3)) for _ in range(g.n))
    q = tuple(data.draw(st.integers(1, x)) for x in f)
    assert is_dp_colorable(g, f, q).answer == raw_is_dp_colorable(g, f, q).answer


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([K2, P3, C4]), st.data())
def test_shrinking_a_list_never_helps(g, data):
    f = tuple(data.draw(st.integers(2, 4)) for _ in range(g.n))
    q = tuple(data.draw(st.integers(1, x - 1)) for x in f)
    v = data.draw(st.integers(0, g.n - 1))
    smaller = tuple(x - 1 if i == v else x for i, x in enumerate(f))
    if is_dp_colorable(g, f, q).answer is False:
        assert is_dp_colorable(g, smaller, q).answer is False


def test_monotonicity_example():
    imp = check_monotonicity(P3, [0, 2], (3, 5, 3), 2, (1, 0, 1), h_prime=(2, 0, 2))
    assert imp.premises_hold and imp.holds is True
    same = check_monotonicity(P3, [0, 2], (3, 5, 3), 2, (1, 0, 1), h_prime=(1, 0, 1))
    assert same.holds is True
    with pytest.raises(QuotaError):
        check_monotonicity(P3, [0, 2], (3, 5, 3), 2, (1, 0, 1), X_prime=[1])


def test_restriction_counterexample_is_real():
    # shrinking X can lose strong extendability; the brute force agrees
    P4 = path_graph(4)
    f, g, h = (5, 3, 2, 5), (1, 1, 2, 1), (0, 0, 1, 0)
    imp = check_monotonicity(P4, [2, 3], f, g, h, X_prime=[3])
    assert imp.premises_hold and imp.holds is False
    assert raw_preceq(P4, [2, 3], f, g, h).answer is True
    assert raw_preceq(P4, [3], f, g, h).answer is False


def test_gluing_example_five_path():
    P5 = path_graph(5)
    f = (3, 5, 3, 5, 3)
    imp = check_gluing(P5, [0, 1, 2], [2, 3, 4], [0, 2], [2, 4], f, 2,
                       (1, 0, 1, 0, 0), (0, 0, 1, 0, 1))
    assert imp.premises_hold and imp.holds is True
    assert check_preceq(P5, [0, 2, 4], f, 2, (1, 0, 2, 0, 1)).answer is True


def test_five_path_with_one_colour_in_the_middle_fails():
    # one fixed colour at the shared vertex cannot serve both sides
    v = check_preceq(path_graph(5), [0, 2, 4], (3, 5, 3, 5, 3), 2, (1, 0, 1, 0, 1))
    assert v.answer is False and replay_witness(v)


def test_gluing_rejects_non_separating_split():
    with pytest.raises(QuotaError):
        check_gluing(C4, [0, 1, 2], [2, 3], [2], [2], 3, 1, 0, 0)


def test_cut_reduction_example():
    # two 3,5,3 paths sharing an end
    P5 = path_graph(5)
    imp = check_cut_reduction(P5, [0, 1, 2], [2, 3, 4], (3, 5, 3, 5, 3), 2, (0, 0, 1, 0, 0))
    assert imp.holds is True
    assert imp.conclusion.answer is True


def test_cut_reduction_vacuous_when_lists_run_out():
    imp = check_cut_reduction(P3, [0, 1], [1, 2], (1, 2, 1), (1, 2, 1), (0, 2, 0))
    assert "vacuous" in imp.note
    assert imp.holds is True


def test_lemma_key_hypotheses():
    assert lemma_key_hypotheses((3, 4, 3), (2, 2, 2), 2) == []
    assert lemma_key_hypotheses((3, 3, 3), (2, 2, 2), 2) != []
    with pytest.raises(LemmaHypothesisError):
        check_lemma_key_instance((3, 3, 3), (2, 2, 2), 2)
    v = check_lemma_key_instance((3, 3, 3), (2, 2, 2), 2, enforce=False)
    assert v.query["hypotheses_violated"]
    assert check_lemma_key_instance((3, 4, 3), (2, 2, 2), 2).answer is True


def test_make_cover_based_witness_replays():
    c = make_cover(K2, (2, 2), {(0, 1): [(0, 0), (1, 1)]})
    assert find_multicoloring(c, (1, 2)) is None
