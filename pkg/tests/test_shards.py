import json
from dataclasses import dataclass

import pytest

from dplab.coloring import ColoringTask, is_dp_colorable
from dplab.graph import build_graph
from dplab.shards import (
    ShardResult,
    ShardSpec,
    fold,
    load_checkpoint,
    run_parallel,
    run_shard,
    shard_bounds,
)


@dataclass(frozen=True)
class ListTask:
    """Scripted outcomes; module level so worker processes can pickle it."""

    outcomes: tuple

    def key(self):
        return f"list|{self.outcomes}"

    def iter_checks(self, start, stop):
        for k in range(start, stop):
            yield self.outcomes[k], 1


def test_bounds_partition_the_range():
    for size in (0, 1, 7, 100):
        for total in (1, 3, 8):
            pieces = [shard_bounds(size, i, total) for i in range(total)]
            assert pieces[0][0] == 0 and pieces[-1][1] == size
            assert all(a[1] == b[0] for a, b in zip(pieces, pieces[1:]))


def test_shard_spec_parse():
    assert ShardSpec.parse("2/5") == ShardSpec(2, 5)
    for bad in ("5/5", "x", "1/0"):
        with pytest.raises(ValueError):
            ShardSpec.parse(bad)


def test_scan_stops_at_first_failure():
    task = ListTask((True, True, None, False, True))
    res = run_shard(task, 0, 5)
    assert res.failure == 3 and res.checked == 4
    assert res.budget_first == 2 and res.budget_count == 1


@pytest.mark.parametrize("cuts", [[0, 5, 10], [0, 1, 2, 3, 10], [0, 7, 8, 10]])
def test_fold_matches_sequential(cuts):
    outcomes = (True,) * 4 + (None,) + (True,) * 2 + (False,) + (True, False)
    task = ListTask(outcomes)
    seq = run_shard(task, 0, 10)
    parts = [run_shard(task, a, b) for a, b in zip(cuts, cuts[1:])]
    assert fold(parts) == seq


def test_fold_empty():
    assert fold([]) == ShardResult(0, 0)


def test_checkpoint_resume(tmp_path):
    task = ListTask((True,) * 50)
    ck = tmp_path / "ck.json"
    first = run_shard(task, 0, 50, checkpoint=ck, every=5, limit=20)
    assert first.checked == 20 and not first.complete
    assert load_checkpoint(ck, task.key(), 0, 50).checked == 20
    done = run_shard(task, 0, 50, checkpoint=ck, every=5)
    assert done.checked == 50 and done.complete
    # a finished checkpoint short-circuits
    assert run_shard(task, 0, 50, checkpoint=ck) == done


def test_checkpoint_for_another_run_is_refused(tmp_path):
    ck = tmp_path / "ck.json"
    run_shard(ListTask((True,) * 3), 0, 3, checkpoint=ck)
    with pytest.raises(ValueError):
        run_shard(ListTask((False,) * 3), 0, 3, checkpoint=ck)
    doc = json.loads(ck.read_text())
    assert doc["version"] == 1


def test_parallel_fold_equals_sequential():
    outcomes = tuple([True] * 30 + [False] + [True] * 9)
    task = ListTask(outcomes)
    assert run_parallel(task, 0, 40, workers=2, chunks=6) == run_shard(task, 0, 40)


def test_real_task_sharded_and_parallel():
    g = build_graph([(0, 1), (1, 2), (2, 3), (3, 0)])
    task = ColoringTask(g, (3, 4, 3, 4), None, 0, (2, 2, 2, 2))
    size = task.space().size
    seq = run_shard(task, 0, size)
    assert fold([run_shard(task, *ShardSpec(i, 3).bounds(size)) for i in range(3)]) == seq
    assert run_parallel(task, 0, size, workers=2) == seq


def test_verdict_identical_across_worker_counts():
    g = build_graph([(0, 1), (1, 2), (2, 3), (3, 0)])
    a = is_dp_colorable(g, (3, 3, 3, 3), 2)
    b = is_dp_colorable(g, (3, 3, 3, 3), 2, workers=2)
    assert a.to_document() == b.to_document()


def test_shard_verdict_covers_its_range(tmp_path):
    g = build_graph([(0, 1), (1, 2), (2, 3), (3, 0)])
    v = is_dp_colorable(g, (3, 5, 3, 5), 2, shard=ShardSpec(1, 4), checkpoint=tmp_path / "c")
    assert v.covers_total == 45 and v.covers_checked == 45 and v.answer is True
