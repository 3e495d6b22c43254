"""Range-sharded scans over an indexed cover family.

A task exposes ``key()``, ``space()`` and ``iter_checks(start, stop)``
yielding ``(ok, nodes)`` per index, where ``ok`` is True, False, or None
for a search that hit its node budget.  A shard scans ``[start, stop)`` in
order, stops at its first refutation and can resume from a checkpoint file.
Folding keeps only what a sequential scan would have seen, so results do
not depend on how the range was cut or on the worker count.
"""

from __future__ import annotations

import json
import os
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path

CHECKPOINT_VERSION = 1


@dataclass(frozen=True)
class ShardSpec:
    index: int
    total: int

    def __post_init__(self):
        if self.total < 1 or not 0 <= self.index < self.total:
            raise ValueError(f"bad shard {self.index}/{self.total}")

    @classmethod
    def parse(cls, text: str) -> "ShardSpec":
        try:
            i, t = text.split("/")
            return cls(int(i), int(t))
        except ValueError:
            raise ValueError(f"shard must look like i/t, got {text!r}") from None

    def bounds(self, size: int) -> tuple[int, int]:
        return shard_bounds(size, self.index, self.total)


def shard_bounds(size: int, index: int, total: int) -> tuple[int, int]:
    q, r = divmod(size, total)
    start = index * q + min(index, r)
    return start, start + q + (1 if index < r else 0)


@dataclass
class ShardResult:
    start: int
    stop: int
    checked: int = 0
    nodes: int = 0
    failure: int | None = None
    budget_first: int | None = None
    budget_count: int = 0

    @property
    def complete(self) -> bool:
        return self.failure is not None or self.start + self.checked >= self.stop


def _write_atomic(path: Path, doc: dict):
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    with os.fdopen(fd, "w") as fh:
        json.dump(doc, fh, sort_keys=True)
        fh.write("\n")
    os.replace(tmp, path)


def load_checkpoint(path, key: str, start: int, stop: int) -> ShardResult | None:
    path = Path(path)
    if not path.exists():
        return None
    doc = json.loads(path.read_text())
    if (
        doc.get("version") != CHECKPOINT_VERSION
        or doc.get("key") != key
        or (doc.get("start"), doc.get("stop")) != (start, stop)
    ):
        raise ValueError(f"checkpoint {path} belongs to a different run")
    return ShardResult(**doc["result"])


def save_checkpoint(path, key: str, res: ShardResult):
    _write_atomic(
        Path(path),
        {
            "version": CHECKPOINT_VERSION,
            "key": key,
            "start": res.start,
            "stop": res.stop,
            "result": asdict(res),
        },
    )


def run_shard(task, start: int, stop: int, checkpoint=None, every: int = 1000,
              limit: int | None = None) -> ShardResult:
    """Scan ``[start, stop)``.  ``limit`` caps the number of covers handled in
    this call (for interruptible runs); the checkpoint records progress."""
    res = None
    if checkpoint is not None:
        res = load_checkpoint(checkpoint, task.key(), start, stop)
    if res is None:
        res = ShardResult(start, stop)
    if res.complete:
        return res
    pos = start + res.checked
    done_here = 0
    for ok, nodes in task.iter_checks(pos, stop):
        res.checked += 1
        res.nodes += nodes
        done_here += 1
        if ok is None:
            res.budget_count += 1
            if res.budget_first is None:
                res.budget_first = pos
        elif not ok:
            res.failure = pos
            break
        pos += 1
        if checkpoint is not None and res.checked % every == 0:
            save_checkpoint(checkpoint, task.key(), res)
        if limit is not None and done_here >= limit:
            break
    if checkpoint is not None:
        save_checkpoint(checkpoint, task.key(), res)
    return res


def fold(results: list[ShardResult]) -> ShardResult:
    """Combine contiguous shard results as a single sequential scan would."""
    results = sorted(results, key=lambda r: r.start)
    if not results:
        return ShardResult(0, 0)
    out = ShardResult(results[0].start, results[-1].stop)
    for r in results:
        if out.failure is not None:
            break
        out.checked += r.checked
        out.nodes += r.nodes
        out.budget_count += r.budget_count
        if out.budget_first is None:
            out.budget_first = r.budget_first
        out.failure = r.failure
    return out


def _run(args):
    task, start, stop = args
    return run_shard(task, start, stop)


def run_parallel(task, start: int, stop: int, workers: int = 1, chunks: int | None = None) -> ShardResult:
    """Split ``[start, stop)`` into ``chunks`` pieces and scan them on
    ``workers`` processes; the fold is identical to a sequential scan."""
    if workers <= 1:
        return run_shard(task, start, stop)
    chunks = chunks or 4 * workers
    size = stop - start
    pieces = []
    for i in range(chunks):
        a, b = shard_bounds(size, i, chunks)
        if a < b:
            pieces.append((task, start + a, start + b))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(_run, pieces))
    return fold(results)
