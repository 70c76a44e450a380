"""Deterministic process-pool map.

Work items are independent, so any worker count yields the same result list;
chunks come back through executor.map in submission order. The fork start
method is preferred: the payload (typically a whole Dataset) is inherited by
the children instead of being pickled per task.
"""

from __future__ import annotations

import multiprocessing
import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, Sequence

_WORK: tuple[Callable, object] | None = None


def _init_worker(fn, payload):
    global _WORK
    _WORK = (fn, payload)


def _run_chunk(chunk: Sequence) -> list:
    fn, payload = _WORK  # type: ignore[misc]
    return [fn(payload, item) for item in chunk]


def resolve_workers(workers: int | None) -> int:
    """None means the TGL_WORKERS env var, else every available CPU."""
    if workers is None:
        env = os.environ.get("TGL_WORKERS", "").strip()
        workers = int(env) if env else (os.cpu_count() or 1)
    if workers < 1:
        raise ValueError("worker count must be at least 1")
    return workers


def map_items(fn: Callable, payload, items: Iterable, workers: int = 1) -> list:
    """[fn(payload, item) for item in items], optionally across processes."""
    items = list(items)
    workers = min(max(1, workers), len(items) or 1)
    if workers == 1:
        return [fn(payload, item) for item in items]
    chunk_size = max(1, (len(items) + workers * 4 - 1) // (workers * 4))
    chunks = [items[i : i + chunk_size] for i in range(0, len(items), chunk_size)]
    methods = multiprocessing.get_all_start_methods()
    ctx = multiprocessing.get_context("fork" if "fork" in methods else None)
    out: list = []
    with ProcessPoolExecutor(
        max_workers=workers, mp_context=ctx, initializer=_init_worker, initargs=(fn, payload)
    ) as ex:
        for part in ex.map(_run_chunk, chunks):
            out.extend(part)
    return out
