"""Contiguous-chunk thread fan-out with order-preserving merge."""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

ENV_THREADS = "PERIODVIZ_THREADS"

# below this many items a single worker is faster than the pool overhead
_MIN_CHUNK = 16384


def resolve_threads(threads: int | None = None) -> int:
    if threads is None:
        env = os.environ.get(ENV_THREADS)
        threads = int(env) if env else (os.cpu_count() or 1)
    return max(1, int(threads))


def chunk_bounds(n_items: int, threads: int) -> list[tuple[int, int]]:
    parts = max(1, min(threads, -(-n_items // _MIN_CHUNK)))
    edges = np.linspace(0, n_items, parts + 1).astype(np.int64)
    return [(int(a), int(b)) for a, b in zip(edges[:-1], edges[1:])]


def map_chunks(fn, n_items: int, threads: int | None = None) -> np.ndarray:
    """Apply ``fn(start, stop) -> array`` over contiguous ranges and concatenate.

    Results do not depend on the worker count as long as ``fn`` computes
    each item independently of the range it was handed in.
    """
    bounds = chunk_bounds(n_items, resolve_threads(threads))
    if len(bounds) == 1:
        return fn(*bounds[0])
    with ThreadPoolExecutor(max_workers=len(bounds)) as pool:
        parts = list(pool.map(lambda ab: fn(*ab), bounds))
    return np.concatenate(parts)
