"""Reproducible, splittable random streams for parallel Monte Carlo.

Streams are counter-based (Philox) and keyed through ``SeedSequence`` spawn
keys, so any (seed, key...) tuple names the same stream no matter when or on
which worker it is created.  Ensemble generators key their streams by
(seed, tag, chunk index, interval index) with a fixed chunk size, which makes
results independent of evaluation order and of the worker count.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

__all__ = ["stream", "worker_count", "map_ordered", "CHUNK"]

# Paths are generated in fixed-size chunks; the chunk size is part of the
# reproducibility contract (changing it changes which variates go where).
CHUNK = 4096


def stream(seed: int, *key: int) -> np.random.Generator:
    """A Generator for the (seed, *key) stream; same inputs, same stream."""
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=tuple(int(k) for k in key))
    return np.random.Generator(np.random.Philox(seed=ss))


def worker_count() -> int:
    """Worker cap from the LEVY_INFO_THREADS environment variable (>= 1)."""
    raw = os.environ.get("LEVY_INFO_THREADS", "").strip()
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def map_ordered(fn, items):
    """Map ``fn`` over ``items`` preserving order, on up to worker_count()
    threads.  Results do not depend on the worker count; threading only
    overlaps the underlying (GIL-releasing) numpy draws."""
    items = list(items)
    workers = min(worker_count(), max(1, len(items)))
    if workers <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
