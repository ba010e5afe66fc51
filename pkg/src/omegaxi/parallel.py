"""Order-preserving map over a process pool.

mpmath keeps its working precision in module-global state, so worker
threads would race on it; separate processes do not.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor


def pmap(fn, items, workers: int = 1, chunksize: int = 4) -> list:
    items = list(items)
    if workers <= 1 or len(items) < 2:
        return [fn(it) for it in items]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items, chunksize=chunksize))
