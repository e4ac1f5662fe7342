"""Order-preserving parallel map gated by PROPEVAL_THREADS.

PROPEVAL_THREADS caps worker threads (0 or unset = auto). Results always
come back in input order, so callers are byte-deterministic regardless of
the thread count.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def thread_count() -> int:
    raw = os.environ.get("PROPEVAL_THREADS", "0")
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"PROPEVAL_THREADS={raw!r} is not an integer") from None
    if n < 0:
        raise ValueError("PROPEVAL_THREADS must be >= 0")
    if n == 0:
        return os.cpu_count() or 1
    return n


def pmap(fn: Callable[[T], R], items: Iterable[T]) -> list[R]:
    seq: Sequence[T] = list(items)
    workers = min(thread_count(), len(seq)) or 1
    if workers <= 1:
        return [fn(x) for x in seq]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, seq))
