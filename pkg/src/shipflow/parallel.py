"""Order-preserving parallel map for per-ship stages.

Every stage that fans out per ship reduces in input order, so thread
count never changes output bytes.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Iterator, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def ordered_map(fn: Callable[[T], R], items: Iterable[T], threads: int = 1) -> Iterator[R]:
    if threads <= 1:
        return map(fn, items)
    pool = ThreadPoolExecutor(max_workers=threads)

    def run() -> Iterator[R]:
        try:
            yield from pool.map(fn, items)
        finally:
            pool.shutdown(wait=True)

    return run()
