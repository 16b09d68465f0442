"""Thread-count resolution and an order-preserving parallel map.

The NIID_THREADS environment variable caps internal parallelism:
0 (or unset) means auto, 1 forces sequential execution. Results are
always ordered by work-item index, so thread count never changes output.
"""

from __future__ import annotations

import os
from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor
from typing import TypeVar

T = TypeVar("T")


def thread_count() -> int:
    """Resolve the effective worker count from NIID_THREADS (0 = auto)."""
    raw = os.environ.get("NIID_THREADS", "0").strip()
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"NIID_THREADS must be a nonnegative integer, got {raw!r}") from None
    if value < 0:
        raise ValueError(f"NIID_THREADS must be a nonnegative integer, got {value}")
    if value == 0:
        return os.cpu_count() or 1
    return value


def map_indexed(fn: Callable[[int], T], count: int) -> list[T]:
    """Evaluate fn(0), ..., fn(count-1), in parallel when allowed.

    The returned list is ordered by index regardless of completion order,
    so the result is identical for any worker count.
    """
    workers = min(thread_count(), count)
    if workers <= 1:
        return [fn(i) for i in range(count)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, range(count)))
