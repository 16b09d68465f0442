"""Per-datapoint order scores and trend smoothing.

Each datapoint gets the same KS comparison as the dataset statistic, but
restricted to pairs whose first element is that datapoint: its own k
neighbor index-distances against the exact distribution of |i - j| over all
other rows j. The restricted statistic is mapped to a score s = 1 - T, so
scores near 0 mark datapoints whose neighbors sit at unusual index
distances. A centered moving average smooths the score sequence for trend
plots.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .knn import KnnGraph

# Rows per vectorized block when evaluating candidate distances.
_BLOCK_BUDGET = 32_000_000


@dataclass(frozen=True)
class PerPointBackground:
    """Exact CDF of |index - j| over all rows j != index."""

    index: int
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"background requires at least 2 datapoints, got {self.n}")
        if not 0 <= self.index < self.n:
            raise ValueError(f"index {self.index} out of range for {self.n} datapoints")

    @property
    def near_radius(self) -> int:
        """Largest d with two rows at distance d from this index."""
        return min(self.index, self.n - 1 - self.index)

    def __call__(self, d):
        """Evaluate at integer index distances; floors non-integer input."""
        dd = np.maximum(np.floor(np.asarray(d, dtype=np.float64)), 0.0)
        count = np.minimum(self.index, dd) + np.minimum(self.n - 1 - self.index, dd)
        out = count / (self.n - 1.0)
        if np.isscalar(d):
            return float(out)
        return out


def per_point_background(index: int, n: int) -> PerPointBackground:
    """Background CDF of index distances seen from one datapoint."""
    return PerPointBackground(index=int(index), n=int(n))


@dataclass(frozen=True)
class DatapointScores:
    """Restricted KS statistics, their 0-1 scores, and the smoothed trend."""

    raw_stats: np.ndarray
    scores: np.ndarray
    smoothed: np.ndarray


def default_window(n: int) -> int:
    """Default smoothing window: about n/50 points, odd, at least 3."""
    window = max(3, int(round(n / 50.0)))
    return window + 1 if window % 2 == 0 else window


def smooth_scores(scores, window: int) -> np.ndarray:
    """Centered moving average with truncated windows at the edges."""
    if window < 1 or window % 2 == 0:
        raise ValueError(f"window must be a positive odd integer, got {window}")
    x = np.asarray(scores, dtype=np.float64)
    if x.ndim != 1:
        raise ValueError("scores must be a 1-D sequence")
    if window == 1:
        return x.copy()
    half = window // 2
    idx = np.arange(x.size)
    lo = np.maximum(idx - half, 0)
    hi = np.minimum(idx + half, x.size - 1)
    csum = np.concatenate(([0.0], np.cumsum(x)))
    return (csum[hi + 1] - csum[lo]) / (hi - lo + 1)


def datapoint_scores(graph: KnnGraph, window: int | None = None) -> DatapointScores:
    """Per-datapoint restricted KS statistics and scores s = 1 - T.

    The restricted statistic for row i is the sup over d in 1..N-1 of the
    gap between the empirical CDF of its k neighbor index-distances and its
    own background CDF. Both CDFs only move at the sorted neighbor
    distances (the background monotonically in between), so the sup is
    attained at a neighbor distance or one step before it; only those
    candidates are evaluated.
    """
    n, k = graph.n, graph.k
    own = np.arange(n, dtype=np.int64)[:, None]
    dist = np.sort(np.abs(own - graph.neighbors), axis=1)

    raw = np.empty(n, dtype=np.float64)
    block = max(1, _BLOCK_BUDGET // (2 * k * k + 1))
    for start in range(0, n, block):
        stop = min(start + block, n)
        raw[start:stop] = _restricted_stat_block(dist[start:stop], start, n, k)

    scores = 1.0 - raw
    window = default_window(n) if window is None else window
    return DatapointScores(raw_stats=raw, scores=scores, smoothed=smooth_scores(scores, window))


def _restricted_stat_block(sorted_dist: np.ndarray, row_offset: int, n: int, k: int) -> np.ndarray:
    rows = np.arange(row_offset, row_offset + sorted_dist.shape[0], dtype=np.int64)
    candidates = np.concatenate([sorted_dist, sorted_dist - 1], axis=1)
    empirical = (sorted_dist[:, None, :] <= candidates[:, :, None]).sum(axis=2) / k
    cd = np.maximum(candidates, 0).astype(np.float64)
    count = np.minimum(rows[:, None], cd) + np.minimum(n - 1 - rows[:, None], cd)
    background = count / (n - 1.0)
    return np.abs(empirical - background).max(axis=1)
