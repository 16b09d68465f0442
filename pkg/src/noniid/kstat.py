"""Index-distance statistics: foreground sample, background CDF, KS statistic.

The foreground sample collects |i - j| over every directed neighbor pair of
the kNN graph. The background is the exact distribution of |i - j| over all
unordered pairs of N ordered rows, which has the closed-form CDF

    B(d) = d * (2N - d - 1) / (N * (N - 1)),   d = 0, ..., N - 1,

with per-distance mass 2(N - d) / (N (N - 1)). The dataset statistic is the
sup-distance between the foreground empirical CDF and B over all index
distances 1..N-1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .knn import KnnGraph


def foreground_distances(graph: KnnGraph) -> np.ndarray:
    """Multiset of |i - j| over every directed neighbor pair (i, j in K_i).

    Returns an int64 array of length N * k; values lie in 1..N-1.
    """
    own = np.arange(graph.n, dtype=np.int64)[:, None]
    return np.abs(own - graph.neighbors).ravel()


@dataclass(frozen=True)
class BackgroundCdf:
    """CDF of the index distance between a uniformly random pair of rows."""

    n: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"background requires at least 2 datapoints, got {self.n}")

    def __call__(self, d):
        """Evaluate at integer index distances; floors non-integer input."""
        dd = np.clip(np.floor(np.asarray(d, dtype=np.float64)), 0.0, self.n - 1.0)
        out = dd * (2.0 * self.n - dd - 1.0) / (self.n * (self.n - 1.0))
        if np.isscalar(d):
            return float(out)
        return out

    def table(self) -> np.ndarray:
        """Values at every index distance 0..n-1."""
        d = np.arange(self.n, dtype=np.float64)
        return d * (2.0 * self.n - d - 1.0) / (self.n * (self.n - 1.0))


def background_cdf(n: int) -> BackgroundCdf:
    """Analytic background CDF for a dataset of n rows."""
    return BackgroundCdf(n=int(n))


@dataclass(frozen=True)
class IndexDistanceStat:
    """KS sup-distance between foreground and background, plus its location."""

    statistic: float
    argmax_distance: int


def ks_statistic(foreground, background: BackgroundCdf) -> IndexDistanceStat:
    """Sup over d in 1..N-1 of |empirical CDF of foreground - B(d)|.

    The maximizing d (smallest on ties) is reported for diagnostics.
    """
    values = np.asarray(foreground, dtype=np.int64).ravel()
    if values.size == 0:
        raise ValueError("foreground sample is empty")
    if values.min() < 1 or values.max() > background.n - 1:
        raise ValueError(
            f"foreground distances must lie in [1, {background.n - 1}] "
            f"for a background over {background.n} datapoints"
        )
    counts = np.bincount(values, minlength=background.n)
    empirical = np.cumsum(counts) / values.size
    gaps = np.abs(empirical[1:] - background.table()[1:])
    best = int(np.argmax(gaps))
    return IndexDistanceStat(statistic=float(gaps[best]), argmax_distance=best + 1)
