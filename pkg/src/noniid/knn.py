"""Exact k-nearest-neighbor graphs over row-ordered feature matrices.

The graph is directed: row i points at the k rows with the smallest
feature-space distance to it, self excluded, nearest first. Distance ties
are broken by the smaller row index so that rebuilding is fully
deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

METRICS = ("euclidean", "cosine")

# Rows per distance-matrix block; keeps peak memory near this many float64s.
_BLOCK_BUDGET = 16_000_000


def validate_matrix(data) -> np.ndarray:
    """Coerce to a float64 (N, F) matrix and enforce its invariants.

    Requires at least 2 rows, at least 1 feature column, and all entries
    finite. Returns the validated array (a copy only if coercion needed).
    """
    arr = np.asarray(data, dtype=np.float64)
    if arr.ndim != 2:
        raise ValueError(f"feature matrix must be 2-D, got shape {arr.shape}")
    n, dims = arr.shape
    if n < 2:
        raise ValueError(f"need at least 2 datapoints, got {n}")
    if dims < 1:
        raise ValueError("feature vectors must have at least one dimension")
    if not np.all(np.isfinite(arr)):
        raise ValueError("feature matrix contains NaN or infinite values")
    return arr


@dataclass(frozen=True)
class KnnGraph:
    """Per-row neighbor lists: shape (N, k), nearest first."""

    neighbors: np.ndarray
    k: int

    def __post_init__(self):
        nb = self.neighbors
        if nb.ndim != 2 or nb.shape[1] != self.k:
            raise ValueError(f"neighbor table shape {nb.shape} does not match k={self.k}")
        if not 1 <= self.k <= nb.shape[0] - 1:
            raise ValueError(f"k must be in [1, {nb.shape[0] - 1}], got {self.k}")

    @property
    def n(self) -> int:
        return self.neighbors.shape[0]


def pairwise_distance(u, v, metric: str = "euclidean") -> float:
    """Distance between two feature vectors under the chosen metric."""
    a = np.asarray(u, dtype=np.float64)
    b = np.asarray(v, dtype=np.float64)
    if a.ndim != 1 or b.ndim != 1 or a.shape != b.shape:
        raise ValueError(f"vectors must be 1-D with equal length, got {a.shape} and {b.shape}")
    if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
        raise ValueError("vectors contain NaN or infinite values")
    if metric == "euclidean":
        return float(np.linalg.norm(a - b))
    if metric == "cosine":
        na = np.linalg.norm(a)
        nb = np.linalg.norm(b)
        if na == 0.0 or nb == 0.0:
            raise ValueError("cosine distance is undefined for zero-norm vectors")
        return float(max(1.0 - float(a @ b) / (na * nb), 0.0))
    raise ValueError(f"unknown metric {metric!r}; expected one of {METRICS}")


def build_knn_graph(data, k: int, metric: str = "euclidean") -> KnnGraph:
    """Build the exact directed k-nearest-neighbor graph.

    Args:
        data: (N, F) feature matrix in collection order.
        k: neighbor count, 1 <= k <= N - 1.
        metric: "euclidean" or "cosine".

    Returns:
        KnnGraph whose row i lists the k nearest rows to i (self excluded),
        ordered by increasing distance with ties broken by smaller index.
    """
    x = validate_matrix(data)
    n = x.shape[0]
    if not 1 <= k <= n - 1:
        raise ValueError(f"k must be in [1, {n - 1}], got {k}")
    if metric not in METRICS:
        raise ValueError(f"unknown metric {metric!r}; expected one of {METRICS}")

    if metric == "cosine":
        norms = np.linalg.norm(x, axis=1)
        if np.any(norms == 0.0):
            bad = int(np.flatnonzero(norms == 0.0)[0])
            raise ValueError(f"cosine distance is undefined for zero-norm row {bad}")
        unit = x / norms[:, None]
    else:
        sq_norms = np.einsum("ij,ij->i", x, x)

    neighbors = np.empty((n, k), dtype=np.int64)
    block = max(1, min(n, _BLOCK_BUDGET // n))
    for start in range(0, n, block):
        stop = min(start + block, n)
        if metric == "euclidean":
            # Squared distances suffice: sqrt is monotone and never taken.
            d = x[start:stop] @ x.T
            d *= -2.0
            d += sq_norms[None, :]
            d += sq_norms[start:stop, None]
            np.maximum(d, 0.0, out=d)
        else:
            d = unit[start:stop] @ unit.T
            d *= -1.0
            d += 1.0
        rows = np.arange(start, stop)
        d[rows - start, rows] = np.inf
        neighbors[start:stop] = _smallest_k_by_index(d, k)
    return KnnGraph(neighbors=neighbors, k=k)


def _smallest_k_by_index(d: np.ndarray, k: int) -> np.ndarray:
    """Per row of d, the k column indices with smallest (value, index)."""
    part = np.argpartition(d, (k - 1, k), axis=1)
    out = _order_by_value_then_index(d, part[:, :k])
    # Rows whose k-th and (k+1)-th smallest values tie exactly need the
    # full lexicographic selection; with continuous data this is rare.
    boundary = np.take_along_axis(d, part[:, k - 1 : k + 1], axis=1)
    for r in np.flatnonzero(boundary[:, 0] == boundary[:, 1]):
        out[r] = np.argsort(d[r], kind="stable")[:k]
    return out


def _order_by_value_then_index(d: np.ndarray, cols: np.ndarray) -> np.ndarray:
    rows = np.arange(cols.shape[0])[:, None]
    vals = d[rows, cols]
    by_index = np.argsort(cols, axis=1, kind="stable")
    cols = np.take_along_axis(cols, by_index, axis=1)
    vals = np.take_along_axis(vals, by_index, axis=1)
    by_value = np.argsort(vals, axis=1, kind="stable")
    return np.take_along_axis(cols, by_value, axis=1)
