"""Permutation null distribution and KDE-smoothed p-values.

Permuting the dataset order only relabels indices, so each permuted
statistic is computed from the fixed kNN graph and background CDF without
rebuilding either. The few permuted statistics are smoothed with a Gaussian
KDE so that the p-value spectrum is continuous; the p-value is the KDE
survival mass above the observed statistic (large statistics indicate an
order-dependent dataset).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.stats import norm

from .knn import KnnGraph, build_knn_graph
from .kstat import IndexDistanceStat, background_cdf, foreground_distances, ks_statistic
from .parallel import map_indexed

DEFAULT_PERMUTATIONS = 25

# Survives degenerate null samples (all permuted statistics equal).
_BANDWIDTH_FLOOR = 1e-6


@dataclass(frozen=True)
class NullDistribution:
    """Permuted statistics plus the Gaussian-KDE bandwidth fit to them."""

    stats: np.ndarray
    bandwidth: float

    def __post_init__(self):
        if self.stats.ndim != 1 or self.stats.size < 2:
            raise ValueError("null distribution needs at least 2 permuted statistics")
        if not np.all(np.isfinite(self.stats)):
            raise ValueError("null distribution contains non-finite statistics")
        if not (np.isfinite(self.bandwidth) and self.bandwidth > 0.0):
            raise ValueError(f"bandwidth must be positive and finite, got {self.bandwidth}")


@dataclass(frozen=True)
class TestResult:
    """Observed statistic, its p-value, and the null it was scored against."""

    statistic: float
    p_value: float
    null: NullDistribution | None
    seed: int | None

    def __post_init__(self):
        if not 0.0 <= self.p_value <= 1.0:
            raise ValueError(f"p-value out of [0, 1]: {self.p_value}")


def _check_permutation(perm: np.ndarray, n: int) -> np.ndarray:
    perm = np.asarray(perm)
    if perm.shape != (n,):
        raise ValueError(f"permutation must have shape ({n},), got {perm.shape}")
    perm = perm.astype(np.int64, copy=False)
    if perm.min() < 0 or perm.max() >= n or np.bincount(perm, minlength=n).max() != 1:
        raise ValueError("permutation is not a bijection on 0..N-1")
    return perm


def permuted_statistic(graph: KnnGraph, permutation) -> IndexDistanceStat:
    """Statistic after relabeling row i as permutation[i], graph fixed."""
    perm = _check_permutation(permutation, graph.n)
    relabeled = np.abs(perm[:, None] - perm[graph.neighbors]).ravel()
    return ks_statistic(relabeled, background_cdf(graph.n))


def silverman_bandwidth(sample: np.ndarray) -> float:
    """Silverman rule-of-thumb bandwidth, floored for degenerate samples."""
    sample = np.asarray(sample, dtype=np.float64)
    spread = np.std(sample, ddof=1)
    q75, q25 = np.percentile(sample, [75.0, 25.0])
    iqr = q75 - q25
    width = min(spread, iqr / 1.34)
    h = 0.9 * width * sample.size ** (-0.2)
    return float(max(h, _BANDWIDTH_FLOOR))


def null_distribution(graph: KnnGraph, p_count: int = DEFAULT_PERMUTATIONS, seed: int = 0) -> NullDistribution:
    """Statistics of p_count independent uniformly random relabelings.

    Each permutation draws from its own child stream of the seeded PCG64
    generator (Fisher-Yates shuffle), so results are reproducible and
    independent of how many worker threads run them.
    """
    if p_count < 2:
        raise ValueError(f"need at least 2 permutations, got {p_count}")
    background = background_cdf(graph.n)
    streams = np.random.SeedSequence(seed).spawn(p_count)

    def one(index: int) -> float:
        rng = np.random.Generator(np.random.PCG64(streams[index]))
        perm = rng.permutation(graph.n)
        relabeled = np.abs(perm[:, None] - perm[graph.neighbors]).ravel()
        return ks_statistic(relabeled, background).statistic

    stats = np.array(map_indexed(one, p_count), dtype=np.float64)
    return NullDistribution(stats=stats, bandwidth=silverman_bandwidth(stats))


def kde_p_value(t_observed: float, null: NullDistribution) -> float:
    """Gaussian-KDE survival mass above t_observed; nonincreasing in it."""
    z = (t_observed - null.stats) / null.bandwidth
    return float(np.mean(norm.sf(z)))


def knn_order_test(
    data,
    k: int = 10,
    metric: str = "euclidean",
    permutations: int = DEFAULT_PERMUTATIONS,
    seed: int = 0,
) -> TestResult:
    """End-to-end order audit: kNN graph, observed statistic, permutation p-value."""
    graph = build_knn_graph(data, k=k, metric=metric)
    observed = ks_statistic(foreground_distances(graph), background_cdf(graph.n))
    null = null_distribution(graph, p_count=permutations, seed=seed)
    return TestResult(
        statistic=observed.statistic,
        p_value=kde_p_value(observed.statistic, null),
        null=null,
        seed=seed,
    )
