"""Comparison methods: aggregated Ljung-Box autocorrelation and PCA drift.

The autocorrelation baseline runs the Ljung-Box portmanteau test per
feature dimension at every lag up to max_lag and averages all the
chi-squared p-values into one number. The PCA baseline fits a low-rank
model on the first contiguous chunk of rows, takes the largest gap in mean
squared reconstruction error between any later chunk and the reference,
and converts that statistic to a p-value with the same permutation-plus-KDE
machinery as the kNN test.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.stats import chi2

from .knn import validate_matrix
from .parallel import map_indexed
from .permute import NullDistribution, TestResult, kde_p_value, silverman_bandwidth


@dataclass(frozen=True)
class LjungBoxConfig:
    max_lag: int = 10


@dataclass(frozen=True)
class PcaDriftConfig:
    n_chunks: int = 10
    n_components: int = 1
    permutations: int = 25


def ljung_box_pvalue(data, cfg: LjungBoxConfig = LjungBoxConfig()) -> float:
    """Mean Ljung-Box p-value across all feature dimensions and lags 1..max_lag."""
    x = validate_matrix(data)
    n, dims = x.shape
    h = cfg.max_lag
    if h < 1:
        raise ValueError(f"max_lag must be at least 1, got {h}")
    if n <= 4 * h:
        raise ValueError(f"need more than {4 * h} rows for max_lag={h}, got {n}")

    centered = x - x.mean(axis=0)
    denom = np.einsum("ij,ij->j", centered, centered)
    if np.any(denom == 0.0):
        bad = int(np.flatnonzero(denom == 0.0)[0])
        raise ValueError(f"dimension {bad} is constant; autocorrelation undefined")

    lags = np.arange(1, h + 1)
    autocorr = np.empty((h, dims))
    for lag in lags:
        autocorr[lag - 1] = np.einsum("ij,ij->j", centered[:-lag], centered[lag:]) / denom
    q = n * (n + 2.0) * np.cumsum(autocorr**2 / (n - lags)[:, None], axis=0)
    pvalues = chi2.sf(q, df=lags[:, None])
    return float(pvalues.mean())


def ljung_box_test(data, cfg: LjungBoxConfig = LjungBoxConfig()) -> TestResult:
    """Ljung-Box baseline in the shared result shape (statistic = mean p)."""
    p = ljung_box_pvalue(data, cfg)
    return TestResult(statistic=p, p_value=p, null=None, seed=None)


def _pca_chunk_stat(x: np.ndarray, n_chunks: int, n_components: int) -> float:
    """Max gap in mean squared reconstruction error vs the first chunk."""
    chunks = np.array_split(np.arange(x.shape[0]), n_chunks)
    reference = x[chunks[0]]
    mean = reference.mean(axis=0)
    cov = np.atleast_2d(np.cov(reference - mean, rowvar=False))
    eigvals, eigvecs = np.linalg.eigh(cov)
    if not np.any(eigvals > 0.0):
        raise ValueError("reference chunk has degenerate covariance (all rows identical)")
    axes = eigvecs[:, -n_components:]

    centered = x - mean
    residual = centered - (centered @ axes) @ axes.T
    error = np.einsum("ij,ij->i", residual, residual)
    chunk_error = np.array([error[c].mean() for c in chunks])
    return float(np.abs(chunk_error[1:] - chunk_error[0]).max())


def pca_drift_test(data, cfg: PcaDriftConfig = PcaDriftConfig(), seed: int = 0) -> TestResult:
    """PCA reconstruction-error drift statistic with a permutation p-value."""
    x = validate_matrix(data)
    n, dims = x.shape
    if cfg.n_chunks < 2:
        raise ValueError(f"need at least 2 chunks, got {cfg.n_chunks}")
    if n < 2 * cfg.n_chunks:
        raise ValueError(f"need at least {2 * cfg.n_chunks} rows for {cfg.n_chunks} chunks, got {n}")
    if not 1 <= cfg.n_components < dims:
        raise ValueError(f"n_components must be in [1, {dims - 1}], got {cfg.n_components}")
    if cfg.permutations < 2:
        raise ValueError(f"need at least 2 permutations, got {cfg.permutations}")

    observed = _pca_chunk_stat(x, cfg.n_chunks, cfg.n_components)
    streams = np.random.SeedSequence(seed).spawn(cfg.permutations)

    def one(index: int) -> float:
        rng = np.random.Generator(np.random.PCG64(streams[index]))
        return _pca_chunk_stat(x[rng.permutation(n)], cfg.n_chunks, cfg.n_components)

    stats = np.array(map_indexed(one, cfg.permutations), dtype=np.float64)
    null = NullDistribution(stats=stats, bandwidth=silverman_bandwidth(stats))
    return TestResult(statistic=observed, p_value=kde_p_value(observed, null), null=null, seed=seed)


def pca_drift_pvalue(data, cfg: PcaDriftConfig = PcaDriftConfig(), seed: int = 0) -> float:
    return pca_drift_test(data, cfg, seed).p_value
