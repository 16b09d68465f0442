"""Replicate-run harness for p-value histogram experiments.

A plan names scenarios, methods, and a replicate count. Every replicate
regenerates the scenario with its own seed, runs each method on the data
as collected and (optionally) on a seeded shuffle of it, and collects the
p-values per (scenario, method, variant). The shuffled twin realizes the
IID null on otherwise identical data.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .baselines import LjungBoxConfig, PcaDriftConfig, ljung_box_pvalue, pca_drift_test
from .generators import ScenarioSpec, generate, shuffle_rows
from .permute import knn_order_test

METHODS = ("knn", "autocorr", "pca")

# Per-replicate seed streams are spaced out so scenario generation, method
# randomness, and the twin shuffle never reuse a seed.
_METHOD_SEED_OFFSET = 1_000_000
_SHUFFLE_SEED_OFFSET = 2_000_000


@dataclass(frozen=True)
class BenchmarkPlan:
    scenarios: tuple[ScenarioSpec, ...]
    methods: tuple[str, ...]
    replicates: int = 50
    include_shuffled_twin: bool = True
    base_seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "scenarios", tuple(self.scenarios))
        object.__setattr__(self, "methods", tuple(self.methods))
        if self.replicates < 1:
            raise ValueError(f"need at least 1 replicate, got {self.replicates}")
        if not self.methods:
            raise ValueError("plan needs at least one method")
        unknown = set(self.methods) - set(METHODS)
        if unknown:
            raise ValueError(f"unknown methods {sorted(unknown)}; expected a subset of {METHODS}")


@dataclass(frozen=True)
class BenchmarkEntry:
    """p-values for one (scenario, method, variant) cell of the grid."""

    scenario: str
    method: str
    variant: str  # "as-is" or "shuffled"
    p_values: tuple[float, ...]
    fraction_below_05: float
    median: float


@dataclass(frozen=True)
class BenchmarkResult:
    entries: tuple[BenchmarkEntry, ...]
    replicates: int
    base_seed: int

    def entry(self, scenario: str, method: str, variant: str = "as-is") -> BenchmarkEntry:
        for e in self.entries:
            if (e.scenario, e.method, e.variant) == (scenario, method, variant):
                return e
        raise KeyError(f"no entry for ({scenario}, {method}, {variant})")


def _run_method(method: str, data: np.ndarray, seed: int) -> float:
    if method == "knn":
        return knn_order_test(data, k=10, metric="euclidean", permutations=25, seed=seed).p_value
    if method == "autocorr":
        return ljung_box_pvalue(data, LjungBoxConfig())
    if method == "pca":
        return pca_drift_test(data, PcaDriftConfig(), seed=seed).p_value
    raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")


def _scenario_labels(scenarios: tuple[ScenarioSpec, ...]) -> list[str]:
    labels = []
    for index, spec in enumerate(scenarios):
        kind_count = sum(1 for s in scenarios if s.kind == spec.kind)
        labels.append(spec.kind if kind_count == 1 else f"{spec.kind}#{index}")
    return labels


def run_benchmark(plan: BenchmarkPlan) -> BenchmarkResult:
    """Execute the plan; deterministic for identical plans."""
    variants = ["as-is"] + (["shuffled"] if plan.include_shuffled_twin else [])
    labels = _scenario_labels(plan.scenarios)
    collected: dict[tuple[str, str, str], list[float]] = {
        (label, method, variant): []
        for label in labels
        for method in plan.methods
        for variant in variants
    }

    for label, spec in zip(labels, plan.scenarios):
        for r in range(plan.replicates):
            data = generate(spec.with_seed(plan.base_seed + r))
            method_seed = plan.base_seed + _METHOD_SEED_OFFSET + r
            datasets = {"as-is": data}
            if plan.include_shuffled_twin:
                datasets["shuffled"] = shuffle_rows(data, plan.base_seed + _SHUFFLE_SEED_OFFSET + r)
            for method in plan.methods:
                for variant, variant_data in datasets.items():
                    collected[(label, method, variant)].append(
                        _run_method(method, variant_data, method_seed)
                    )

    entries = tuple(
        BenchmarkEntry(
            scenario=label,
            method=method,
            variant=variant,
            p_values=tuple(values),
            fraction_below_05=float(np.mean(np.asarray(values) < 0.05)),
            median=float(np.median(values)),
        )
        for (label, method, variant), values in collected.items()
    )
    return BenchmarkResult(entries=entries, replicates=plan.replicates, base_seed=plan.base_seed)


def histogram(pvalues, bins: int) -> list[int]:
    """Counts over equal-width bins of [0, 1].

    Bins are right-inclusive: value v lands in the bin whose right edge is
    the smallest edge >= v, except that 0 lands in the first bin. Values
    outside [0, 1] are an error; counts always sum to the input length.
    """
    if bins < 1:
        raise ValueError(f"need at least 1 bin, got {bins}")
    values = np.asarray(pvalues, dtype=np.float64)
    if values.size == 0:
        return [0] * bins
    if values.min() < 0.0 or values.max() > 1.0:
        raise ValueError("p-values must lie in [0, 1]")
    edges = np.linspace(0.0, 1.0, bins + 1)
    index = np.searchsorted(edges, values, side="left") - 1
    np.clip(index, 0, bins - 1, out=index)
    return np.bincount(index, minlength=bins).tolist()
