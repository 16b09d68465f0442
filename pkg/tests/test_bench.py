import numpy as np
import pytest

from noniid.bench import BenchmarkPlan, histogram, run_benchmark
from noniid.generators import default_spec


def small_plan(**overrides):
    defaults = dict(
        scenarios=(default_spec("iid_mixture", n=120, seed=0),),
        methods=("knn",),
        replicates=1,
        base_seed=0,
    )
    defaults.update(overrides)
    return BenchmarkPlan(**defaults)


def test_single_replicate_yields_two_pvalues_per_cell():
    result = run_benchmark(small_plan())
    assert len(result.entries) == 2  # as-is + shuffled
    for entry in result.entries:
        assert len(entry.p_values) == 1
        assert 0.0 <= entry.p_values[0] <= 1.0


def test_shuffled_twin_can_be_disabled():
    result = run_benchmark(small_plan(include_shuffled_twin=False))
    assert {e.variant for e in result.entries} == {"as-is"}


def test_identical_plans_identical_results():
    plan = small_plan(replicates=3)
    assert run_benchmark(plan) == run_benchmark(plan)


def test_unknown_method_rejected():
    with pytest.raises(ValueError, match="unknown methods"):
        small_plan(methods=("knn", "isolation_forest"))


def test_plan_validation():
    with pytest.raises(ValueError, match="at least 1 replicate"):
        small_plan(replicates=0)
    with pytest.raises(ValueError, match="at least one method"):
        small_plan(methods=())


def test_duplicate_scenario_kinds_get_distinct_labels():
    plan = small_plan(
        scenarios=(default_spec("iid_mixture", n=120), default_spec("iid_mixture", n=150)),
    )
    result = run_benchmark(plan)
    labels = {e.scenario for e in result.entries}
    assert labels == {"iid_mixture#0", "iid_mixture#1"}


def test_mean_shift_separation():
    # Frozen from the stated oracle (50-replicate simulation, base_seed 0):
    # as-is median 0, shuffled median 0.4165, detection 50/50 vs 2/50.
    plan = BenchmarkPlan(
        scenarios=(default_spec("mean_shift"),),
        methods=("knn",),
        replicates=50,
        base_seed=0,
    )
    result = run_benchmark(plan)
    as_is = result.entry("mean_shift", "knn", "as-is")
    shuffled = result.entry("mean_shift", "knn", "shuffled")
    assert shuffled.median - as_is.median > 0.4
    assert as_is.fraction_below_05 >= 0.9
    assert shuffled.fraction_below_05 <= 0.15


def test_shuffled_twin_uniformity_sanity_all_methods():
    plan = BenchmarkPlan(
        scenarios=(default_spec("iid_mixture", n=200),),
        methods=("knn", "autocorr", "pca"),
        replicates=50,
        base_seed=0,
    )
    result = run_benchmark(plan)
    for method in ("knn", "autocorr", "pca"):
        entry = result.entry("iid_mixture", method, "shuffled")
        assert 0.0 <= entry.fraction_below_05 <= 0.15


def test_histogram_hand_binning():
    assert histogram([0.0, 0.5, 1.0], bins=2) == [2, 1]


def test_histogram_empty_input():
    assert histogram([], bins=4) == [0, 0, 0, 0]


def test_histogram_uniform_concentration():
    rng = np.random.default_rng(0)
    counts = histogram(rng.uniform(0, 1, size=10_000), bins=10)
    assert sum(counts) == 10_000
    assert all(850 <= c <= 1150 for c in counts)


def test_histogram_rejects_out_of_range():
    with pytest.raises(ValueError, match="0, 1"):
        histogram([0.5, 1.2], bins=2)
    with pytest.raises(ValueError, match="at least 1 bin"):
        histogram([0.5], bins=0)


def test_histogram_counts_sum_to_length():
    rng = np.random.default_rng(3)
    values = rng.uniform(0, 1, size=137)
    for bins in (1, 2, 7, 20):
        assert sum(histogram(values, bins)) == 137
