import numpy as np
import pytest

from noniid.generators import (
    ScenarioSpec,
    default_spec,
    gen_ar_dependent,
    gen_embedding_scenario,
    gen_iid_mixture,
    gen_mean_shift,
    gen_variance_changepoint,
    generate,
    shuffle_rows,
)


@pytest.mark.parametrize("kind", ["iid_mixture", "mean_shift", "variance_changepoint",
                                  "ar_dependent", "sorted_classes", "class_drift",
                                  "contiguous_block"])
def test_same_seed_same_data(kind):
    spec = default_spec(kind, n=200, dims=4, seed=9)
    assert np.array_equal(generate(spec), generate(spec))
    other = generate(spec.with_seed(10))
    assert not np.array_equal(generate(spec), other)


def test_paper_benchmark_shape_defaults():
    data = generate(default_spec("iid_mixture", seed=0))
    assert data.shape == (1000, 2)


def test_spec_validation():
    with pytest.raises(ValueError, match="unknown scenario kind"):
        default_spec("brownian")
    with pytest.raises(ValueError, match="at least 10 samples"):
        ScenarioSpec(kind="iid_mixture", n=5, dims=2)
    with pytest.raises(ValueError, match="at least 1 feature"):
        ScenarioSpec(kind="iid_mixture", n=100, dims=0)
    with pytest.raises(ValueError, match="unknown parameters"):
        generate(default_spec("iid_mixture", n=50, total_shift=1.0))


def test_kind_mismatch_rejected():
    with pytest.raises(ValueError, match="does not match"):
        gen_mean_shift(default_spec("iid_mixture", n=50))


def test_zero_shift_degenerates_to_iid():
    base = gen_iid_mixture(default_spec("iid_mixture", n=300, seed=3))
    drifted = gen_mean_shift(default_spec("mean_shift", n=300, seed=3, total_shift=0.0))
    assert np.array_equal(base, drifted)


def test_unit_factor_degenerates_to_iid():
    base = gen_iid_mixture(default_spec("iid_mixture", n=300, seed=3))
    changed = gen_variance_changepoint(default_spec("variance_changepoint", n=300, seed=3, factor=1.0))
    assert np.array_equal(base, changed)


def test_mean_shift_decile_gap():
    # first vs last decile mean differs by 2 * (0.95 - 0.05) = 1.8 per dim
    gaps = []
    for r in range(200):
        data = gen_mean_shift(default_spec("mean_shift", seed=r))
        gaps.append(data[-100:].mean(axis=0) - data[:100].mean(axis=0))
    assert np.mean(gaps, axis=0) == pytest.approx([1.8, 1.8], abs=0.15)


def test_variance_changepoint_std_ratio():
    ratios = []
    for r in range(20):
        data, component = gen_variance_changepoint(
            default_spec("variance_changepoint", seed=r), return_labels=True
        )
        half = 500
        for c in range(10):
            first = data[:half][component[:half] == c]
            second = data[half:][component[half:] == c]
            if len(first) > 10 and len(second) > 10:
                ratios.append(
                    (second - second.mean(axis=0)).std() / (first - first.mean(axis=0)).std()
                )
    assert np.mean(ratios) == pytest.approx(1.5, abs=0.1)


def test_variance_changepoint_rejects_bad_factor():
    with pytest.raises(ValueError, match="positive"):
        generate(default_spec("variance_changepoint", n=50, factor=-1.0))


def test_ar_requires_zero_sum_coefficients():
    with pytest.raises(ValueError, match="sum to 0"):
        generate(default_spec("ar_dependent", n=50, alphas=(0.5, 0.4, 0.2)))


def test_ar_zero_coefficients_are_iid_standard_normal():
    data = gen_ar_dependent(default_spec("ar_dependent", n=5000, seed=1, alphas=(0.0, 0.0, 0.0)))
    assert data.mean() == pytest.approx(0.0, abs=0.05)
    assert data.std() == pytest.approx(1.0, abs=0.05)
    x = data[:, 0] - data[:, 0].mean()
    lag1 = (x[:-1] * x[1:]).sum() / (x * x).sum()
    assert abs(lag1) < 0.05


def test_ar_default_coefficients_are_autocorrelated():
    lag1 = []
    for r in range(200):
        data = gen_ar_dependent(default_spec("ar_dependent", seed=r))
        x = data[:, 0] - data[:, 0].mean()
        lag1.append((x[:-1] * x[1:]).sum() / (x * x).sum())
    # Yule-Walker for the default coefficients gives about 0.58
    assert np.mean(lag1) == pytest.approx(0.583, abs=0.05)


def test_contiguous_block_defaults():
    data, labels = generate(default_spec("contiguous_block"), return_labels=True)
    assert data.shape == (2500, 64)
    assert np.all(labels[1250:1500] == labels[1250])
    assert np.unique(labels[:1250]).size > 1


def test_contiguous_block_rejects_oversized_block():
    with pytest.raises(ValueError, match="block"):
        generate(default_spec("contiguous_block", n=300, block_len=300))
    with pytest.raises(ValueError, match="block"):
        generate(default_spec("contiguous_block", n=300, block_len=200))


def test_sorted_classes_single_class_degenerates_to_one_cluster():
    data, labels = gen_embedding_scenario(
        default_spec("sorted_classes", n=100, dims=8, classes=1), return_labels=True
    )
    assert np.all(labels == 0)
    assert data.shape == (100, 8)


def test_sorted_classes_blocks_are_contiguous():
    _, labels = generate(default_spec("sorted_classes", n=1000, dims=8, seed=2), return_labels=True)
    assert np.all(np.diff(labels) >= 0)
    assert np.bincount(labels).tolist() == [100] * 10


def test_class_drift_drifts_and_uniform_skew_does_not():
    _, labels = generate(default_spec("class_drift", n=6000, seed=2), return_labels=True)
    first = np.bincount(labels[:2000], minlength=10) / 2000
    last = np.bincount(labels[-2000:], minlength=10) / 2000
    assert np.abs(first - last).max() > 0.1

    _, flat = generate(default_spec("class_drift", n=6000, seed=2, skew=1.0), return_labels=True)
    first = np.bincount(flat[:2000], minlength=10) / 2000
    last = np.bincount(flat[-2000:], minlength=10) / 2000
    assert np.abs(first - last).max() < 0.05


def test_shuffle_rows_is_seeded_permutation():
    data = np.arange(20.0).reshape(10, 2)
    a = shuffle_rows(data, 5)
    b = shuffle_rows(data, 5)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, data)
    assert np.array_equal(np.sort(a[:, 0]), data[:, 0])
