import numpy as np
import pytest
from statsmodels.stats.diagnostic import acorr_ljungbox

from noniid.baselines import (
    LjungBoxConfig,
    PcaDriftConfig,
    ljung_box_pvalue,
    ljung_box_test,
    pca_drift_pvalue,
    pca_drift_test,
)
from noniid.generators import default_spec, generate, shuffle_rows


def ar1_series(n, phi, dims, seed):
    rng = np.random.default_rng(seed)
    x = np.empty((n, dims))
    x[0] = rng.standard_normal(dims)
    for t in range(1, n):
        x[t] = phi * x[t - 1] + rng.standard_normal(dims)
    return x


def test_exactly_zero_autocorrelation_gives_mean_p_one():
    # Nonzero entries spaced max_lag + 1 apart with balanced signs: every
    # lag-l autocovariance for l <= max_lag is exactly zero.
    h = 10
    x = np.zeros((8 * (h + 1), 1))
    x[:: h + 1, 0] = [1.0, -1.0] * 4
    assert ljung_box_pvalue(x, LjungBoxConfig(max_lag=h)) == 1.0


def test_matches_statsmodels_oracle():
    x = ar1_series(1000, phi=0.9, dims=2, seed=5)
    mine = ljung_box_pvalue(x, LjungBoxConfig(max_lag=10))
    oracle = []
    for f in range(2):
        oracle.extend(acorr_ljungbox(x[:, f], lags=10)["lb_pvalue"].tolist())
    assert mine == pytest.approx(np.mean(oracle), rel=1e-9, abs=1e-300)
    assert mine < 0.01


def test_detects_dependent_scenario():
    detections = sum(
        ljung_box_pvalue(generate(default_spec("ar_dependent", seed=r))) < 0.05
        for r in range(10)
    )
    assert detections == 10


def test_reversal_invariance():
    # exact in exact arithmetic; float summation order leaves rounding noise
    x = ar1_series(300, phi=0.5, dims=3, seed=2)
    assert ljung_box_pvalue(x) == pytest.approx(ljung_box_pvalue(x[::-1]), rel=1e-9)


def test_constant_dimension_rejected():
    x = np.column_stack([np.random.default_rng(0).standard_normal(100), np.full(100, 3.0)])
    with pytest.raises(ValueError, match="constant"):
        ljung_box_pvalue(x)


def test_series_too_short_rejected():
    with pytest.raises(ValueError, match="more than 40 rows"):
        ljung_box_pvalue(np.random.default_rng(0).standard_normal((40, 1)))
    with pytest.raises(ValueError, match="at least 1"):
        ljung_box_pvalue(np.random.default_rng(0).standard_normal((50, 1)), LjungBoxConfig(max_lag=0))


def test_ljung_box_test_shares_result_shape():
    x = ar1_series(200, phi=0.0, dims=1, seed=3)
    result = ljung_box_test(x)
    assert result.p_value == result.statistic == ljung_box_pvalue(x)
    assert result.null is None


def test_identical_chunks_give_zero_statistic_and_high_p():
    rng = np.random.default_rng(1)
    block = rng.standard_normal((30, 3))
    tiled = np.tile(block, (10, 1))
    result = pca_drift_test(tiled, PcaDriftConfig(), seed=0)
    assert result.statistic == 0.0
    assert result.p_value > 0.9


def test_degenerate_covariance_rejected():
    data = np.ones((100, 3))
    with pytest.raises(ValueError, match="degenerate covariance"):
        pca_drift_test(data)


def test_detects_exaggerated_variance_changepoint():
    detections = sum(
        pca_drift_pvalue(
            generate(default_spec("variance_changepoint", seed=r, factor=4.0)),
            seed=1_000_000 + r,
        )
        < 0.05
        for r in range(10)
    )
    assert detections >= 6


def test_shuffled_input_pvalues_look_null():
    ps = []
    for r in range(20):
        data = shuffle_rows(generate(default_spec("iid_mixture", n=400, seed=r)), 7000 + r)
        ps.append(pca_drift_pvalue(data, seed=r))
    ps = np.asarray(ps)
    assert np.mean(ps < 0.05) <= 0.15
    assert 0.2 < np.median(ps) < 0.8


def test_pca_config_validation():
    data = np.random.default_rng(0).standard_normal((100, 2))
    with pytest.raises(ValueError, match="at least 2 chunks"):
        pca_drift_test(data, PcaDriftConfig(n_chunks=1))
    with pytest.raises(ValueError, match="n_components"):
        pca_drift_test(data, PcaDriftConfig(n_components=2))
    with pytest.raises(ValueError, match="at least 2 permutations"):
        pca_drift_test(data, PcaDriftConfig(permutations=1))
    with pytest.raises(ValueError, match="rows"):
        pca_drift_test(data[:15], PcaDriftConfig(n_chunks=10))


def test_pca_deterministic_given_seed():
    data = generate(default_spec("mean_shift", n=200, seed=4))
    a = pca_drift_test(data, seed=11)
    b = pca_drift_test(data, seed=11)
    assert a.statistic == b.statistic and a.p_value == b.p_value
