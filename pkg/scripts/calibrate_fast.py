"""Dev calibration: fast statistical checks (criteria 1-4 analogues)."""

import time

import numpy as np

from noniid.baselines import LjungBoxConfig, ljung_box_pvalue
from noniid.generators import default_spec, generate, shuffle_rows
from noniid.permute import knn_order_test

t_start = time.perf_counter()

# --- criterion 1: null uniformity, 200 reps shuffled iid_mixture N=1000
ps = []
for r in range(200):
    data = generate(default_spec("iid_mixture", seed=r))
    ps.append(knn_order_test(shuffle_rows(data, 2_000_000 + r), seed=1_000_000 + r).p_value)
ps = np.sort(ps)
ecdf = np.arange(1, 201) / 200
sup = max(np.abs(ecdf - ps).max(), np.abs(ecdf - 1 / 200 - ps).max())
frac = float(np.mean(np.asarray(ps) < 0.05))
print(f"[crit1] sup-dist={sup:.4f} frac<0.05={frac:.3f}  ({time.perf_counter()-t_start:.0f}s)")

# --- criterion 2: mean shift 50 reps
det = shuf_det = 0
for r in range(50):
    data = generate(default_spec("mean_shift", seed=r))
    p1 = knn_order_test(data, seed=1_000_000 + r).p_value
    p2 = knn_order_test(shuffle_rows(data, 2_000_000 + r), seed=1_000_000 + r).p_value
    det += p1 < 0.05
    shuf_det += p2 < 0.05
print(f"[crit2] mean_shift knn detect {det}/50, shuffled {shuf_det}/50")

# --- criterion 3: variance changepoint 50 reps + ljung-box on same data
det = shuf_det = lb_det = 0
for r in range(50):
    data = generate(default_spec("variance_changepoint", seed=r))
    p1 = knn_order_test(data, seed=1_000_000 + r).p_value
    p2 = knn_order_test(shuffle_rows(data, 2_000_000 + r), seed=1_000_000 + r).p_value
    det += p1 < 0.05
    shuf_det += p2 < 0.05
    lb_det += ljung_box_pvalue(data, LjungBoxConfig()) < 0.05
print(f"[crit3] variance knn detect {det}/50, shuffled {shuf_det}/50, ljung-box {lb_det}/50")

# --- criterion 4: AR 50 reps both methods
det = lb_det = 0
for r in range(50):
    data = generate(default_spec("ar_dependent", seed=r))
    det += knn_order_test(data, seed=1_000_000 + r).p_value < 0.05
    lb_det += ljung_box_pvalue(data, LjungBoxConfig()) < 0.05
print(f"[crit4] ar knn detect {det}/50, ljung-box {lb_det}/50")

# --- coverage (P-1)/(P+1): N=60 IID, 500 reps
rng = np.random.default_rng(42)
inside = 0
for r in range(500):
    res = knn_order_test(rng.standard_normal((60, 2)), k=5, seed=r)
    lo, hi = res.null.stats.min(), res.null.stats.max()
    inside += lo <= res.statistic <= hi
print(f"[coverage] {inside/500:.3f} expected {24/26:.3f}")

# --- generator stats
diffs = []
for r in range(200):
    data = generate(default_spec("mean_shift", seed=r))
    diffs.append(data[-100:].mean(axis=0) - data[:100].mean(axis=0))
print(f"[mean_shift] decile diff mean per dim: {np.mean(diffs, axis=0)}")

ratios = []
for r in range(20):
    data, comp = generate(default_spec("variance_changepoint", seed=r), return_labels=True)
    spec = default_spec("variance_changepoint", seed=r)
    base = generate(default_spec("iid_mixture", seed=r))  # same model, no scaling
    half = 500
    for c in range(10):
        first = data[:half][comp[:half] == c]
        second = data[half:][comp[half:] == c]
        if len(first) > 10 and len(second) > 10:
            resid_f = first - first.mean(axis=0)
            resid_s = second - second.mean(axis=0)
            ratios.append(resid_s.std() / resid_f.std())
print(f"[variance] mean std ratio second/first: {np.mean(ratios):.3f}")

ac1 = []
for r in range(200):
    data = generate(default_spec("ar_dependent", seed=r))
    x = data[:, 0] - data[:, 0].mean()
    ac1.append((x[:-1] * x[1:]).sum() / (x * x).sum())
print(f"[ar] mean lag-1 autocorr: {np.mean(ac1):.3f}, series max abs {np.abs(data).max():.1f}")

print(f"total {time.perf_counter()-t_start:.0f}s")
