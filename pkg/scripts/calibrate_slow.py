"""Dev calibration: embedding scenarios (crit 5) and score valley (crit 6)."""

import time

import numpy as np

from noniid.generators import default_spec, generate, shuffle_rows
from noniid.permute import knn_order_test
from noniid.scores import datapoint_scores
from noniid.knn import build_knn_graph

t_start = time.perf_counter()

for kind in ("contiguous_block", "class_drift", "sorted_classes"):
    det = 0
    t0 = time.perf_counter()
    for r in range(50):
        data = generate(default_spec(kind, seed=r))
        det += knn_order_test(data, seed=1_000_000 + r).p_value < 0.05
    print(f"[crit5] {kind}: detect {det}/50  ({time.perf_counter()-t0:.0f}s)", flush=True)

# --- criterion 6: score valley in contiguous block
valley = 0
block_gaps = []
iid_gaps = []
inside = np.zeros(2500, dtype=bool)
inside[1250:1501] = True
for r in range(50):
    data = generate(default_spec("contiguous_block", seed=r))
    graph = build_knn_graph(data, 10)
    sc = datapoint_scores(graph)
    gap = sc.smoothed[~inside].mean() - sc.smoothed[inside].mean()
    block_gaps.append(gap)
    valley += gap > 0

    shuffled = shuffle_rows(data, 3_000_000 + r)
    sc2 = datapoint_scores(build_knn_graph(shuffled, 10))
    iid_gaps.append(abs(sc2.smoothed[inside].mean() - sc2.smoothed[~inside].mean()))

print(f"[crit6] valley present {valley}/50; mean block gap {np.mean(block_gaps):.4f}; "
      f"mean iid |gap| {np.mean(iid_gaps):.4f}; "
      f"iid gap < half block gap: {np.mean(iid_gaps) < 0.5 * np.mean(block_gaps)}")
print(f"total {time.perf_counter()-t_start:.0f}s")
