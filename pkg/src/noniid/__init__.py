"""Order audit for datasets: does the collection order matter?

Builds a kNN graph over feature vectors, compares the index distances of
neighbor pairs against the analytic all-pairs distribution with a KS
statistic, and scores significance by permutation testing. Per-datapoint
scores localize where the order dependence lives.
"""

from .baselines import (
    LjungBoxConfig,
    PcaDriftConfig,
    ljung_box_pvalue,
    ljung_box_test,
    pca_drift_pvalue,
    pca_drift_test,
)
from .bench import BenchmarkEntry, BenchmarkPlan, BenchmarkResult, histogram, run_benchmark
from .generators import (
    KINDS,
    MixtureModel,
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
from .knn import KnnGraph, METRICS, build_knn_graph, pairwise_distance, validate_matrix
from .kstat import BackgroundCdf, IndexDistanceStat, background_cdf, foreground_distances, ks_statistic
from .matrixio import FORMATS, MatrixFormatError, load_matrix, write_matrix
from .permute import (
    DEFAULT_PERMUTATIONS,
    NullDistribution,
    TestResult,
    kde_p_value,
    knn_order_test,
    null_distribution,
    permuted_statistic,
)
from .scores import (
    DatapointScores,
    PerPointBackground,
    datapoint_scores,
    per_point_background,
    smooth_scores,
)

__all__ = [
    "BackgroundCdf",
    "BenchmarkEntry",
    "BenchmarkPlan",
    "BenchmarkResult",
    "DEFAULT_PERMUTATIONS",
    "DatapointScores",
    "FORMATS",
    "IndexDistanceStat",
    "KINDS",
    "KnnGraph",
    "LjungBoxConfig",
    "METRICS",
    "MatrixFormatError",
    "MixtureModel",
    "NullDistribution",
    "PcaDriftConfig",
    "PerPointBackground",
    "ScenarioSpec",
    "TestResult",
    "background_cdf",
    "build_knn_graph",
    "datapoint_scores",
    "default_spec",
    "foreground_distances",
    "gen_ar_dependent",
    "gen_embedding_scenario",
    "gen_iid_mixture",
    "gen_mean_shift",
    "gen_variance_changepoint",
    "generate",
    "histogram",
    "kde_p_value",
    "knn_order_test",
    "ks_statistic",
    "ljung_box_pvalue",
    "ljung_box_test",
    "load_matrix",
    "null_distribution",
    "pairwise_distance",
    "pca_drift_pvalue",
    "pca_drift_test",
    "per_point_background",
    "permuted_statistic",
    "run_benchmark",
    "shuffle_rows",
    "smooth_scores",
    "validate_matrix",
    "write_matrix",
]

__version__ = "0.1.0"
