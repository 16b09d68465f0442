"""Seeded synthetic datasets with known order structure.

Gaussian-mixture scenarios (2-D by default): IID draws, a gradual mean
shift, a variance changepoint, and an autoregressive sequence that is
marginally identical but dependent. Embedding scenarios mimic model
embeddings with per-class Gaussian clusters (64-D by default): class-sorted
order, drifting class weights, and a contiguous single-class block hidden
in otherwise IID data.

Every generator is a pure function of its ScenarioSpec, including the seed.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

KINDS = (
    "iid_mixture",
    "mean_shift",
    "variance_changepoint",
    "ar_dependent",
    "sorted_classes",
    "class_drift",
    "contiguous_block",
)

_MIXTURE_COMPONENTS = 10

# (n, dims) used when a spec does not say otherwise.
_DEFAULT_SHAPES = {
    "iid_mixture": (1000, 2),
    "mean_shift": (1000, 2),
    "variance_changepoint": (1000, 2),
    "ar_dependent": (1000, 2),
    "sorted_classes": (10_000, 64),
    "class_drift": (5_000, 64),
    "contiguous_block": (2_500, 64),
}


@dataclass(frozen=True)
class ScenarioSpec:
    """What to generate: scenario kind, shape, kind-specific params, seed."""

    kind: str
    n: int
    dims: int
    params: dict = field(default_factory=dict)
    seed: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown scenario kind {self.kind!r}; expected one of {KINDS}")
        if self.n < 10:
            raise ValueError(f"need at least 10 samples, got {self.n}")
        if self.dims < 1:
            raise ValueError(f"need at least 1 feature dimension, got {self.dims}")

    def with_seed(self, seed: int) -> ScenarioSpec:
        return replace(self, seed=seed)


def default_spec(kind: str, n: int | None = None, dims: int | None = None, seed: int = 0, **params) -> ScenarioSpec:
    """ScenarioSpec with per-kind default shape; params override kind defaults."""
    if kind not in _DEFAULT_SHAPES:
        raise ValueError(f"unknown scenario kind {kind!r}; expected one of {KINDS}")
    base_n, base_dims = _DEFAULT_SHAPES[kind]
    return ScenarioSpec(
        kind=kind,
        n=base_n if n is None else n,
        dims=base_dims if dims is None else dims,
        params=params,
        seed=seed,
    )


@dataclass(frozen=True)
class MixtureModel:
    """Isotropic Gaussian mixture with uniform component weights."""

    means: np.ndarray  # (components, dims), drawn from U[0, 10]
    stds: np.ndarray  # (components,), drawn from (0, 1]


def _draw_mixture(rng: np.random.Generator, dims: int) -> MixtureModel:
    means = rng.uniform(0.0, 10.0, size=(_MIXTURE_COMPONENTS, dims))
    # 1 - U[0, 1) lands in (0, 1], keeping every component non-degenerate.
    stds = 1.0 - rng.uniform(0.0, 1.0, size=_MIXTURE_COMPONENTS)
    return MixtureModel(means=means, stds=stds)


def _require_kind(spec: ScenarioSpec, *kinds: str) -> None:
    if spec.kind not in kinds:
        raise ValueError(f"spec kind {spec.kind!r} does not match generator for {kinds}")


def _param(spec: ScenarioSpec, name: str, default):
    return spec.params.get(name, default)


def _unknown_params(spec: ScenarioSpec, allowed: tuple[str, ...]) -> None:
    extra = set(spec.params) - set(allowed)
    if extra:
        raise ValueError(f"unknown parameters for {spec.kind}: {sorted(extra)}")


def gen_iid_mixture(spec: ScenarioSpec, return_labels: bool = False):
    """IID draws from a fixed 10-component Gaussian mixture."""
    _require_kind(spec, "iid_mixture")
    _unknown_params(spec, ())
    return _mixture_draw(spec, total_shift=0.0, factor=1.0, fraction=0.5, return_labels=return_labels)


def gen_mean_shift(spec: ScenarioSpec, return_labels: bool = False):
    """Mixture draws whose component means drift linearly over the sequence.

    Sample t of n sees every mean translated by total_shift * t / n in each
    dimension, so the cumulative shift approaches total_shift by the end.
    """
    _require_kind(spec, "mean_shift")
    _unknown_params(spec, ("total_shift",))
    total_shift = float(_param(spec, "total_shift", 2.0))
    return _mixture_draw(spec, total_shift=total_shift, factor=1.0, fraction=0.5, return_labels=return_labels)


def gen_variance_changepoint(spec: ScenarioSpec, return_labels: bool = False):
    """Mixture draws whose component stds jump by a factor at a changepoint."""
    _require_kind(spec, "variance_changepoint")
    _unknown_params(spec, ("factor", "fraction"))
    factor = float(_param(spec, "factor", 1.5))
    fraction = float(_param(spec, "fraction", 0.5))
    if factor <= 0.0:
        raise ValueError(f"std factor must be positive, got {factor}")
    if not 0.0 < fraction < 1.0:
        raise ValueError(f"changepoint fraction must be in (0, 1), got {fraction}")
    return _mixture_draw(spec, total_shift=0.0, factor=factor, fraction=fraction, return_labels=return_labels)


def _mixture_draw(spec: ScenarioSpec, total_shift: float, factor: float, fraction: float, return_labels: bool):
    rng = np.random.default_rng(spec.seed)
    model = _draw_mixture(rng, spec.dims)
    component = rng.integers(0, _MIXTURE_COMPONENTS, size=spec.n)
    noise = rng.standard_normal((spec.n, spec.dims))

    t = np.arange(spec.n, dtype=np.float64)
    shift = total_shift * (t / spec.n)[:, None]
    changepoint = int(np.ceil(fraction * spec.n))
    scale = np.where(t < changepoint, 1.0, factor)

    stds = model.stds[component] * scale
    data = model.means[component] + shift + stds[:, None] * noise
    return (data, component) if return_labels else data


def gen_ar_dependent(spec: ScenarioSpec, return_labels: bool = False):
    """Order-3 autoregressive draws, marginally identical but dependent.

    Coefficients must sum to zero so the marginal distribution stays fixed
    while consecutive values are correlated.
    """
    _require_kind(spec, "ar_dependent")
    _unknown_params(spec, ("alphas",))
    alphas = tuple(float(a) for a in _param(spec, "alphas", (0.5, 0.4, -0.9)))
    if len(alphas) != 3:
        raise ValueError(f"expected 3 autoregressive coefficients, got {len(alphas)}")
    if abs(sum(alphas)) > 1e-9:
        raise ValueError(f"autoregressive coefficients must sum to 0, got sum {sum(alphas)}")
    a1, a2, a3 = alphas

    rng = np.random.default_rng(spec.seed)
    data = np.empty((spec.n, spec.dims), dtype=np.float64)
    data[:3] = rng.standard_normal((3, spec.dims))
    for t in range(3, spec.n):
        mean = a1 * data[t - 1] + a2 * data[t - 2] + a3 * data[t - 3]
        data[t] = mean + rng.standard_normal(spec.dims)
    return (data, None) if return_labels else data


def gen_embedding_scenario(spec: ScenarioSpec, return_labels: bool = False):
    """Per-class Gaussian clusters standing in for model embeddings.

    sorted_classes lays the classes out as contiguous blocks; class_drift
    interpolates the class sampling weights from uniform to a geometric
    decay; contiguous_block overwrites block_len consecutive rows halfway
    through otherwise IID class draws with a single class.
    """
    _require_kind(spec, "sorted_classes", "class_drift", "contiguous_block")
    allowed = ("classes", "separation")
    if spec.kind == "class_drift":
        allowed += ("skew",)
    if spec.kind == "contiguous_block":
        allowed += ("block_len", "block_class")
    _unknown_params(spec, allowed)

    classes = int(_param(spec, "classes", 10))
    separation = float(_param(spec, "separation", 4.0))
    if classes < 1:
        raise ValueError(f"need at least 1 class, got {classes}")
    if separation <= 0.0:
        raise ValueError(f"class separation must be positive, got {separation}")

    rng = np.random.default_rng(spec.seed)
    # Mean inter-center distance is about separation times the unit
    # intra-class std, mimicking clustered embedding geometry.
    center_scale = separation / np.sqrt(2.0 * spec.dims)
    centers = rng.standard_normal((classes, spec.dims)) * center_scale

    if spec.kind == "sorted_classes":
        block_sizes = np.full(classes, spec.n // classes)
        block_sizes[: spec.n % classes] += 1
        labels = np.repeat(np.arange(classes), block_sizes)
    elif spec.kind == "class_drift":
        skew = float(_param(spec, "skew", 0.5))
        if not 0.0 < skew <= 1.0:
            raise ValueError(f"skew must be in (0, 1], got {skew}")
        start = np.full(classes, 1.0 / classes)
        end = skew ** np.arange(classes)
        end /= end.sum()
        mix = (np.arange(spec.n) / (spec.n - 1.0))[:, None]
        probs = (1.0 - mix) * start + mix * end
        edges = np.cumsum(probs, axis=1)
        labels = (rng.random(spec.n)[:, None] > edges).sum(axis=1)
    else:
        block_len = int(_param(spec, "block_len", 250))
        block_class = int(_param(spec, "block_class", 0))
        start = spec.n // 2
        if not 1 <= block_len < spec.n:
            raise ValueError(f"block length must be in [1, {spec.n - 1}], got {block_len}")
        if start + block_len > spec.n:
            raise ValueError(f"block of {block_len} starting at {start} runs past {spec.n} rows")
        if not 0 <= block_class < classes:
            raise ValueError(f"block class {block_class} out of range for {classes} classes")
        labels = rng.integers(0, classes, size=spec.n)
        labels[start : start + block_len] = block_class

    data = centers[labels] + rng.standard_normal((spec.n, spec.dims))
    return (data, labels) if return_labels else data


_GENERATORS = {
    "iid_mixture": gen_iid_mixture,
    "mean_shift": gen_mean_shift,
    "variance_changepoint": gen_variance_changepoint,
    "ar_dependent": gen_ar_dependent,
    "sorted_classes": gen_embedding_scenario,
    "class_drift": gen_embedding_scenario,
    "contiguous_block": gen_embedding_scenario,
}


def generate(spec: ScenarioSpec, return_labels: bool = False):
    """Dispatch to the generator for spec.kind."""
    return _GENERATORS[spec.kind](spec, return_labels=return_labels)


def shuffle_rows(data, seed: int) -> np.ndarray:
    """Seeded uniform shuffle of dataset rows; the IID twin of any scenario."""
    arr = np.asarray(data)
    rng = np.random.default_rng(seed)
    return arr[rng.permutation(arr.shape[0])]
