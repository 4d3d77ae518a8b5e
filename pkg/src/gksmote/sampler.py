"""GK-SMOTE: density-adaptive minority oversampling.

Pipeline:

1. one k-NN query per minority sample over the whole training set; samples
   whose k neighbours are all majority are dropped as noise, the rest get a
   Gaussian KDE density;
2. 2-means on the scalar densities splits the survivors into a low-density
   (borderline, ``A``) and a high-density (safe, ``B``) cluster;
3. the synthetic quota is shared between clusters in proportion to their
   size, then within a cluster in proportion to ``(k - m) / k`` where m is
   the sample's majority-neighbour count; each sample interpolates towards
   its nearest surviving minority neighbours.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field, replace

import numpy as np

from .data import Dataset
from .density import BandwidthPolicy, Cluster, DensityRecord, Verdict, density_pass
from .errors import AllNoiseError, ConfigError, PoolTooSmallError, SingleSampleWarning
from .neighbors import knn_members


@dataclass(frozen=True)
class SamplerConfig:
    target_ir: float = 1.0
    k: int = 5
    bandwidth: BandwidthPolicy = field(default_factory=BandwidthPolicy)
    seed: int = 0
    max_cluster_iters: int = 100
    cluster_tol: float = 1e-9

    def __post_init__(self):
        if not (isinstance(self.target_ir, (int, float)) and math.isfinite(self.target_ir)):
            raise ConfigError(f"target IR must be a finite number, got {self.target_ir!r}")
        if self.target_ir < 1:
            raise ConfigError(f"target IR must be ≥ 1, got {self.target_ir}")
        if int(self.k) != self.k or self.k < 1:
            raise ConfigError(f"k must be a positive integer, got {self.k}")
        if self.seed < 0:
            raise ConfigError(f"seed must be nonnegative, got {self.seed}")
        if self.max_cluster_iters < 1 or not self.cluster_tol > 0:
            raise ConfigError("max_cluster_iters must be >= 1 and cluster_tol > 0")


@dataclass(frozen=True)
class ClusterResult:
    assignments: list[Cluster]
    centroids: tuple[float, float]
    iterations: int
    degenerate: bool = False


@dataclass(frozen=True)
class PlanEntry:
    sample_index: int
    row: int
    cluster: Cluster
    weight: float
    quota: int


@dataclass(frozen=True)
class SynthesisPlan:
    """How the total quota was distributed.

    ``n_minority`` is the unfiltered |P| used in the total quota;
    ``n_retained`` is |P'| after noise filtering.
    """

    total_n: int
    n_minority: int
    n_retained: int
    per_cluster: tuple[int, int]
    entries: list[PlanEntry]

    @property
    def quota_zero(self) -> bool:
        return self.total_n == 0


@dataclass(frozen=True)
class SyntheticSamples:
    """Generated points with the draw that produced each of them.

    ``X[j] == X_parent + gaps[j] * (X_neighbor - X_parent)`` where parent and
    neighbour are rows of the input dataset.
    """

    X: np.ndarray
    parent_rows: np.ndarray
    neighbor_rows: np.ndarray
    gaps: np.ndarray

    def __len__(self):
        return self.X.shape[0]

    @classmethod
    def concat(cls, parts, dim):
        if not parts:
            return cls(np.empty((0, dim)), np.empty(0, np.int64), np.empty(0, np.int64), np.empty(0))
        return cls(
            np.vstack([p.X for p in parts]),
            np.concatenate([p.parent_rows for p in parts]),
            np.concatenate([p.neighbor_rows for p in parts]),
            np.concatenate([p.gaps for p in parts]),
        )


@dataclass(frozen=True)
class GKSmoteResult:
    resampled: Dataset
    plan: SynthesisPlan
    records: list[DensityRecord]
    synthetic: SyntheticSamples
    bandwidth: float

    def __iter__(self):
        # unpacks as (resampled, plan, records)
        return iter((self.resampled, self.plan, self.records))


def compute_total_quota(d: Dataset, target_ir: float) -> int:
    """``max(0, floor(|Q| / IR) - |P|)`` with the unfiltered |P|."""
    if target_ir < 1:
        raise ConfigError(f"target IR must be ≥ 1, got {target_ir}")
    return max(0, math.floor(d.n_majority / target_ir) - d.n_minority)


def filter_noise(d: Dataset, k: int) -> tuple[np.ndarray, np.ndarray]:
    """Drop minority samples whose k nearest neighbours are all majority.

    Returns ``(retained_rows, m)``: the surviving dataset rows in original
    order, and the majority-neighbour count of every minority sample
    (aligned with ``d.minority_idx``).
    """
    rows = d.minority_idx
    nbr, _ = knn_members(d.X, rows, k)
    m = np.count_nonzero(d.y[nbr] == 0, axis=1)
    retained = rows[m < k]
    if retained.size == 0:
        raise AllNoiseError(f"all {rows.size} minority samples have only majority neighbours")
    return retained, m


def _sse(x, in_a):
    return sum(float(np.sum((x[m] - x[m].mean()) ** 2)) for m in (in_a, ~in_a) if m.any())


def _best_threshold_split(x):
    """Exact 1-D 2-means: the minimum-SSE cut of the sorted values."""
    s = np.sort(x)
    n = s.size
    c1 = np.cumsum(s)
    c2 = np.cumsum(s * s)
    t = np.arange(1, n)
    # cuts only between distinct values, so ties stay together
    t = t[s[t - 1] < s[t]]
    left = c2[t - 1] - c1[t - 1] ** 2 / t
    right = (c2[-1] - c2[t - 1]) - (c1[-1] - c1[t - 1]) ** 2 / (n - t)
    best = int(np.argmin(left + right))
    return s[t[best] - 1]


def cluster_densities(densities, cfg: SamplerConfig = SamplerConfig()) -> ClusterResult:
    """Lloyd's 2-means on scalars, started from the min and max values.

    A point equidistant from both centroids joins A (low density). Lloyd's
    iteration can stop in a local optimum even in one dimension, so the
    converged split is compared against the best cut of the sorted values
    and replaced when that cut has strictly lower within-cluster SSE.
    When all values are equal every point goes to B and the result is
    flagged ``degenerate``.
    """
    x = np.asarray(densities, dtype=np.float64)
    if x.ndim != 1 or x.size < 2:
        raise PoolTooSmallError("2-means needs at least two densities")
    lo, hi = float(x.min()), float(x.max())
    if lo == hi:
        return ClusterResult([Cluster.B] * x.size, (lo, hi), 0, degenerate=True)
    ca, cb = lo, hi
    iters = 0
    while True:
        in_a = np.abs(x - ca) <= np.abs(x - cb)
        new_a, new_b = float(x[in_a].mean()), float(x[~in_a].mean())
        iters += 1
        moved = max(abs(new_a - ca), abs(new_b - cb))
        ca, cb = new_a, new_b
        if moved < cfg.cluster_tol or iters >= cfg.max_cluster_iters:
            break
    in_a = np.abs(x - ca) <= np.abs(x - cb)
    cut_a = x <= _best_threshold_split(x)
    if _sse(x, cut_a) < _sse(x, in_a) * (1 - 1e-12):
        in_a = cut_a
        ca, cb = float(x[in_a].mean()), float(x[~in_a].mean())
    return ClusterResult(
        [Cluster.A if a else Cluster.B for a in in_a], (ca, cb), iters
    )


def apportion(shares, total: int) -> list[int]:
    """Largest-remainder split of ``total`` proportionally to integer ``shares``.

    Exact integer arithmetic; equal remainders favour the earlier share.
    """
    shares = [int(s) for s in shares]
    denom = sum(shares)
    if total == 0 or denom == 0:
        return [0] * len(shares)
    base = [s * total // denom for s in shares]
    rema = [s * total % denom for s in shares]
    left = total - sum(base)
    for i in sorted(range(len(shares)), key=lambda i: (-rema[i], i))[:left]:
        base[i] += 1
    return base


def build_plan(
    retained_rows,
    retained_m,
    cluster: ClusterResult,
    total_n: int,
    k: int,
    n_minority: int | None = None,
    sample_indices=None,
) -> SynthesisPlan:
    """Distribute ``total_n`` over clusters, then over samples.

    Cluster quotas are proportional to cluster size over |P'| (not |P|, so
    nothing is lost when samples were filtered). Within a cluster the raw
    weight of a sample is ``(k - m) / k``.
    """
    retained_rows = np.asarray(retained_rows)
    retained_m = np.asarray(retained_m)
    n_ret = retained_rows.size
    if len(cluster.assignments) != n_ret:
        raise ValueError("cluster assignments must cover every retained sample")
    if sample_indices is None:
        sample_indices = range(n_ret)
    sample_indices = list(sample_indices)
    members = {c: [i for i, a in enumerate(cluster.assignments) if a is c] for c in (Cluster.A, Cluster.B)}
    n_a, n_b = apportion([len(members[Cluster.A]), len(members[Cluster.B])], total_n)

    entries: list[PlanEntry | None] = [None] * n_ret
    for c, n_c in ((Cluster.A, n_a), (Cluster.B, n_b)):
        idx = members[c]
        raw = [k - int(retained_m[i]) for i in idx]
        quotas = apportion(raw, n_c)
        tot = sum(raw)
        for i, r, q in zip(idx, raw, quotas):
            entries[i] = PlanEntry(sample_indices[i], int(retained_rows[i]), c, r / tot, q)
    return SynthesisPlan(
        total_n=total_n,
        n_minority=n_ret if n_minority is None else n_minority,
        n_retained=n_ret,
        per_cluster=(n_a, n_b),
        entries=entries,
    )


def populate(
    x_pos: int,
    pool: np.ndarray,
    quota: int,
    k: int,
    rng: np.random.Generator,
    pool_rows=None,
    narray: np.ndarray | None = None,
) -> SyntheticSamples:
    """Interpolate ``quota`` points between ``pool[x_pos]`` and its neighbours.

    The neighbour array is the ``min(k, len(pool) - 1)`` nearest other pool
    points. Each draw picks a neighbour uniformly, then a gap u in [0, 1).
    A pool of one point yields copies of it.
    """
    pool = np.atleast_2d(np.asarray(pool, dtype=np.float64))
    rows = np.arange(pool.shape[0]) if pool_rows is None else np.asarray(pool_rows)
    x = pool[x_pos]
    if quota <= 0:
        return SyntheticSamples.concat([], pool.shape[1])
    if narray is None:
        k_eff = min(k, pool.shape[0] - 1)
        narray = knn_members(pool, [x_pos], k_eff)[0][0] if k_eff > 0 else np.array([x_pos])
    pick = rng.integers(0, narray.size, size=quota)
    gaps = rng.random(quota)
    nn = narray[pick]
    X = x + gaps[:, None] * (pool[nn] - x)
    return SyntheticSamples(X, np.full(quota, rows[x_pos]), rows[nn], gaps)


def sample_rng(seed: int, sample_index: int) -> np.random.Generator:
    """Independent stream per (seed, minority sample)."""
    return np.random.default_rng([seed, sample_index])


def gk_smote(d: Dataset, cfg: SamplerConfig = SamplerConfig()) -> GKSmoteResult:
    """Oversample the minority class of ``d``.

    The result dataset holds the majority class, the minority samples that
    survived noise filtering and exactly ``compute_total_quota(d, ...)``
    synthetic points, in that row order (real rows keep their input order).

    Raises
    ------
    AllNoiseError
        If every minority sample is surrounded by majority samples only.
    """
    d.require_both_classes()
    total_n = compute_total_quota(d, cfg.target_ir)
    dp = density_pass(d, cfg.k, cfg.bandwidth)
    retained = dp.retained
    if not retained:
        raise AllNoiseError(
            f"{d.name}: all {d.n_minority} minority samples have only majority neighbours"
        )
    ret_rows = np.array([r.row for r in retained])
    ret_m = np.array([r.majority_count for r in retained])
    dens = np.array([r.density for r in retained])

    if len(retained) == 1:
        warnings.warn(
            f"{d.name}: one minority sample left after filtering; treating it as safe",
            SingleSampleWarning, stacklevel=2,
        )
        clusters = ClusterResult([Cluster.B], (dens[0], dens[0]), 0, degenerate=True)
    else:
        clusters = cluster_densities(dens, cfg)

    plan = build_plan(
        ret_rows, ret_m, clusters, total_n, cfg.k,
        n_minority=d.n_minority, sample_indices=[r.sample_index for r in retained],
    )

    pool = d.X[ret_rows]
    k_eff = min(cfg.k, pool.shape[0] - 1)
    if k_eff > 0 and total_n > 0:
        narrays, _ = knn_members(pool, np.arange(pool.shape[0]), k_eff)
    else:
        narrays = np.arange(pool.shape[0])[:, None]
    parts = [
        populate(pos, pool, e.quota, cfg.k, sample_rng(cfg.seed, e.sample_index),
                 pool_rows=ret_rows, narray=narrays[pos])
        for pos, e in enumerate(plan.entries)
        if e.quota > 0
    ]
    syn = SyntheticSamples.concat(parts, d.dim)

    by_row = {e.row: e.cluster for e in plan.entries}
    records = []
    for r in dp.records:
        if r.verdict is Verdict.NOISY:
            records.append(r)
        else:
            c = by_row[r.row]
            v = Verdict.SAFE if c is Cluster.B else Verdict.BORDERLINE
            records.append(replace(r, cluster=c, verdict=v))

    keep = np.ones(len(d), dtype=bool)
    keep[[r.row for r in dp.records if r.verdict is Verdict.NOISY]] = False
    resampled = d.subset(np.flatnonzero(keep)).append_synthetic(syn.X)
    resampled.meta.update(sampler="gksmote", total_quota=total_n)
    return GKSmoteResult(resampled, plan, records, syn, dp.bandwidth)
