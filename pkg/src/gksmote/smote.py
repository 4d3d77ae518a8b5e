"""Classic SMOTE, used as the comparison baseline.

Same quota formula as GK-SMOTE. Parents are drawn uniformly from the whole
minority class (no filtering, clustering or weighting), which lets any
quota be reached rather than only integer multiples of |P|.
"""

from __future__ import annotations

import numpy as np

from .data import Dataset
from .errors import PoolTooSmallError
from .neighbors import knn_members
from .sampler import SamplerConfig, SyntheticSamples, compute_total_quota


def smote_samples(d: Dataset, cfg: SamplerConfig = SamplerConfig()) -> SyntheticSamples:
    """Draw the synthetic points (with their parent/neighbour trace)."""
    rows = d.minority_idx
    if rows.size < 2:
        raise PoolTooSmallError(f"SMOTE needs at least 2 minority samples, got {rows.size}")
    n = compute_total_quota(d, cfg.target_ir)
    if n == 0:
        return SyntheticSamples.concat([], d.dim)
    pool = d.X[rows]
    narrays, _ = knn_members(pool, np.arange(rows.size), min(cfg.k, rows.size - 1))
    rng = np.random.default_rng(cfg.seed)
    parents = rng.integers(0, rows.size, size=n)
    picks = rng.integers(0, narrays.shape[1], size=n)
    gaps = rng.random(n)
    nn = narrays[parents, picks]
    X = pool[parents] + gaps[:, None] * (pool[nn] - pool[parents])
    return SyntheticSamples(X, rows[parents], rows[nn], gaps)


def smote(d: Dataset, cfg: SamplerConfig = SamplerConfig()) -> Dataset:
    d.require_both_classes()
    out = d.append_synthetic(smote_samples(d, cfg).X)
    out.meta.update(sampler="smote")
    return out
