"""Gaussian kernel density over k-NN neighbourhoods.

The density of a point is the mean Gaussian kernel value over the
distances to its k nearest neighbours in the whole dataset (both classes,
self excluded)::

    f(p) = 1/k * sum_q K_h(|p - q|),   K_h(t) = exp(-t^2 / 2h^2) / (h sqrt(2 pi))
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .data import Dataset, Label
from .errors import ConfigError, EmptyInputError
from .neighbors import knn, knn_members

MIN_BANDWIDTH = 1e-6
_SQRT_2PI = math.sqrt(2.0 * math.pi)
_TINY = np.finfo(np.float64).tiny


class Verdict(str, enum.Enum):
    NOISY = "noisy"
    BORDERLINE = "borderline"
    SAFE = "safe"
    PENDING = "pending"


class Cluster(str, enum.Enum):
    A = "A"
    B = "B"
    NONE = "none"


@dataclass(frozen=True)
class BandwidthPolicy:
    mode: str = "silverman"
    fixed_value: float | None = None

    def __post_init__(self):
        if self.mode not in ("silverman", "fixed"):
            raise ConfigError(f"unknown bandwidth mode {self.mode!r}")
        if self.mode == "fixed" and not (
            self.fixed_value is not None and math.isfinite(self.fixed_value) and self.fixed_value > 0
        ):
            raise ConfigError(f"fixed bandwidth must be a positive number, got {self.fixed_value!r}")

    @classmethod
    def parse(cls, text: str) -> "BandwidthPolicy":
        """``"silverman"`` or ``"fixed:<h>"``."""
        text = text.strip()
        if text == "silverman":
            return cls()
        if text.startswith("fixed:"):
            try:
                value = float(text[len("fixed:"):])
            except ValueError:
                raise ConfigError(f"bad fixed bandwidth in {text!r}") from None
            return cls("fixed", value)
        raise ConfigError(f"bandwidth must be 'silverman' or 'fixed:<h>', got {text!r}")

    def __str__(self):
        return "silverman" if self.mode == "silverman" else f"fixed:{self.fixed_value!r}"


@dataclass(frozen=True)
class DensityRecord:
    """Per-minority-sample diagnostics.

    ``row`` indexes the dataset; ``sample_index`` is the position within
    the minority set P. ``density`` is ``None`` for noisy samples.
    """

    sample_index: int
    row: int
    majority_count: int
    density: float | None
    verdict: Verdict
    cluster: Cluster = Cluster.NONE


def select_bandwidth(values, policy: BandwidthPolicy = BandwidthPolicy()) -> float:
    """Kernel bandwidth from a sample of neighbour distances.

    Silverman's rule ``1.06 * std * n**(-1/5)`` with the sample (ddof=1)
    standard deviation, floored at ``MIN_BANDWIDTH``.
    """
    if policy.mode == "fixed":
        return float(policy.fixed_value)
    values = np.asarray(values, dtype=np.float64).ravel()
    if values.size == 0:
        raise EmptyInputError("bandwidth selection needs at least one distance")
    if not np.all(np.isfinite(values)) or np.any(values < 0):
        raise EmptyInputError("distances must be finite and nonnegative")
    sigma = float(np.std(values, ddof=1)) if values.size > 1 else 0.0
    return max(MIN_BANDWIDTH, 1.06 * sigma * values.size ** -0.2)


def gaussian_kernel(t, h: float):
    t = np.asarray(t, dtype=np.float64)
    return np.exp(-(t * t) / (2.0 * h * h)) / (h * _SQRT_2PI)


def density_from_distances(distances, h: float):
    """Mean kernel value along the last axis, floored at the smallest normal float."""
    # far-away neighbourhoods underflow to 0; densities must stay positive
    return np.maximum(np.mean(gaussian_kernel(distances, h), axis=-1), _TINY)


def kde_density(d: Dataset, row: int, k: int, h: float) -> float:
    nl = knn(d.X[row], d.X, k, self_index=row)
    return float(density_from_distances(nl.distances, h))


def partition_neighbors(d: Dataset, row: int, k: int, h: float) -> tuple[frozenset, frozenset]:
    """Homogeneous and heterogeneous neighbours of minority row ``row``.

    Among the k nearest neighbours: minority ones at least as dense as the
    query (HON), and majority ones strictly denser (HEN).
    """
    nl = knn(d.X[row], d.X, k, self_index=row)
    f_p = kde_density(d, row, k, h)
    hon, hen = set(), set()
    for q in nl.indices:
        f_q = kde_density(d, int(q), k, h)
        if d.y[q] == Label.MINORITY and f_q >= f_p:
            hon.add(int(q))
        elif d.y[q] == Label.MAJORITY and f_q > f_p:
            hen.add(int(q))
    return frozenset(hon), frozenset(hen)


@dataclass(frozen=True)
class DensityPass:
    records: list[DensityRecord]
    bandwidth: float | None
    neighbor_rows: np.ndarray
    neighbor_distances: np.ndarray

    @property
    def retained(self) -> list[DensityRecord]:
        return [r for r in self.records if r.verdict is not Verdict.NOISY]


def density_pass(d: Dataset, k: int, policy: BandwidthPolicy = BandwidthPolicy()) -> DensityPass:
    """Noise verdicts and densities for every minority sample of ``d``.

    One k-NN query per minority sample (whole dataset, self excluded) feeds
    both the majority count m and the density. Samples with m == k are
    noisy and get no density. The bandwidth is chosen once from the pooled
    neighbour distances of the retained samples.
    """
    rows = d.minority_idx
    nbr, dist = knn_members(d.X, rows, k)
    m = np.count_nonzero(d.y[nbr] == Label.MAJORITY, axis=1)
    keep = m < k
    h = select_bandwidth(dist[keep], policy) if keep.any() else None
    dens = density_from_distances(dist, h) if h is not None else None
    records = [
        DensityRecord(
            sample_index=i,
            row=int(r),
            majority_count=int(m[i]),
            density=float(dens[i]) if keep[i] else None,
            verdict=Verdict.PENDING if keep[i] else Verdict.NOISY,
        )
        for i, r in enumerate(rows)
    ]
    return DensityPass(records, h, nbr, dist)


def categorize(d: Dataset, k: int, policy: BandwidthPolicy = BandwidthPolicy()) -> list[DensityRecord]:
    return density_pass(d, k, policy).records
