"""Friedman rank test and Nemenyi critical difference."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.stats import rankdata

from .errors import RangeError, ShapeError, UnsupportedAlphaError

# q_alpha = studentized range quantile (infinite df) / sqrt(2), m = 2..20
NEMENYI_Q = {
    0.05: (1.960, 2.344, 2.569, 2.728, 2.850, 2.948, 3.031, 3.102, 3.164, 3.219,
           3.268, 3.313, 3.354, 3.391, 3.426, 3.458, 3.489, 3.517, 3.544),
    0.10: (1.645, 2.052, 2.291, 2.460, 2.589, 2.693, 2.780, 2.855, 2.920, 2.978,
           3.030, 3.077, 3.120, 3.159, 3.196, 3.230, 3.261, 3.291, 3.319),
}

_EPS = 1e-16
_MAX_ITER = 10_000


def _lower_gamma_series(a, x):
    # P(a, x) by its power series; converges fast for x < a + 1
    term = 1.0 / a
    total = term
    ap = a
    for _ in range(_MAX_ITER):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * _EPS:
            break
    return total * math.exp(-x + a * math.log(x) - math.lgamma(a))


def _upper_gamma_cf(a, x):
    # Q(a, x) by modified Lentz on the Legendre continued fraction; x >= a + 1
    tiny = 1e-300
    b = x + 1.0 - a
    c = 1.0 / tiny
    dd = 1.0 / b
    h = dd
    for i in range(1, _MAX_ITER):
        an = -i * (i - a)
        b += 2.0
        dd = an * dd + b
        if abs(dd) < tiny:
            dd = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        dd = 1.0 / dd
        delta = dd * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            break
    return h * math.exp(-x + a * math.log(x) - math.lgamma(a))


def regularized_gamma_q(a: float, x: float) -> float:
    """Upper regularized incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a)."""
    if a <= 0 or x < 0:
        raise ValueError("need a > 0 and x >= 0")
    if x == 0:
        return 1.0
    if x < a + 1.0:
        return 1.0 - _lower_gamma_series(a, x)
    return _upper_gamma_cf(a, x)


def chi2_sf(x: float, df: int) -> float:
    if x <= 0:
        return 1.0
    return regularized_gamma_q(df / 2.0, x / 2.0)


@dataclass(frozen=True)
class RankMatrix:
    """Scores and per-dataset ranks, methods along rows, datasets along columns.

    Rank 1 is the best (highest score); tied scores share their mean rank.
    """

    scores: np.ndarray
    ranks: np.ndarray

    @classmethod
    def from_scores(cls, scores, higher_is_better: bool = True) -> "RankMatrix":
        s = np.asarray(scores, dtype=np.float64)
        if s.ndim != 2:
            raise ShapeError(f"scores must be methods x datasets, got shape {s.shape}")
        keyed = -s if higher_is_better else s
        ranks = np.column_stack([rankdata(keyed[:, j]) for j in range(s.shape[1])]) if s.size else s
        return cls(s, ranks)

    @property
    def n_methods(self) -> int:
        return self.scores.shape[0]

    @property
    def n_datasets(self) -> int:
        return self.scores.shape[1]

    @property
    def average_ranks(self) -> np.ndarray:
        return self.ranks.mean(axis=1)


def friedman_test(r: RankMatrix) -> tuple[float, float]:
    """Friedman chi-square statistic and its chi-square(M - 1) p-value."""
    m, d = r.ranks.shape
    if m < 2 or d < 2:
        raise ShapeError(f"Friedman test needs >= 2 methods and >= 2 datasets, got {m} x {d}")
    dev = r.average_ranks - (m + 1) / 2.0
    stat = 12.0 * d / (m * (m + 1)) * float(np.sum(dev * dev))
    return stat, chi2_sf(stat, m - 1)


def nemenyi_cd(m: int, d: int, alpha: float = 0.05) -> float:
    """Critical difference of average ranks for m methods over d datasets."""
    table = NEMENYI_Q.get(alpha)
    if table is None:
        raise UnsupportedAlphaError(f"alpha must be one of {sorted(NEMENYI_Q)}, got {alpha}")
    if not 2 <= m <= 20:
        raise RangeError(f"Nemenyi table covers 2..20 methods, got {m}")
    if d < 1:
        raise RangeError(f"need at least one dataset, got {d}")
    return table[m - 2] * math.sqrt(m * (m + 1) / (6.0 * d))


def nemenyi_significant(average_ranks, cd: float) -> np.ndarray:
    """Boolean matrix: True where two methods' rank gap exceeds ``cd``."""
    a = np.asarray(average_ranks, dtype=np.float64)
    return np.abs(a[:, None] - a[None, :]) > cd
