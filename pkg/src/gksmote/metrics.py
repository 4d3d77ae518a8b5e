"""Confusion-matrix metrics with the minority class as positive."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import EmptyClassError, NoPositiveError, ShapeError


@dataclass(frozen=True)
class ConfusionCounts:
    tp: int = 0
    fp: int = 0
    tn: int = 0
    fn: int = 0

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.tn + self.fn

    def __add__(self, other: "ConfusionCounts") -> "ConfusionCounts":
        return ConfusionCounts(
            self.tp + other.tp, self.fp + other.fp, self.tn + other.tn, self.fn + other.fn
        )


def confusion_counts(y_true, y_pred) -> ConfusionCounts:
    t = np.asarray(y_true).astype(bool)
    p = np.asarray(y_pred).astype(bool)
    if t.shape != p.shape:
        raise ShapeError(f"label arrays differ in shape: {t.shape} vs {p.shape}")
    return ConfusionCounts(
        tp=int(np.count_nonzero(t & p)),
        fp=int(np.count_nonzero(~t & p)),
        tn=int(np.count_nonzero(~t & ~p)),
        fn=int(np.count_nonzero(t & ~p)),
    )


def mcc(c: ConfusionCounts) -> float:
    """Matthews correlation coefficient; 0 when any marginal is empty."""
    denom = (c.tp + c.fp) * (c.tp + c.fn) * (c.tn + c.fp) * (c.tn + c.fn)
    if denom == 0:
        return 0.0
    return (c.tp * c.tn - c.fp * c.fn) / math.sqrt(denom)


def balanced_accuracy(c: ConfusionCounts) -> float:
    if c.tp + c.fn == 0 or c.tn + c.fp == 0:
        raise EmptyClassError("balanced accuracy needs both classes among the evaluated points")
    return 0.5 * (c.tp / (c.tp + c.fn) + c.tn / (c.tn + c.fp))


def auprc(labels, scores) -> float:
    """Area under the precision-recall curve as average precision.

    Points are ranked by descending score. Within a group of equal scores
    negatives are ranked before positives, so ties never help: the value is
    the mean, over positives, of the precision at the positive's rank.
    """
    y = np.asarray(labels).astype(bool)
    s = np.asarray(scores, dtype=np.float64)
    if y.shape != s.shape or y.ndim != 1:
        raise ShapeError(f"labels {y.shape} and scores {s.shape} must be equal-length vectors")
    n_pos = int(np.count_nonzero(y))
    if n_pos == 0:
        raise NoPositiveError("AUPRC needs at least one positive label")
    order = np.lexsort((y, -s))
    hits = y[order]
    ranks = np.flatnonzero(hits) + 1
    precision = np.arange(1, n_pos + 1) / ranks
    return float(precision.sum() / n_pos)


@dataclass(frozen=True)
class FoldMetrics:
    mcc: float
    bac: float
    auprc: float
    counts: ConfusionCounts


def score_predictions(y_true, y_pred, scores) -> FoldMetrics:
    c = confusion_counts(y_true, y_pred)
    return FoldMetrics(mcc(c), balanced_accuracy(c), auprc(y_true, scores), c)


@dataclass(frozen=True)
class MetricReport:
    """Mean metrics, pooled counts, and the per-fold values behind them."""

    mcc: float
    bac: float
    auprc: float
    counts: ConfusionCounts
    folds: list[FoldMetrics] = field(default_factory=list)

    @classmethod
    def from_folds(cls, folds) -> "MetricReport":
        folds = list(folds)
        total = ConfusionCounts()
        for f in folds:
            total = total + f.counts
        return cls(
            mcc=float(np.mean([f.mcc for f in folds])),
            bac=float(np.mean([f.bac for f in folds])),
            auprc=float(np.mean([f.auprc for f in folds])),
            counts=total,
            folds=folds,
        )

    def rows(self) -> list[dict]:
        """Flat rows: one per fold plus a final ``mean`` row."""
        def row(name, m, c):
            return {
                "fold": name, "mcc": repr(float(m.mcc)), "bac": repr(float(m.bac)),
                "auprc": repr(float(m.auprc)), "tp": c.tp, "fp": c.fp, "tn": c.tn, "fn": c.fn,
            }

        out = [row(str(i), f, f.counts) for i, f in enumerate(self.folds)]
        out.append(row("mean", self, self.counts))
        return out

    def to_csv(self, path) -> None:
        rows = self.rows()
        with open(path, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=list(rows[0]), lineterminator="\n")
            w.writeheader()
            w.writerows(rows)

    def table(self) -> str:
        lines = [f"{'fold':>6} {'MCC':>8} {'BAc':>8} {'AUPRC':>8}"]
        for i, f in enumerate(self.folds):
            lines.append(f"{i:>6} {f.mcc:8.4f} {f.bac:8.4f} {f.auprc:8.4f}")
        lines.append(f"{'mean':>6} {self.mcc:8.4f} {self.bac:8.4f} {self.auprc:8.4f}")
        return "\n".join(lines)
