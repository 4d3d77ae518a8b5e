"""Reference classifier, resampling dispatch and stratified cross-validation."""

from __future__ import annotations

from dataclasses import replace
from typing import Callable

import numpy as np

from .data import Dataset
from .errors import ConfigError, PoolTooSmallError, TooSmallError
from .metrics import FoldMetrics, MetricReport, score_predictions
from .neighbors import knn, knn_external
from .sampler import SamplerConfig, gk_smote
from .smote import smote

METHODS = ("none", "smote", "gksmote")
_ALIASES = {"gk_smote": "gksmote", "gk-smote": "gksmote"}

# (train, query features) -> (predicted labels, minority scores)
Classifier = Callable[[Dataset, np.ndarray], tuple[np.ndarray, np.ndarray]]


def canonical_method(name: str) -> str:
    name = _ALIASES.get(name.strip().lower(), name.strip().lower())
    if name not in METHODS:
        raise ConfigError(f"unknown method {name!r}; choose from {', '.join(METHODS)}")
    return name


def knn_classify(train: Dataset, x, k: int) -> tuple[int, float]:
    """Label and minority score of one point.

    The score is the minority fraction among the k nearest training points;
    the label is minority when the score is at least 0.5.
    """
    if len(train) < k:
        raise PoolTooSmallError(f"k={k} exceeds the {len(train)} training points")
    nl = knn(x, train.X, k)
    score = float(np.mean(train.y[nl.indices]))
    return int(score >= 0.5), score


def knn_predict(train: Dataset, X, k: int = 5) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised :func:`knn_classify`."""
    if len(train) < k:
        raise PoolTooSmallError(f"k={k} exceeds the {len(train)} training points")
    idx, _ = knn_external(X, train.X, k)
    scores = train.y[idx].mean(axis=1)
    return (scores >= 0.5).astype(np.int8), scores


def make_knn_classifier(k: int = 5) -> Classifier:
    return lambda train, X: knn_predict(train, X, k)


def majority_baseline(train: Dataset, X) -> tuple[np.ndarray, np.ndarray]:
    """Always predicts the majority class."""
    n = np.atleast_2d(X).shape[0]
    return np.zeros(n, dtype=np.int8), np.zeros(n)


def resample(d: Dataset, method: str, cfg: SamplerConfig) -> Dataset:
    method = canonical_method(method)
    if method == "none":
        return d
    if method == "smote":
        return smote(d, cfg)
    return gk_smote(d, cfg).resampled


def derive_seed(*parts: int) -> int:
    return int(np.random.SeedSequence(list(parts)).generate_state(1)[0])


def stratified_folds(d: Dataset, folds: int = 10, seed: int = 0) -> list[np.ndarray]:
    """Test-row arrays of ``folds`` stratified folds (sorted, disjoint, covering)."""
    if folds < 2:
        raise ConfigError(f"need at least 2 folds, got {folds}")
    rng = np.random.default_rng(seed)
    assign = np.empty(len(d), dtype=np.int64)
    for rows in (d.minority_idx, d.majority_idx):
        if rows.size < folds:
            raise TooSmallError(
                f"{d.name}: a class has {rows.size} samples, fewer than {folds} folds"
            )
        assign[rng.permutation(rows)] = np.arange(rows.size) % folds
    return [np.flatnonzero(assign == f) for f in range(folds)]


def iter_folds(d: Dataset, folds: int = 10, seed: int = 0):
    for test_rows in stratified_folds(d, folds, seed):
        mask = np.zeros(len(d), dtype=bool)
        mask[test_rows] = True
        yield d.subset(np.flatnonzero(~mask)), d.subset(test_rows)


def evaluate_split(
    train: Dataset,
    test: Dataset,
    method: str = "none",
    cfg: SamplerConfig = SamplerConfig(),
    classifier: Classifier | None = None,
    k_clf: int = 5,
) -> FoldMetrics:
    """Resample ``train`` only, fit, and score on the untouched ``test``."""
    classifier = classifier or make_knn_classifier(k_clf)
    fitted_on = resample(train, method, cfg)
    labels, scores = classifier(fitted_on, test.X)
    return score_predictions(test.y, labels, scores)


def cross_validate(
    d: Dataset,
    method: str = "none",
    cfg: SamplerConfig = SamplerConfig(),
    k_clf: int = 5,
    folds: int = 10,
    seed: int = 0,
    classifier: Classifier | None = None,
) -> MetricReport:
    """Stratified k-fold cross-validation of a sampler + classifier.

    The sampler sees only the training part of each fold, with a seed
    derived from ``(cfg.seed, fold)``; test parts are never resampled.
    """
    results = []
    for f, (train, test) in enumerate(iter_folds(d, folds, seed)):
        fold_cfg = replace(cfg, seed=derive_seed(cfg.seed, f))
        results.append(evaluate_split(train, test, method, fold_cfg, classifier, k_clf))
    return MetricReport.from_folds(results)
