"""Noise-sweep benchmark: split, inject noise, cross-validate, hold out.

Every cell (dataset, method, noise rate, seed) is independent and seeded
only from its own key, so the results table does not depend on the order
cells are run in.
"""

from __future__ import annotations

import csv
import itertools
import logging
from dataclasses import dataclass, replace

import numpy as np

from .data import Dataset, NoiseSpec, SplitSpec, inject_label_noise, stratified_split
from .errors import GKSmoteError
from .sampler import SamplerConfig
from .stats import RankMatrix, friedman_test, nemenyi_cd
from .validation import canonical_method, cross_validate, derive_seed, evaluate_split

log = logging.getLogger(__name__)

METRICS = ("mcc", "bac", "auprc")
RESULT_FIELDS = (
    ["dataset", "method", "noise_rate", "seed"]
    + [f"cv_{m}" for m in METRICS]
    + [f"test_{m}" for m in METRICS]
    + ["error"]
)


@dataclass(frozen=True)
class BenchConfig:
    methods: tuple[str, ...] = ("none", "smote", "gksmote")
    noise_rates: tuple[float, ...] = (0.0, 0.1, 0.2, 0.3)
    seeds: tuple[int, ...] = (0,)
    folds: int = 10
    k_clf: int = 5
    test_fraction: float = 0.25
    noise_mode: str = "symmetric"
    sampler: SamplerConfig = SamplerConfig()

    def __post_init__(self):
        object.__setattr__(self, "methods", tuple(canonical_method(m) for m in self.methods))
        for r in self.noise_rates:
            NoiseSpec(r, mode=self.noise_mode)
        SplitSpec(self.test_fraction)


def noisy_split(d: Dataset, rate: float, seed: int, test_fraction: float = 0.25,
                noise_mode: str = "symmetric"):
    """75/25 stratified split with label noise injected into both parts."""
    train, test = stratified_split(d, SplitSpec(test_fraction, seed))
    train = inject_label_noise(train, NoiseSpec(rate, derive_seed(seed, 1), noise_mode))
    test = inject_label_noise(test, NoiseSpec(rate, derive_seed(seed, 2), noise_mode))
    return train, test


def run_cell(d: Dataset, method: str, rate: float, seed: int, cfg: BenchConfig) -> dict:
    row = {"dataset": d.name, "method": method, "noise_rate": repr(float(rate)), "seed": seed}
    try:
        train, test = noisy_split(d, rate, seed, cfg.test_fraction, cfg.noise_mode)
        sampler = replace(cfg.sampler, seed=seed)
        cv = cross_validate(train, method, sampler, cfg.k_clf, cfg.folds, seed)
        held = evaluate_split(
            train, test, method, replace(sampler, seed=derive_seed(seed, 3)), k_clf=cfg.k_clf
        )
    except GKSmoteError as exc:
        log.warning("cell %s/%s/%s/%s failed: %s", d.name, method, rate, seed, exc)
        row.update({f: "" for f in RESULT_FIELDS if f not in row})
        row["error"] = f"{type(exc).__name__}: {exc}"
        return row
    for m in METRICS:
        row[f"cv_{m}"] = repr(float(getattr(cv, m)))
        row[f"test_{m}"] = repr(float(getattr(held, m)))
    row["error"] = ""
    return row


def run_bench(datasets, cfg: BenchConfig) -> list[dict]:
    rows = [
        run_cell(d, method, rate, seed, cfg)
        for d, method, rate, seed in itertools.product(
            datasets, cfg.methods, cfg.noise_rates, cfg.seeds
        )
    ]
    order = {m: i for i, m in enumerate(cfg.methods)}
    rows.sort(key=lambda r: (r["dataset"], order[r["method"]], float(r["noise_rate"]), r["seed"]))
    return rows


def rank_statistics(rows, methods, metrics=("cv_mcc", "cv_bac", "cv_auprc"), alpha=0.05) -> list[dict]:
    """Friedman test and Nemenyi CD per (noise rate, metric).

    Blocks are (dataset, seed) pairs for which every method produced a value.
    """
    methods = list(methods)
    out = []
    rates = sorted({float(r["noise_rate"]) for r in rows})
    for rate, metric in itertools.product(rates, metrics):
        cells = {}
        for r in rows:
            if float(r["noise_rate"]) == rate and not r["error"]:
                cells.setdefault((r["dataset"], r["seed"]), {})[r["method"]] = float(r[metric])
        blocks = sorted(k for k, v in cells.items() if all(m in v for m in methods))
        rec = {"noise_rate": repr(rate), "metric": metric, "n_methods": len(methods),
               "n_blocks": len(blocks), "friedman_stat": "", "p_value": "", "nemenyi_cd": ""}
        rec.update({f"avg_rank_{m}": "" for m in methods})
        if len(methods) >= 2 and len(blocks) >= 2:
            scores = np.array([[cells[b][m] for b in blocks] for m in methods])
            rm = RankMatrix.from_scores(scores)
            stat, p = friedman_test(rm)
            rec.update(friedman_stat=repr(stat), p_value=repr(p),
                       nemenyi_cd=repr(nemenyi_cd(len(methods), len(blocks), alpha)))
            rec.update({f"avg_rank_{m}": repr(float(a)) for m, a in zip(methods, rm.average_ranks)})
        out.append(rec)
    return out


def write_rows(rows, path, fields=None) -> None:
    fields = list(fields or (rows[0].keys() if rows else RESULT_FIELDS))
    with open(path, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=fields, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
