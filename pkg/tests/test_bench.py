import numpy as np
import pytest

from gksmote.bench import RESULT_FIELDS, BenchConfig, noisy_split, rank_statistics, run_bench, run_cell
from gksmote.data import Dataset, make_two_blobs
from gksmote.errors import ConfigError, RateError


@pytest.fixture(scope="module")
def small():
    d = make_two_blobs(n_majority=120, n_minority=24, seed=1)
    return Dataset(d.X, d.y, name="small")


def test_noisy_split_symmetric_keeps_counts(small):
    train, test = noisy_split(small, 0.2, seed=0)
    assert train.n_minority + test.n_minority == small.n_minority
    assert len(train) + len(test) == len(small)


def test_config_validation():
    with pytest.raises(ConfigError):
        BenchConfig(methods=("none", "adasyn"))
    with pytest.raises(RateError):
        BenchConfig(noise_rates=(0.6,))


def test_rows_sorted_and_complete(small):
    cfg = BenchConfig(methods=("gksmote", "none"), noise_rates=(0.1, 0.0), seeds=(1, 0), folds=3)
    rows = run_bench([small], cfg)
    assert len(rows) == 8
    assert [(r["method"], float(r["noise_rate"]), r["seed"]) for r in rows][:4] == [
        ("gksmote", 0.0, 0), ("gksmote", 0.0, 1), ("gksmote", 0.1, 0), ("gksmote", 0.1, 1)]
    assert all(set(r) == set(RESULT_FIELDS) and r["error"] == "" for r in rows)


def test_cell_independent_of_order(small):
    cfg = BenchConfig(methods=("smote",), noise_rates=(0.2,), folds=3)
    a = run_cell(small, "smote", 0.2, 5, cfg)
    run_cell(small, "none", 0.0, 1, cfg)
    assert run_cell(small, "smote", 0.2, 5, cfg) == a


def test_failed_cell_recorded():
    # five minority points cannot fill three folds after the 75/25 split
    d = Dataset(np.vstack([np.zeros((5, 2)), np.ones((40, 2))]), [1] * 5 + [0] * 40, name="tiny")
    row = run_cell(d, "none", 0.0, 0, BenchConfig(folds=10))
    assert row["error"].startswith("TooSmallError")
    assert row["cv_mcc"] == ""


def test_rank_statistics(small):
    d2 = Dataset(small.X[::-1], small.y[::-1], name="small_rev")
    cfg = BenchConfig(noise_rates=(0.0,), seeds=(0, 1), folds=3)
    rows = run_bench([small, d2], cfg)
    stats = rank_statistics(rows, cfg.methods)
    assert len(stats) == 3
    for s in stats:
        assert s["n_blocks"] == 4
        ranks = [float(s[f"avg_rank_{m}"]) for m in cfg.methods]
        assert sum(ranks) == pytest.approx(6.0)
        assert 0.0 <= float(s["p_value"]) <= 1.0
