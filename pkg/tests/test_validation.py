import numpy as np
import pytest

from gksmote.data import Dataset, Origin
from gksmote.errors import ConfigError, PoolTooSmallError, TooSmallError
from gksmote.sampler import SamplerConfig
from gksmote.validation import (
    canonical_method,
    cross_validate,
    derive_seed,
    knn_classify,
    knn_predict,
    majority_baseline,
    stratified_folds,
)

from conftest import line_dataset


def separable(n_maj=60, n_min=20, seed=0):
    rng = np.random.default_rng(seed)
    X = np.vstack([rng.random((n_maj, 2)), rng.random((n_min, 2)) + 5.0])
    return Dataset(X, [0] * n_maj + [1] * n_min, name="sep")


class TestClassifier:
    def test_unanimous(self):
        d = line_dataset([0.0, 0.1, 0.2], [5.0, 5.1, 5.2])
        assert knn_classify(d, [0.05], 3) == (1, 1.0)
        assert knn_classify(d, [5.05], 3) == (0, 0.0)

    def test_tie_goes_to_minority(self):
        d = line_dataset([0.0, 0.1], [0.2, 0.3, 9.0])
        assert knn_classify(d, [0.15], 4) == (1, 0.5)

    def test_vectorised_agrees(self):
        d = separable()
        rng = np.random.default_rng(1)
        Xq = rng.random((30, 2)) * 6
        labels, scores = knn_predict(d, Xq, 5)
        for x, lab, s in zip(Xq, labels, scores):
            assert knn_classify(d, x, 5) == (lab, s)

    def test_too_few(self):
        with pytest.raises(PoolTooSmallError):
            knn_classify(line_dataset([0.0], [1.0]), [0.5], 3)

    def test_majority_baseline(self):
        labels, scores = majority_baseline(separable(), np.zeros((4, 2)))
        assert labels.tolist() == [0] * 4 and scores.tolist() == [0.0] * 4


class TestFolds:
    def test_partition_and_strata(self):
        d = separable()
        folds = stratified_folds(d, 10, seed=2)
        all_rows = np.sort(np.concatenate(folds))
        np.testing.assert_array_equal(all_rows, np.arange(len(d)))
        for f in folds:
            assert np.count_nonzero(d.y[f] == 1) == 2
            assert np.count_nonzero(d.y[f] == 0) == 6

    def test_too_small(self):
        with pytest.raises(TooSmallError):
            stratified_folds(separable(n_min=5), 10)

    def test_method_names(self):
        assert canonical_method("GK-SMOTE") == "gksmote"
        with pytest.raises(ConfigError):
            canonical_method("adasyn")

    def test_derive_seed_stable(self):
        assert derive_seed(1, 2) == derive_seed(1, 2)
        assert derive_seed(1, 2) != derive_seed(2, 1)


class TestCrossValidate:
    def test_separable_is_perfect(self):
        rep = cross_validate(separable(), "none", folds=10, seed=0)
        assert rep.mcc == 1.0 and len(rep.folds) == 10

    def test_deterministic(self):
        d = separable(seed=3)
        a = cross_validate(d, "gksmote", SamplerConfig(seed=5), seed=1)
        b = cross_validate(d, "gksmote", SamplerConfig(seed=5), seed=1)
        assert a == b

    @pytest.mark.parametrize("method", ["smote", "gksmote"])
    def test_no_leakage(self, method):
        rng = np.random.default_rng(4)
        X = np.vstack([rng.standard_normal((80, 2)), rng.standard_normal((20, 2)) + 1.5])
        d = Dataset(X, [0] * 80 + [1] * 20)
        real = {tuple(r) for r in d.X}
        seen = []

        def spy(train, Xq):
            seen.append((train, np.array(Xq)))
            return knn_predict(train, Xq, 5)

        cross_validate(d, method, SamplerConfig(seed=0), folds=5, seed=0, classifier=spy)
        assert len(seen) == 5
        tested = []
        for train, Xq in seen:
            assert all(tuple(r) in real for r in Xq)
            real_train = {tuple(r) for r in train.X[train.origin == Origin.REAL]}
            assert not real_train & {tuple(r) for r in Xq}
            assert np.count_nonzero(train.origin == Origin.SYNTHETIC) > 0
            tested.extend(tuple(r) for r in Xq)
        assert sorted(tested) == sorted(real)
