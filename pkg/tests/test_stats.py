import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import stats as sps

from gksmote.errors import RangeError, ShapeError, UnsupportedAlphaError
from gksmote.stats import (
    NEMENYI_Q,
    RankMatrix,
    chi2_sf,
    friedman_test,
    nemenyi_cd,
    nemenyi_significant,
    regularized_gamma_q,
)

from oracles import friedman_stat


class TestGamma:
    @pytest.mark.parametrize("df", [1, 2, 3, 5, 9, 19])
    @pytest.mark.parametrize("x", [0.01, 0.5, 1.0, 3.84, 10.0, 40.0])
    def test_chi2_against_scipy(self, x, df):
        assert abs(chi2_sf(x, df) - sps.chi2.sf(x, df)) < 1e-8

    def test_zero(self):
        assert chi2_sf(0.0, 2) == 1.0
        assert regularized_gamma_q(1.5, 0.0) == 1.0

    def test_exponential_case(self):
        # Q(1, x) = exp(-x)
        for x in (0.1, 2.0, 7.5):
            assert regularized_gamma_q(1.0, x) == pytest.approx(math.exp(-x), rel=1e-12)


class TestRanks:
    def test_ties_share_mean_rank(self):
        rm = RankMatrix.from_scores([[0.9, 0.5], [0.9, 0.7], [0.1, 0.7]])
        np.testing.assert_array_equal(rm.ranks, [[1.5, 3.0], [1.5, 1.5], [3.0, 1.5]])

    @given(st.integers(0, 2**32 - 1))
    def test_rank_sums(self, seed):
        rng = np.random.default_rng(seed)
        m, d = int(rng.integers(2, 7)), int(rng.integers(1, 10))
        rm = RankMatrix.from_scores(rng.integers(0, 4, (m, d)).astype(float))
        np.testing.assert_allclose(rm.ranks.sum(axis=0), m * (m + 1) / 2)

    def test_bad_shape(self):
        with pytest.raises(ShapeError):
            RankMatrix.from_scores([1.0, 2.0])


class TestFriedman:
    def test_all_tied(self):
        stat, p = friedman_test(RankMatrix.from_scores(np.full((3, 6), 0.4)))
        assert stat == 0.0 and p == 1.0

    def test_dominated(self):
        scores = np.array([[0.9] * 10, np.linspace(0.5, 0.6, 10), np.linspace(0.1, 0.2, 10)])
        stat, p = friedman_test(RankMatrix.from_scores(scores))
        assert stat == pytest.approx(20.0)
        assert p < 0.05

    def test_matches_scipy_without_ties(self):
        rng = np.random.default_rng(3)
        scores = rng.random((4, 12))
        stat, p = friedman_test(RankMatrix.from_scores(scores))
        ref = sps.friedmanchisquare(*scores)
        assert stat == pytest.approx(ref.statistic, rel=1e-12)
        assert p == pytest.approx(ref.pvalue, abs=1e-8)

    @given(st.integers(0, 2**32 - 1))
    def test_statistic_oracle_and_rescale_invariance(self, seed):
        rng = np.random.default_rng(seed)
        m, d = int(rng.integers(2, 6)), int(rng.integers(2, 9))
        scores = rng.integers(0, 5, (m, d)).astype(float)
        rm = RankMatrix.from_scores(scores)
        stat, p = friedman_test(rm)
        assert stat == pytest.approx(friedman_stat(rm.ranks.tolist()), rel=1e-12, abs=1e-12)
        assert 0.0 <= p <= 1.0
        scale = rng.uniform(0.5, 3, d)
        stat2, _ = friedman_test(RankMatrix.from_scores(np.exp(scores * scale)))
        assert stat2 == pytest.approx(stat, rel=1e-12, abs=1e-12)

    def test_shape(self):
        with pytest.raises(ShapeError):
            friedman_test(RankMatrix.from_scores([[1.0], [2.0]]))


class TestNemenyi:
    def test_two_methods(self):
        for d in (1, 4, 25):
            assert nemenyi_cd(2, d) == pytest.approx(1.960 / math.sqrt(d), rel=1e-12)

    def test_table_matches_studentized_range(self):
        for alpha, row in NEMENYI_Q.items():
            for m, q in zip(range(2, 21), row):
                ref = sps.studentized_range.ppf(1 - alpha, m, np.inf) / math.sqrt(2)
                assert q == pytest.approx(ref, abs=6e-4)

    def test_monotone_in_d(self):
        cds = [nemenyi_cd(4, d) for d in range(1, 200)]
        assert all(a > b for a, b in zip(cds, cds[1:]))

    def test_gap_zero_never_significant(self):
        assert not nemenyi_significant([2.0, 2.0], 1e-9).any()

    def test_large_d_eventually_significant(self):
        assert nemenyi_significant([1.4, 1.6], nemenyi_cd(2, 500))[0, 1]

    def test_errors(self):
        with pytest.raises(UnsupportedAlphaError):
            nemenyi_cd(3, 5, alpha=0.01)
        with pytest.raises(RangeError):
            nemenyi_cd(21, 5)
        with pytest.raises(RangeError):
            nemenyi_cd(1, 5)
