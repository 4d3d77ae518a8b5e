import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gksmote.data import Dataset, Origin
from gksmote.errors import PoolTooSmallError
from gksmote.neighbors import majority_neighbor_count
from gksmote.sampler import SamplerConfig, gk_smote
from gksmote.smote import smote, smote_samples

from conftest import line_dataset, random_instance


def test_zero_quota_passthrough():
    d = line_dataset([0.0, 1.0, 2.0], [5.0, 6.0, 7.0])
    out = smote(d)
    assert len(out) == len(d)
    np.testing.assert_array_equal(out.X, d.X)


def test_two_collinear_parents():
    d = Dataset([[0.0, 0.0], [2.0, 1.0]] + [[10.0, 10.0 + i] for i in range(9)], [1, 1] + [0] * 9)
    syn = smote_samples(d, SamplerConfig(seed=4))
    assert len(syn) == 7
    t = syn.X[:, 0] / 2.0
    np.testing.assert_allclose(syn.X[:, 1], t, atol=1e-12)
    assert np.all((t >= 0) & (t <= 1))


def test_quota_ninety():
    rng = np.random.default_rng(0)
    d = Dataset(rng.random((110, 2)), [1] * 10 + [0] * 100)
    out = smote(d)
    assert np.count_nonzero(out.origin == Origin.SYNTHETIC) == 90
    assert out.n_minority == 100


def test_needs_two_minority():
    d = line_dataset([0.0], [1.0, 2.0, 3.0])
    with pytest.raises(PoolTooSmallError):
        smote(d)


def test_seeded():
    d = line_dataset([0.0, 1.0, 2.0], [5.0 + i for i in range(9)])
    a = smote_samples(d, SamplerConfig(seed=1))
    b = smote_samples(d, SamplerConfig(seed=1))
    assert a.X.tobytes() == b.X.tobytes()


def test_uses_noisy_parent_unlike_gk_smote():
    # minority row 3 sits inside the majority blob (m == k); rows 0..2 are clean
    mino = [0.0, 0.1, 0.2, 10.0]
    maj = [9.8, 9.9, 10.1, 10.2, 20.0, 21.0, 22.0, 23.0, 24.0, 25.0]
    d = line_dataset(mino, maj)
    cfg = SamplerConfig(k=3)
    assert majority_neighbor_count(d, 3, 3) == 3
    assert 3 in smote_samples(d, cfg).parent_rows
    assert 3 not in gk_smote(d, cfg).synthetic.parent_rows


@given(st.integers(0, 2**32 - 1))
def test_convexity(seed):
    rng = np.random.default_rng(seed)
    d = random_instance(rng, n_max=100, dim=3)
    if d.n_minority < 2:
        return
    syn = smote_samples(d, SamplerConfig(k=int(rng.integers(1, 6)), seed=seed % 1000))
    x, nn = d.X[syn.parent_rows], d.X[syn.neighbor_rows]
    resid = (syn.X - x) - syn.gaps[:, None] * (nn - x)
    assert np.all(np.linalg.norm(resid, axis=1) < 1e-9)
    assert np.all(d.y[syn.parent_rows] == 1) and np.all(d.y[syn.neighbor_rows] == 1)
    assert np.all(syn.parent_rows != syn.neighbor_rows)
