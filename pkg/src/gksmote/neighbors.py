"""Exact brute-force k-nearest-neighbour search.

Ties in distance are broken by the lower pool index, so results are fully
deterministic. No spatial index is used: one query costs O(N d).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .data import Dataset, Label
from .errors import DimensionError, PoolTooSmallError

# rows x pool x dim floats materialised per distance block
_BLOCK = 1 << 22


@dataclass(frozen=True)
class NeighborList:
    query_index: int | None
    indices: np.ndarray
    distances: np.ndarray

    @property
    def entries(self) -> list[tuple[int, float]]:
        return [(int(i), float(t)) for i, t in zip(self.indices, self.distances)]

    def __len__(self):
        return len(self.indices)


def euclidean_distance(a, b) -> float:
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape or a.ndim != 1:
        raise DimensionError(f"cannot compare vectors of shape {a.shape} and {b.shape}")
    return float(np.sqrt(np.sum((a - b) ** 2)))


def pairwise_distances(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Full ``len(A) x len(B)`` Euclidean distance matrix, computed in blocks."""
    A = np.atleast_2d(np.asarray(A, dtype=np.float64))
    B = np.atleast_2d(np.asarray(B, dtype=np.float64))
    if A.shape[1] != B.shape[1]:
        raise DimensionError(f"dimension mismatch: {A.shape[1]} vs {B.shape[1]}")
    out = np.empty((A.shape[0], B.shape[0]))
    step = max(1, _BLOCK // max(1, B.shape[0] * B.shape[1]))
    for lo in range(0, A.shape[0], step):
        diff = A[lo:lo + step, None, :] - B[None, :, :]
        out[lo:lo + step] = np.sqrt(np.sum(diff * diff, axis=-1))
    return out


def _smallest_k(row: np.ndarray, k: int) -> np.ndarray:
    # select by (distance, index) without a full sort
    if k < row.shape[0]:
        kth = np.partition(row, k - 1)[k - 1]
        cand = np.flatnonzero(row <= kth)
    else:
        cand = np.arange(row.shape[0])
    return cand[np.lexsort((cand, row[cand]))[:k]]


def _check_k(k, pool_size, excluding):
    if k < 1:
        raise PoolTooSmallError(f"k must be >= 1, got {k}")
    available = pool_size - (1 if excluding else 0)
    if k > available:
        raise PoolTooSmallError(f"k={k} exceeds the {available} available neighbour candidates")


def knn(query, pool, k: int, self_index: int | None = None) -> NeighborList:
    """The ``k`` points of ``pool`` closest to ``query``.

    ``self_index`` names the pool row that *is* the query; it is never
    returned. Other rows at distance zero (duplicates) are kept.
    """
    pool = np.atleast_2d(np.asarray(pool, dtype=np.float64))
    query = np.asarray(query, dtype=np.float64)
    if query.shape != (pool.shape[1],):
        raise DimensionError(f"query has shape {query.shape}, pool rows have {pool.shape[1]}")
    _check_k(k, pool.shape[0], self_index is not None)
    row = pairwise_distances(query[None, :], pool)[0]
    if self_index is not None:
        row[self_index] = np.inf
    idx = _smallest_k(row, k)
    return NeighborList(self_index, idx, row[idx])


def knn_members(pool: np.ndarray, members, k: int) -> tuple[np.ndarray, np.ndarray]:
    """k-NN of several pool rows within the pool, each excluding itself.

    Returns ``(indices, distances)``, both of shape ``(len(members), k)``.
    """
    pool = np.atleast_2d(np.asarray(pool, dtype=np.float64))
    members = np.asarray(members, dtype=np.int64)
    _check_k(k, pool.shape[0], True)
    idx = np.empty((members.size, k), dtype=np.int64)
    dist = np.empty((members.size, k))
    step = max(1, _BLOCK // max(1, pool.shape[0] * pool.shape[1]))
    for lo in range(0, members.size, step):
        chunk = members[lo:lo + step]
        D = pairwise_distances(pool[chunk], pool)
        D[np.arange(chunk.size), chunk] = np.inf
        for r in range(chunk.size):
            sel = _smallest_k(D[r], k)
            idx[lo + r] = sel
            dist[lo + r] = D[r, sel]
    return idx, dist


def knn_external(queries: np.ndarray, pool: np.ndarray, k: int) -> tuple[np.ndarray, np.ndarray]:
    """k-NN of points that are not pool members."""
    pool = np.atleast_2d(np.asarray(pool, dtype=np.float64))
    queries = np.atleast_2d(np.asarray(queries, dtype=np.float64))
    _check_k(k, pool.shape[0], False)
    idx = np.empty((queries.shape[0], k), dtype=np.int64)
    dist = np.empty((queries.shape[0], k))
    step = max(1, _BLOCK // max(1, pool.shape[0] * pool.shape[1]))
    for lo in range(0, queries.shape[0], step):
        D = pairwise_distances(queries[lo:lo + step], pool)
        for r in range(D.shape[0]):
            sel = _smallest_k(D[r], k)
            idx[lo + r] = sel
            dist[lo + r] = D[r, sel]
    return idx, dist


def majority_neighbor_count(d: Dataset, i: int, k: int) -> int:
    """Majority-labelled points among the k nearest neighbours of row ``i``."""
    nl = knn(d.X[i], d.X, k, self_index=i)
    return int(np.count_nonzero(d.y[nl.indices] == Label.MAJORITY))
