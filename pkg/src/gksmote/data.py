"""Binary datasets: representation, CSV I/O, splitting and label noise.

A :class:`Dataset` stores its points column-wise in read-only numpy arrays.
Label ``1`` is the minority class (P) and ``0`` the majority class (Q).
Every operation returns a new dataset; nothing is modified in place.
"""

from __future__ import annotations

import csv
import enum
import math
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    EmptyClassError,
    ParseError,
    RateError,
    SchemaError,
    TooSmallError,
)


class Label(enum.IntEnum):
    MAJORITY = 0
    MINORITY = 1


class Origin(enum.IntEnum):
    REAL = 0
    SYNTHETIC = 1


@dataclass(frozen=True)
class LabeledPoint:
    features: tuple[float, ...]
    label: Label
    origin: Origin = Origin.REAL


def _frozen(a, dtype):
    a = np.array(a, dtype=dtype, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Dataset:
    """Immutable binary-labelled point set.

    ``index`` maps each row back to the row of the dataset it was loaded
    from (``-1`` for synthetic rows), so provenance survives splits,
    resampling and noise injection.
    """

    X: np.ndarray
    y: np.ndarray
    origin: np.ndarray = None
    index: np.ndarray = None
    name: str = "dataset"
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        X = np.asarray(self.X, dtype=np.float64)
        if X.ndim == 1:
            X = X.reshape(-1, 1)
        if X.ndim != 2 or X.shape[1] < 1:
            raise SchemaError(f"features must be a 2-D array with d >= 1, got shape {X.shape}")
        n = X.shape[0]
        if not np.all(np.isfinite(X)):
            raise ParseError("features contain NaN or Inf")
        y = np.asarray(self.y)
        if y.shape != (n,):
            raise SchemaError(f"expected {n} labels, got shape {y.shape}")
        if not np.all((y == 0) | (y == 1)):
            raise SchemaError("labels must be 0 (majority) or 1 (minority)")
        origin = np.zeros(n, dtype=np.int8) if self.origin is None else self.origin
        index = np.arange(n) if self.index is None else self.index
        object.__setattr__(self, "X", _frozen(X, np.float64))
        object.__setattr__(self, "y", _frozen(y, np.int8))
        object.__setattr__(self, "origin", _frozen(origin, np.int8))
        object.__setattr__(self, "index", _frozen(index, np.int64))
        if self.origin.shape != (n,) or self.index.shape != (n,):
            raise SchemaError("origin and index must have one entry per point")

    def __len__(self):
        return self.X.shape[0]

    @property
    def dim(self) -> int:
        return self.X.shape[1]

    @property
    def minority_idx(self) -> np.ndarray:
        return np.flatnonzero(self.y == Label.MINORITY)

    @property
    def majority_idx(self) -> np.ndarray:
        return np.flatnonzero(self.y == Label.MAJORITY)

    @property
    def n_minority(self) -> int:
        return int(np.count_nonzero(self.y == Label.MINORITY))

    @property
    def n_majority(self) -> int:
        return len(self) - self.n_minority

    @property
    def points(self) -> list[LabeledPoint]:
        return [
            LabeledPoint(tuple(map(float, x)), Label(int(c)), Origin(int(o)))
            for x, c, o in zip(self.X, self.y, self.origin)
        ]

    @classmethod
    def from_points(cls, points: Iterable[LabeledPoint], name="dataset") -> "Dataset":
        points = list(points)
        if not points:
            raise SchemaError("no points")
        dims = {len(p.features) for p in points}
        if len(dims) != 1:
            raise SchemaError(f"points have mixed dimensions {sorted(dims)}")
        origin = [int(p.origin) for p in points]
        index = [i if o == Origin.REAL else -1 for i, o in enumerate(origin)]
        return cls(
            X=[p.features for p in points],
            y=[int(p.label) for p in points],
            origin=origin,
            index=index,
            name=name,
        )

    def require_both_classes(self):
        if self.n_minority == 0:
            raise EmptyClassError(f"{self.name}: no minority samples")
        if self.n_majority == 0:
            raise EmptyClassError(f"{self.name}: no majority samples")

    def subset(self, rows: Sequence[int], name=None) -> "Dataset":
        rows = np.asarray(rows, dtype=np.int64)
        return Dataset(
            self.X[rows], self.y[rows], self.origin[rows], self.index[rows],
            name=name or self.name, meta=dict(self.meta),
        )

    def with_labels(self, y) -> "Dataset":
        return Dataset(self.X, y, self.origin, self.index, name=self.name, meta=dict(self.meta))

    def append_synthetic(self, X_syn: np.ndarray) -> "Dataset":
        """Append minority-labelled synthetic rows."""
        X_syn = np.asarray(X_syn, dtype=np.float64).reshape(-1, self.dim)
        m = X_syn.shape[0]
        return Dataset(
            np.vstack([self.X, X_syn]),
            np.concatenate([self.y, np.ones(m, dtype=np.int8)]),
            np.concatenate([self.origin, np.ones(m, dtype=np.int8)]),
            np.concatenate([self.index, np.full(m, -1, dtype=np.int64)]),
            name=self.name,
            meta=dict(self.meta),
        )


NOISE_MODES = ("per_class", "symmetric")


@dataclass(frozen=True)
class NoiseSpec:
    """Label-flip noise.

    ``per_class`` flips ``round(rate * |P|)`` minority and ``round(rate * |Q|)``
    majority labels. ``symmetric`` flips ``round(rate * |P|)`` labels in each
    direction, which leaves the class counts (and so the IR) unchanged.
    """

    rate: float
    seed: int = 0
    mode: str = "per_class"

    def __post_init__(self):
        if not (0.0 <= self.rate <= 0.5):
            raise RateError(f"noise rate must lie in [0, 0.5], got {self.rate}")
        if self.mode not in NOISE_MODES:
            raise RateError(f"noise mode must be one of {NOISE_MODES}, got {self.mode!r}")


@dataclass(frozen=True)
class SplitSpec:
    test_fraction: float = 0.25
    seed: int = 0

    def __post_init__(self):
        if not (0.0 < self.test_fraction < 1.0):
            raise RateError(f"test_fraction must lie strictly in (0, 1), got {self.test_fraction}")


def round_half_up(count: int, fraction: float) -> int:
    """``round(count * fraction)`` with halves rounded up.

    The fraction is read through its shortest decimal repr so that
    e.g. ``0.3 * 375`` rounds as 112.5 rather than 112.49999999999999.
    """
    product = Decimal(count) * Decimal(repr(float(fraction)))
    return int(product.quantize(Decimal(1), rounding=ROUND_HALF_UP))


def imbalance_ratio(d: Dataset) -> float:
    """|Q| / |P|."""
    if d.n_minority == 0:
        raise EmptyClassError("imbalance ratio undefined without minority samples")
    return d.n_majority / d.n_minority


def stratified_split(d: Dataset, s: SplitSpec = SplitSpec()) -> tuple[Dataset, Dataset]:
    """Split each class separately into train and test parts.

    Each class sends ``round_half_up(size * test_fraction)`` points to the
    test set, clamped so that both parts get at least one point.
    """
    rng = np.random.default_rng(s.seed)
    test_rows = []
    for cls, rows in ((Label.MINORITY, d.minority_idx), (Label.MAJORITY, d.majority_idx)):
        if len(rows) < 2:
            raise TooSmallError(
                f"{cls.name.lower()} class has {len(rows)} sample(s); need >= 2 to split"
            )
        n_test = min(max(1, round_half_up(len(rows), s.test_fraction)), len(rows) - 1)
        test_rows.append(rng.permutation(rows)[:n_test])
    is_test = np.zeros(len(d), dtype=bool)
    is_test[np.concatenate(test_rows)] = True
    return (
        d.subset(np.flatnonzero(~is_test), name=f"{d.name}[train]"),
        d.subset(np.flatnonzero(is_test), name=f"{d.name}[test]"),
    )


def label_flip_rows(d: Dataset, n: NoiseSpec) -> np.ndarray:
    """Rows whose labels :func:`inject_label_noise` flips, sorted ascending."""
    rng = np.random.default_rng(n.seed)
    flips = []
    n_min = round_half_up(d.n_minority, n.rate)
    for rows in (d.minority_idx, d.majority_idx):
        n_flip = n_min if n.mode == "symmetric" else round_half_up(len(rows), n.rate)
        n_flip = min(n_flip, len(rows))
        if n_flip:
            flips.append(rng.choice(rows, size=n_flip, replace=False))
    if not flips:
        return np.empty(0, dtype=np.int64)
    return np.sort(np.concatenate(flips))


def inject_label_noise(d: Dataset, n: NoiseSpec) -> Dataset:
    rows = label_flip_rows(d, n)
    if rows.size == 0:
        return d.with_labels(d.y)
    y = d.y.copy()
    y[rows] = 1 - y[rows]
    out = d.with_labels(y)
    out.meta["noise_rate"] = n.rate
    return out


def min_max_normalize(X: np.ndarray) -> np.ndarray:
    """Rescale each column to [0, 1]; constant columns become 0."""
    X = np.asarray(X, dtype=np.float64)
    lo = X.min(axis=0)
    span = X.max(axis=0) - lo
    span[span == 0] = 1.0
    return (X - lo) / span


def _is_float(cell: str) -> bool:
    try:
        float(cell)
    except ValueError:
        return False
    return True


def _label_matches(cell: str, minority_value) -> bool:
    target = str(minority_value).strip()
    if cell == target:
        return True
    if _is_float(cell) and _is_float(target):
        return float(cell) == float(target)
    return False


def load_csv(
    path,
    label_column: int | str = -1,
    minority_value="1",
    normalize: bool = True,
    name: str | None = None,
) -> Dataset:
    """Read a comma-separated binary dataset.

    A header row is assumed when any non-label cell of the first row is
    not numeric, or when ``label_column`` is given by name. A header column
    called ``origin`` (as written by :func:`write_csv`) is read back as the
    real/synthetic flag instead of as a feature, and is skipped when
    ``label_column`` is a position.

    If ``minority_value`` turns out to be the more frequent class the two
    labels are swapped and ``meta["labels_swapped"]`` is set.
    """
    path = Path(path)
    with path.open(newline="") as fh:
        rows = [[c.strip() for c in r] for r in csv.reader(fh) if any(c.strip() for c in r)]
    if not rows:
        raise SchemaError(f"{path}: empty file")
    width = len(rows[0])
    for i, r in enumerate(rows):
        if len(r) != width:
            raise SchemaError(f"{path}: row {i + 1} has {len(r)} cells, expected {width}")

    header = None
    if isinstance(label_column, str) and not _is_int(label_column):
        header = rows[0]
        if label_column not in header:
            raise SchemaError(f"{path}: no column named {label_column!r}")
        label_pos = header.index(label_column)
    else:
        label_pos = int(label_column)
        if not -width <= label_pos < width:
            raise SchemaError(f"{path}: label column {label_pos} out of range for {width} columns")
        label_pos %= width
        if any(not _is_float(c) for j, c in enumerate(rows[0]) if j != label_pos):
            header = rows[0]
        if header is not None and "origin" in header:
            # positions count the data columns only, so -1 is "label" in our own output
            cols = [j for j in range(width) if header[j] != "origin"]
            pos = int(label_column)
            if not -len(cols) <= pos < len(cols):
                raise SchemaError(f"{path}: label column {pos} out of range for {len(cols)} columns")
            label_pos = cols[pos]
    body = rows[1:] if header is not None else rows
    first_line = 2 if header is not None else 1
    if not body:
        raise SchemaError(f"{path}: no data rows")

    origin_pos = header.index("origin") if header is not None and "origin" in header else None
    feature_cols = [j for j in range(width) if j not in (label_pos, origin_pos)]
    if not feature_cols:
        raise SchemaError(f"{path}: no feature columns")

    X = np.empty((len(body), len(feature_cols)))
    for i, r in enumerate(body):
        for jj, j in enumerate(feature_cols):
            try:
                v = float(r[j])
            except ValueError:
                col = header[j] if header is not None else j
                raise ParseError(
                    f"{path}: line {i + first_line}, column {col!r}: "
                    f"cannot parse {r[j]!r} as a number",
                    row=i + first_line, column=col,
                ) from None
            if not math.isfinite(v):
                raise ParseError(
                    f"{path}: line {i + first_line}, column {j}: non-finite value {r[j]!r}",
                    row=i + first_line, column=j,
                )
            X[i, jj] = v

    y = np.array([_label_matches(r[label_pos], minority_value) for r in body], dtype=np.int8)
    origin = None
    if origin_pos is not None:
        origin = np.array([r[origin_pos] == "synthetic" for r in body], dtype=np.int8)

    meta = {"source": str(path), "labels_swapped": False, "normalized": normalize}
    n_min = int(y.sum())
    if n_min == 0 or n_min == len(y):
        which = "minority" if n_min == 0 else "majority"
        raise EmptyClassError(f"{path}: {which} class has zero samples")
    if n_min > len(y) - n_min:
        y = 1 - y
        meta["labels_swapped"] = True
    if normalize:
        X = min_max_normalize(X)
    return Dataset(X, y, origin=origin, name=name or path.stem, meta=meta)


def _is_int(s) -> bool:
    try:
        int(s)
    except (TypeError, ValueError):
        return False
    return True


def write_csv(d: Dataset, path) -> None:
    """Write ``f0..f{d-1},label,origin``; label 1 = minority."""
    path = Path(path)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow([f"f{j}" for j in range(d.dim)] + ["label", "origin"])
        for x, c, o in zip(d.X, d.y, d.origin):
            w.writerow([repr(float(v)) for v in x] + [int(c), "synthetic" if o else "real"])


def make_two_blobs(
    n_majority=500, n_minority=50, minority_mean=(2.0, 2.0), seed=0, name="two_blobs"
) -> Dataset:
    """Two unit-covariance 2-D Gaussian blobs: majority at the origin."""
    rng = np.random.default_rng(seed)
    Q = rng.standard_normal((n_majority, 2))
    P = rng.standard_normal((n_minority, 2)) + np.asarray(minority_mean, dtype=float)
    X = np.vstack([Q, P])
    y = np.concatenate([np.zeros(n_majority, np.int8), np.ones(n_minority, np.int8)])
    return Dataset(X, y, name=name)
