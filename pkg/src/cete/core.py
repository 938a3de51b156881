"""Shared data model: observation matrices, estimator parameters, results.

All types are immutable after construction and safe to share across workers.
Every entropy-like quantity in this package is expressed in nats.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DuplicateLabelError, EmptyInputError, NonFiniteError

__all__ = [
    "SeriesMatrix",
    "EstimatorParams",
    "TeEstimate",
    "LagScanResult",
    "validate_matrix",
]


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=float)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class SeriesMatrix:
    """T x d matrix of finite real observations; rows are time, columns are variables."""

    values: np.ndarray
    labels: tuple[str, ...]

    @property
    def T(self) -> int:
        return self.values.shape[0]

    @property
    def d(self) -> int:
        return self.values.shape[1]

    def column(self, label: str) -> np.ndarray:
        return self.values[:, self.labels.index(label)]


def validate_matrix(values, labels: Sequence[str] | None = None) -> SeriesMatrix:
    """Validate a raw rectangular table and wrap it as a SeriesMatrix.

    Parameters
    ----------
    values : array_like, shape (T, d)
        Rectangular table of real numbers. A 1-d array is treated as a
        single column.
    labels : sequence of str, optional
        Column names; defaults to ``c0 .. c{d-1}``. Must be distinct.

    Raises
    ------
    EmptyInputError
        If the table has zero rows or zero columns.
    NonFiniteError
        If any entry is NaN or infinite (reports the first, row-major).
    DuplicateLabelError
        If two labels coincide.
    """
    arr = np.asarray(values, dtype=float)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.ndim != 2:
        raise EmptyInputError(f"expected a 2-d table, got ndim={arr.ndim}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise EmptyInputError(f"empty table of shape {arr.shape}")
    bad = ~np.isfinite(arr)
    if bad.any():
        row, col = np.argwhere(bad)[0]
        raise NonFiniteError(int(row), int(col))
    if labels is None:
        labels = tuple(f"c{i}" for i in range(arr.shape[1]))
    else:
        labels = tuple(str(s) for s in labels)
    if len(labels) != arr.shape[1]:
        raise DuplicateLabelError(
            f"{len(labels)} labels for {arr.shape[1]} columns"
        )
    if len(set(labels)) != len(labels):
        raise DuplicateLabelError(f"labels not distinct: {labels}")
    return SeriesMatrix(values=_freeze(arr), labels=labels)


@dataclass(frozen=True)
class EstimatorParams:
    """Parameters of the kNN entropy estimator.

    k is the neighbor index (default 3). The norm is fixed to the maximum
    (Chebyshev) norm, under which the unit-ball log-volume term of the
    estimator vanishes.
    """

    k: int = 3
    norm: str = "max"

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        if self.norm != "max":
            raise ValueError(f"only the 'max' norm is supported, got {self.norm!r}")


@dataclass(frozen=True)
class TeEstimate:
    """Transfer entropy estimate together with its copula-entropy terms.

    te_nats always equals ``-ce_joint + ce_self + ce_assoc - ce_past``
    exactly; construction enforces the identity.
    """

    ce_joint: float   # CE of (y_future, y_past block, x_cause)
    ce_self: float    # CE of (y_future, y_past block)
    ce_assoc: float   # CE of (y_past block, x_cause)
    ce_past: float    # CE of the y_past block; 0 by convention when m = 1
    n_effective: int
    te_nats: float = field(init=False)

    def __post_init__(self):
        if self.n_effective < 1:
            raise ValueError(f"n_effective must be >= 1, got {self.n_effective}")
        object.__setattr__(
            self, "te_nats",
            -self.ce_joint + self.ce_self + self.ce_assoc - self.ce_past,
        )


@dataclass(frozen=True)
class LagScanResult:
    """Ordered lag -> TeEstimate map for one directed (cause, effect) pair."""

    cause_label: str
    effect_label: str
    order_m: int
    entries: tuple[tuple[int, TeEstimate], ...]

    def __post_init__(self):
        if not self.entries:
            raise ValueError("lag scan must contain at least one entry")
        lags = [lag for lag, _ in self.entries]
        if any(b <= a for a, b in zip(lags, lags[1:])):
            raise ValueError(f"lags must be strictly increasing, got {lags}")

    @property
    def lags(self) -> list[int]:
        return [lag for lag, _ in self.entries]

    @property
    def te_values(self) -> list[float]:
        return [est.te_nats for _, est in self.entries]
