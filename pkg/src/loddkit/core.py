"""Shared domain types, the parameter bundle, and input validation.

All types here are immutable after construction and safe to share across
workers. Point identifiers are positional: the id of a point is its row
index in ingestion order, so duplicates are representable and every
downstream reference uses ids, never coordinates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from .exceptions import (
    EmptySet,
    InvalidParams,
    KTooLarge,
    LengthMismatch,
    NonFinite,
    OmegaOutOfRange,
)

__all__ = [
    "PointSet",
    "Params",
    "LoddScores",
    "DetectionResult",
    "validate",
    "split_count",
]


def _freeze(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class PointSet:
    """An immutable collection of n points in d dimensions.

    Attributes
    ----------
    points : ndarray of shape (n, d)
        One row per point, float64.
    labels : ndarray of shape (n,) or None
        Optional integer class per point. Labels never influence detection;
        they exist for evaluation only.
    """

    points: NDArray[np.float64]
    labels: NDArray[np.int64] | None = None

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=np.float64)
        if pts.ndim == 1:
            pts = pts.reshape(-1, 1)
        if pts.ndim != 2:
            raise InvalidParams(f"points must be a 2-D array, got ndim={pts.ndim}")
        object.__setattr__(self, "points", _freeze(pts.copy() if pts.base is not None or pts.flags.writeable else pts))
        if self.labels is not None:
            lab = np.asarray(self.labels, dtype=np.int64)
            if lab.ndim != 1 or lab.shape[0] != pts.shape[0]:
                raise LengthMismatch(
                    f"labels length {lab.shape} does not match n={pts.shape[0]}"
                )
            object.__setattr__(self, "labels", _freeze(lab.copy()))

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def d(self) -> int:
        return self.points.shape[1]

    @property
    def ids(self) -> NDArray[np.int64]:
        """Stable 0-based point identifiers (always exactly 0..n-1)."""
        return np.arange(self.n, dtype=np.int64)


@dataclass(frozen=True)
class Params:
    """Parameter bundle for detection.

    Exactly one of ``ratio`` (a fixed boundary fraction in (0, 1]) or
    ``adaptive=True`` (estimate the fraction from the data) must be chosen;
    :func:`validate` enforces this. ``omega`` regulates the score's weighting
    and defaults to 0.5.
    """

    k: int
    omega: float = 0.5
    ratio: float | None = None
    adaptive: bool = False
    cluster_count: int | None = None


@dataclass(frozen=True, eq=False)
class LoddScores:
    """Per-point centrality values in [0, 1] plus the parameters that made them."""

    values: NDArray[np.float64]
    params: Params

    def __post_init__(self):
        object.__setattr__(
            self, "values", _freeze(np.asarray(self.values, dtype=np.float64).copy())
        )


@dataclass(frozen=True, eq=False)
class DetectionResult:
    """Boundary/internal split of a point set.

    ``order`` holds all n point ids sorted by ascending score (ties by id);
    ``boundary_mask`` is True for exactly the first ``boundary_count`` of
    them, and ``boundary_count == split_count(n, effective_ratio)``.
    """

    boundary_mask: NDArray[np.bool_]
    order: NDArray[np.int64]
    effective_ratio: float
    boundary_count: int

    def __post_init__(self):
        mask = np.asarray(self.boundary_mask, dtype=bool).copy()
        order = np.asarray(self.order, dtype=np.int64).copy()
        if order.shape != mask.shape:
            raise LengthMismatch(
                f"order length {order.shape} does not match mask {mask.shape}"
            )
        if int(mask.sum()) != self.boundary_count:
            raise LengthMismatch(
                f"boundary_count={self.boundary_count} but the mask marks {int(mask.sum())}"
            )
        object.__setattr__(self, "boundary_mask", _freeze(mask))
        object.__setattr__(self, "order", _freeze(order))


_EPS = float(np.finfo(np.float64).eps)


def split_count(n: int, ratio: float) -> int:
    """Number of points on the boundary side of an n-point split.

    This is floor(n * ratio) with an 8-ulp relative guard: when the product
    is mathematically an integer but the float lands one ulp below it
    (e.g. 625 * 0.1536 -> 95.99999999999999), a naive floor undercounts by
    one. The guard nudges values that are within a few ulps of an integer
    up onto it; fractions farther from an integer are unaffected.
    """
    scaled = n * ratio * (1.0 + 8.0 * _EPS)
    return min(n, int(math.floor(scaled)))


def validate(point_set: PointSet, params: Params) -> None:
    """Check every type invariant; raise the named error of the first violation.

    Pure: the verdict depends only on the arguments. Returns None when
    everything holds.
    """
    n = point_set.n
    if n < 1 or point_set.d < 1:
        raise EmptySet(f"point set must be non-empty, got n={n}, d={point_set.d}")
    if not np.isfinite(point_set.points).all():
        raise NonFinite("point coordinates must all be finite (no NaN/Inf)")

    k = params.k
    if not isinstance(k, (int, np.integer)):
        raise InvalidParams(f"k must be an integer, got {type(k).__name__}")
    if k < 1:
        raise InvalidParams(f"k must be >= 1, got {k}")
    if k > n - 1:
        raise KTooLarge(f"k={k} but only n-1={n - 1} other points exist")

    if not (0.0 < params.omega < 1.0):
        raise OmegaOutOfRange(f"omega must lie in (0, 1), got {params.omega}")

    if params.ratio is not None and not (0.0 < params.ratio <= 1.0):
        raise InvalidParams(f"ratio must lie in (0, 1], got {params.ratio}")
    if (params.ratio is not None) == bool(params.adaptive):
        raise InvalidParams(
            "exactly one of a fixed ratio or adaptive=True must govern the split"
        )
    if params.cluster_count is not None and params.cluster_count < 1:
        raise InvalidParams(f"cluster_count must be >= 1, got {params.cluster_count}")
