"""External clustering quality metrics: accuracy under optimal label
mapping (via the Hungarian assignment) and normalized mutual information.
Both are pure functions of two label vectors and live in [0, 1].
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray
from scipy.optimize import linear_sum_assignment

from .exceptions import EmptySet, LengthMismatch

__all__ = ["LabelPair", "acc", "nmi"]


@dataclass(frozen=True, eq=False)
class LabelPair:
    """A validated (truth, predicted) pair of nonnegative label vectors."""

    truth: NDArray[np.int64]
    predicted: NDArray[np.int64]

    def __post_init__(self):
        t = np.asarray(self.truth, dtype=np.int64).reshape(-1)
        p = np.asarray(self.predicted, dtype=np.int64).reshape(-1)
        if t.shape[0] != p.shape[0]:
            raise LengthMismatch(
                f"label vectors differ in length: {t.shape[0]} vs {p.shape[0]}"
            )
        if t.shape[0] == 0:
            raise EmptySet("label vectors are empty")
        if (t < 0).any() or (p < 0).any():
            raise ValueError("labels must be nonnegative integers")
        object.__setattr__(self, "truth", t)
        object.__setattr__(self, "predicted", p)


def _contingency(pair: LabelPair) -> np.ndarray:
    """Count matrix M[i, j] = #points with truth class i and predicted class j."""
    _, ti = np.unique(pair.truth, return_inverse=True)
    _, pi = np.unique(pair.predicted, return_inverse=True)
    matrix = np.zeros((ti.max() + 1, pi.max() + 1), dtype=np.int64)
    np.add.at(matrix, (ti, pi), 1)
    return matrix


def acc(truth, predicted) -> float:
    """Fraction of agreeing points under the best injective label mapping.

    The mapping is solved as a linear assignment on the contingency matrix
    (zero-padded to square when the two label sets differ in size), so any
    pure relabeling of either vector scores 1.
    """
    pair = LabelPair(truth, predicted)
    matrix = _contingency(pair)
    size = max(matrix.shape)
    padded = np.zeros((size, size), dtype=np.int64)
    padded[: matrix.shape[0], : matrix.shape[1]] = matrix
    rows, cols = linear_sum_assignment(padded, maximize=True)
    return float(padded[rows, cols].sum() / pair.truth.shape[0])


def nmi(truth, predicted) -> float:
    """Normalized mutual information of the two partitions.

    Mutual information over the geometric mean of the two entropies,
    with natural logarithms (the value is base-invariant). Defined as 0
    when either partition is a single cluster, where the normalizer
    vanishes.
    """
    pair = LabelPair(truth, predicted)
    matrix = _contingency(pair).astype(np.float64)
    n = float(pair.truth.shape[0])
    row = matrix.sum(axis=1)
    col = matrix.sum(axis=0)
    h_truth = -float((row * np.log(row / n)).sum())
    h_pred = -float((col * np.log(col / n)).sum())
    if h_truth <= 0.0 or h_pred <= 0.0:
        return 0.0
    nz = matrix > 0
    outer = np.outer(row, col)
    info = float((matrix[nz] * (np.log(n * matrix[nz]) - np.log(outer[nz]))).sum())
    value = info / np.sqrt(h_truth * h_pred)
    return float(min(1.0, max(0.0, value)))
