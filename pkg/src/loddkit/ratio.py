"""Adaptive estimation of the boundary fraction.

Model each cluster as a D-dimensional lattice of roughly n_i^(1/D) points
per side: its interior then holds about (n_i^(1/D) - 2)^D points and
everything else is boundary. Summing interior capacity over clusters and
dividing the remainder by n gives the estimated boundary fraction, capped
at 0.5. The lattice dimension D is the intrinsic dimension of the data:
the smallest principal-subspace dimension explaining at least 80% of the
variance, floored at 2.

Cluster sizes come either from a user-supplied cluster count (equal split)
or from the connected components of the KNN graph.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .core import PointSet
from .exceptions import ConstraintViolated, DegenerateData, DimensionTooSmall

__all__ = [
    "RatioEstimate",
    "intrinsic_dimension",
    "boundary_count_bounds",
    "estimate_ratio_known_c",
    "estimate_ratio_components",
]

_VARIANCE_TARGET = 0.8


@dataclass(frozen=True)
class RatioEstimate:
    """Outcome of the boundary-fraction estimate.

    ``ratio == min(0.5, boundary_count / n)`` exactly as computed, with
    n the sum of ``components``. ``mode`` records which route produced it.
    """

    intrinsic_dim: int
    components: tuple[float, ...]
    boundary_count: float
    ratio: float
    mode: str  # "known-c" | "knn-components"


def intrinsic_dimension(point_set: PointSet) -> int:
    """Smallest D' whose top-D' principal components explain >= 80% variance.

    Floored at 2: the dispersion score and the lattice bounds are degenerate
    below two dimensions.
    """
    X = point_set.points
    n, d = X.shape
    if n < 2:
        raise DegenerateData("intrinsic dimension needs at least 2 points")
    centered = X - X.mean(axis=0)
    if n > d:
        spectrum = np.linalg.eigvalsh((centered.T @ centered) / n)[::-1]
        spectrum = np.maximum(spectrum, 0.0)
    else:
        sv = np.linalg.svd(centered, compute_uv=False)
        spectrum = sv * sv
    total = spectrum.sum()
    if total <= 0.0:
        raise DegenerateData("zero total variance: all points are identical")
    fractions = np.cumsum(spectrum) / total
    smallest = int(np.argmax(fractions >= _VARIANCE_TARGET)) + 1
    return max(2, smallest)


def boundary_count_bounds(n: int, d: int) -> tuple[float, float]:
    """Lower and upper bound on the boundary-point count of an n-point,
    d-dimensional lattice cluster.

    The upper bound is n (every point on the hull); the lower bound is the
    perimeter of the most compact lattice: 4*sqrt(n) - 4 in 2-D, and
    n - (n^(1/d) - 2)^d above. Requires n >= 2^d, i.e. d <= log2(n).
    """
    if d < 2:
        raise DimensionTooSmall(f"bounds need dimension >= 2, got d={d}")
    if n < 2**d:
        raise ConstraintViolated(
            f"need n >= 2^d (d <= log2 n); got n={n}, d={d}"
        )
    if d == 2:
        lower = 4.0 * np.sqrt(n) - 4.0
    else:
        lower = n - (n ** (1.0 / d) - 2.0) ** d
    return float(lower), float(n)


def _interior_capacity(sizes: np.ndarray, dim: int) -> float:
    """Total interior capacity sum_i max(s_i^(1/D) - 2, 0)^D.

    Real-valued throughout (no rounding): the estimate is a continuous
    heuristic, not a lattice-point count. A cluster smaller than 2^D has
    no interior and contributes 0 — all its points count as boundary.
    """
    return float((np.maximum(sizes ** (1.0 / dim) - 2.0, 0.0) ** dim).sum())


def estimate_ratio_components(component_sizes, dim: int) -> RatioEstimate:
    """Boundary fraction from per-component sizes (KNN-graph route)."""
    if dim < 2:
        raise DimensionTooSmall(f"estimate needs dimension >= 2, got D={dim}")
    sizes = np.asarray(component_sizes, dtype=np.float64).reshape(-1)
    if sizes.size == 0:
        raise ValueError("component sizes must be non-empty")
    if (sizes <= 0).any():
        raise ValueError("component sizes must all be positive")
    n = float(sizes.sum())
    boundary = n - _interior_capacity(sizes, dim)
    return RatioEstimate(
        intrinsic_dim=int(dim),
        components=tuple(sizes.tolist()),
        boundary_count=boundary,
        ratio=min(0.5, boundary / n),
        mode="knn-components",
    )


def estimate_ratio_known_c(n: int, c: int, dim: int) -> RatioEstimate:
    """Boundary fraction for n points known to form c equal clusters.

    Delegates to :func:`estimate_ratio_components` with c equal sizes so
    the two routes agree bit-for-bit whenever n/c is exact.
    """
    if c < 1:
        raise ValueError(f"cluster count must be >= 1, got {c}")
    if n < 1:
        raise ValueError(f"need at least one point, got n={n}")
    est = estimate_ratio_components(np.full(c, n / c, dtype=np.float64), dim)
    return replace(est, mode="known-c")
