"""Directional-dispersion centrality of a point among its nearest neighbors.

The idea: project each neighbor onto the unit sphere centered at the query
(keeping only the direction of the offset, discarding distance), take the
population covariance of those unit directions, and measure how evenly its
eigenvalue mass is spread. An internal point is surrounded in all
directions, so the covariance is close to spherical and the score nears 1;
a boundary point sees its neighbors inside a restricted directional range,
the spectrum concentrates, and the score drops toward 0.

For ambient dimension d, eigenvalues lam_1..lam_d and a regulator
omega in (0, 1):

    L = (d - omega)/(d - 1) * (sum lam)^2  -  d*(1 - omega)/(d - 1) * sum lam^2

Since sum(lam) = tr(C) and sum(lam^2) = tr(C^2) = ||C||_F^2 for the
symmetric covariance C, the same value is available without an
eigendecomposition; that trace form is the production path and the
eigenvalue form is kept as an oracle and diagnostic.

The 2-D angle-variance metric that preceded this score is provided as
:func:`dcm_2d` for reference and comparison.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray

from .core import LoddScores, Params, PointSet
from .exceptions import (
    AllCoincident,
    DimensionTooSmall,
    OmegaOutOfRange,
    TooFewDirections,
    WrongDimension,
)
from .neighbors import NeighborIndex

__all__ = [
    "UnitNeighborhood",
    "NeighborhoodCovariance",
    "project_to_unit_sphere",
    "covariance",
    "lodd_from_eigenvalues",
    "lodd_from_traces",
    "score_all",
    "dcm_2d",
]

# values this far outside [0, 1] are treated as float noise and clamped;
# anything farther out is a genuine error
_RANGE_SLACK = 1e-9


@dataclass(frozen=True, eq=False)
class UnitNeighborhood:
    """Unit direction vectors from a query to its neighbors.

    ``skipped`` counts zero-distance neighbors that had no direction to
    contribute; ``len(directions) + skipped`` equals the neighbor count.
    """

    directions: NDArray[np.float64]
    skipped: int


@dataclass(eq=False)
class NeighborhoodCovariance:
    """Population covariance of a set of unit directions.

    The divisor is the direction count (not count - 1). Eigenvalues are
    computed lazily on first access and cached, in descending order.
    """

    matrix: NDArray[np.float64]
    _eigenvalues: NDArray[np.float64] | None = field(default=None, repr=False)

    @property
    def eigenvalues(self) -> NDArray[np.float64]:
        if self._eigenvalues is None:
            self._eigenvalues = np.linalg.eigvalsh(self.matrix)[::-1].copy()
        return self._eigenvalues


def project_to_unit_sphere(query, neighbors) -> UnitNeighborhood:
    """Map each neighbor x_j to (x_j - query) / ||x_j - query||.

    Zero-distance neighbors are excluded and counted in ``skipped`` —
    a fabricated direction would bias the covariance. Raises
    AllCoincident when nothing remains.
    """
    q = np.asarray(query, dtype=np.float64).reshape(-1)
    nb = np.atleast_2d(np.asarray(neighbors, dtype=np.float64))
    if nb.shape[1] != q.shape[0]:
        raise WrongDimension(
            f"neighbors have dimension {nb.shape[1]}, query has {q.shape[0]}"
        )
    offsets = nb - q
    norms = np.sqrt(np.einsum("ij,ij->i", offsets, offsets))
    live = norms > 0.0
    if not live.any():
        raise AllCoincident("every neighbor coincides with the query point")
    return UnitNeighborhood(
        directions=offsets[live] / norms[live, None], skipped=int((~live).sum())
    )


def covariance(nbhd: UnitNeighborhood) -> NeighborhoodCovariance:
    """Mean-centered population covariance of the direction vectors."""
    u = nbhd.directions
    m = u.shape[0]
    if m < 2:
        raise TooFewDirections(f"need at least 2 directions, got {m}")
    centered = u - u.mean(axis=0)
    return NeighborhoodCovariance(matrix=(centered.T @ centered) / m)


def _lodd_value(s1: float, s2: float, omega: float, d: int) -> float:
    """Shared core: the score from sum(lam) and sum(lam^2)."""
    if d < 2:
        raise DimensionTooSmall(f"the score needs dimension >= 2, got d={d}")
    if not (0.0 < omega < 1.0):
        raise OmegaOutOfRange(f"omega must lie in (0, 1), got {omega}")
    value = ((d - omega) * s1 * s1 - d * (1.0 - omega) * s2) / (d - 1)
    if value < -_RANGE_SLACK or value > 1.0 + _RANGE_SLACK:
        raise ValueError(
            f"dispersion score {value!r} lies outside [0, 1] beyond float noise; "
            "the covariance is not one of unit directions"
        )
    return float(min(1.0, max(0.0, value)))


def lodd_from_eigenvalues(eigenvalues, omega: float, d: int) -> float:
    """Centrality from an eigenvalue list (padded with zeros up to d)."""
    lam = np.asarray(eigenvalues, dtype=np.float64).reshape(-1)
    if lam.shape[0] > d:
        raise WrongDimension(f"{lam.shape[0]} eigenvalues for dimension d={d}")
    return _lodd_value(float(lam.sum()), float((lam * lam).sum()), omega, d)


def lodd_from_traces(cov, omega: float, d: int) -> float:
    """Centrality via tr(C) and tr(C^2), evading the eigendecomposition.

    ``tr(C^2)`` is the squared Frobenius norm of the symmetric covariance.
    Equals :func:`lodd_from_eigenvalues` on the same covariance to within
    1e-9.
    """
    matrix = cov.matrix if isinstance(cov, NeighborhoodCovariance) else np.asarray(cov)
    if matrix.shape != (d, d):
        raise WrongDimension(f"covariance shape {matrix.shape} does not match d={d}")
    s1 = float(np.trace(matrix))
    s2 = float((matrix * matrix).sum())
    return _lodd_value(s1, s2, omega, d)


def _score_block(u: np.ndarray, omega: float, d: int) -> np.ndarray:
    """Vectorized score of a (b, k, d) block of unit directions.

    Picks the cheaper tr(C^2) route: build the d x d covariances when
    d <= k, otherwise go through the k x k Gram matrices (same value,
    O(b*k^2*d) instead of O(b*k*d^2)).
    """
    k = u.shape[1]
    centered = u - u.mean(axis=1, keepdims=True)
    s1 = np.einsum("bkd,bkd->b", centered, centered) / k
    if d <= k:
        cov = np.einsum("bkd,bke->bde", centered, centered) / k
        s2 = np.einsum("bde,bde->b", cov, cov)
    else:
        gram = np.einsum("bkd,bld->bkl", centered, centered) / k
        s2 = np.einsum("bkl,bkl->b", gram, gram)
    values = ((d - omega) * s1 * s1 - d * (1.0 - omega) * s2) / (d - 1)
    bad = (values < -_RANGE_SLACK) | (values > 1.0 + _RANGE_SLACK)
    if bad.any():
        worst = values[bad][0]
        raise ValueError(
            f"dispersion score {worst!r} lies outside [0, 1] beyond float noise"
        )
    return np.clip(values, 0.0, 1.0)


def score_all(point_set: PointSet, index: NeighborIndex, omega: float) -> LoddScores:
    """Score every point: project -> covariance -> trace-form centrality.

    A pure map over points against the read-only index; the result does not
    depend on iteration order. Points whose whole neighborhood coincides
    with them (no directions), or with fewer than two usable directions,
    score 0 — worst centrality — so the ordering stays total.
    """
    X = point_set.points
    n, d = X.shape
    if d < 2:
        raise DimensionTooSmall(f"the score needs dimension >= 2, got d={d}")
    if not (0.0 < omega < 1.0):
        raise OmegaOutOfRange(f"omega must lie in (0, 1), got {omega}")
    ids = index.neighbor_ids
    k = ids.shape[1]
    values = np.empty(n, dtype=np.float64)

    # distances are ascending per row, so a row contains a zero-distance
    # neighbor exactly when its first distance is zero
    degenerate = index.distances[:, 0] <= 0.0
    clean = np.flatnonzero(~degenerate)

    block = max(1, int(2e7) // max(k * d, 1))
    for a in range(0, clean.size, block):
        rows = clean[a : a + block]
        offsets = X[ids[rows]] - X[rows][:, None, :]
        u = offsets / index.distances[rows][:, :, None]
        values[rows] = _score_block(u, omega, d)

    for i in np.flatnonzero(degenerate):
        try:
            nbhd = project_to_unit_sphere(X[i], X[ids[i]])
        except AllCoincident:
            values[i] = 0.0
            continue
        if nbhd.directions.shape[0] < 2:
            values[i] = 0.0
            continue
        values[i] = lodd_from_traces(covariance(nbhd), omega, d)

    return LoddScores(values=values, params=Params(k=k, omega=omega, adaptive=True))


def dcm_2d(query, neighbors) -> float:
    """Angle-variance centrality, defined in 2-D only.

    Projects the neighbors to the unit circle, sorts their polar angles,
    and returns the variance of consecutive central angles (including the
    wrap-around gap) against the uniform spacing 2*pi/k. Zero means
    perfectly even directions; the maximum 4*(k-1)*pi^2/k^2 occurs when
    all neighbors share one direction. Kept as the 2-D reference metric:
    it cannot tell some unbalanced collinear splits apart, which the
    covariance score can.
    """
    q = np.asarray(query, dtype=np.float64).reshape(-1)
    if q.shape[0] != 2:
        raise WrongDimension(f"dcm_2d is defined for d=2 only, got d={q.shape[0]}")
    nbhd = project_to_unit_sphere(q, neighbors)
    u = nbhd.directions
    if u.shape[0] < 2:
        raise TooFewDirections(f"need at least 2 directions, got {u.shape[0]}")
    angles = np.sort(np.arctan2(u[:, 1], u[:, 0]))
    gaps = np.diff(angles, append=angles[0] + 2.0 * np.pi)
    k = u.shape[0]
    return float(((gaps - 2.0 * np.pi / k) ** 2).mean())
