"""Boundary-peeled clustering.

Pipeline: detect and peel the boundary points, seed K-means on the internal
points with density peaks (high local density, far from any denser point),
run Lloyd iterations, then hand every peeled point the label of its nearest
internal point. Peeling widens inter-cluster gaps first, which is what lets
plain K-means separate weakly connected clusters.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray
from scipy.spatial.distance import cdist, pdist

from .core import Params, PointSet
from .detect import detect_full
from .exceptions import AllBoundary, CTooLarge

__all__ = [
    "DensityPeakScores",
    "ClusterAssignment",
    "density_peak_seeds",
    "kmeans",
    "peel_cluster",
]

# above this size the cutoff percentile is estimated from sampled pairs
_PAIR_EXACT_LIMIT = 10_000
_PAIR_SAMPLE_COUNT = 10_000_000
_PAIR_SAMPLE_SEED = 0x1D5EED
_CUTOFF_QUANTILE = 0.05
_LLOYD_MAX_ITER = 300


@dataclass(frozen=True, eq=False)
class DensityPeakScores:
    """Raw seeding quantities per point.

    ``score`` is the sum of min-max normalized density and min_dis (the
    stored ``density`` and ``min_dis`` stay raw).
    """

    density: NDArray[np.int64]
    min_dis: NDArray[np.float64]
    score: NDArray[np.float64]


@dataclass(frozen=True, eq=False)
class ClusterAssignment:
    """Final labels, the centers, and the ids of the seed points."""

    label_of: NDArray[np.int64]
    centers: NDArray[np.float64]
    seeds: NDArray[np.int64]


def _norm01(v: np.ndarray) -> np.ndarray:
    lo, hi = float(v.min()), float(v.max())
    if hi == lo:
        return np.zeros_like(v, dtype=np.float64)
    return (v - lo) / (hi - lo)


def _distance_cutoff(X: np.ndarray) -> float:
    """The 5th-percentile value of the pairwise-distance distribution.

    Exact for n <= 10,000; above that, estimated from 10^7 uniformly
    sampled pairs drawn from a fixed Philox stream, so it stays
    deterministic.
    """
    n = X.shape[0]
    if n <= _PAIR_EXACT_LIMIT:
        return float(np.quantile(pdist(X), _CUTOFF_QUANTILE))
    rng = np.random.Generator(np.random.Philox(_PAIR_SAMPLE_SEED))
    ii = rng.integers(0, n, _PAIR_SAMPLE_COUNT)
    jj = rng.integers(0, n, _PAIR_SAMPLE_COUNT)
    keep = ii != jj
    ii, jj = ii[keep], jj[keep]
    sample = np.empty(ii.shape[0], dtype=np.float64)
    block = 1_000_000
    for a in range(0, ii.shape[0], block):
        b = min(ii.shape[0], a + block)
        diff = X[ii[a:b]] - X[jj[a:b]]
        sample[a:b] = np.sqrt(np.einsum("ij,ij->i", diff, diff))
    return float(np.quantile(sample, _CUTOFF_QUANTILE))


def density_peak_seeds(
    point_set: PointSet, c: int
) -> tuple[DensityPeakScores, NDArray[np.int64]]:
    """Pick c seed points by local density and distance-to-denser-point.

    density(i) counts points strictly within the cutoff distance.
    min_dis(i) is the distance to the nearest point of higher density
    (density ties broken toward the smaller id); the densest point instead
    gets the global maximum pairwise distance. Seeds are the c largest
    normalized-density + normalized-min_dis scores, ties again by id.
    """
    n = point_set.n
    if c > n:
        raise CTooLarge(f"asked for {c} seeds from {n} points")
    if c < 1:
        raise ValueError(f"seed count must be >= 1, got {c}")
    X = point_set.points
    cutoff = _distance_cutoff(X)

    density = np.empty(n, dtype=np.int64)
    dmax = 0.0
    block = max(1, int(2e7) // max(n, 1))
    for a in range(0, n, block):
        b = min(n, a + block)
        dist = cdist(X[a:b], X)
        density[a:b] = (dist < cutoff).sum(axis=1)
        dmax = max(dmax, float(dist.max()))
    if cutoff > 0.0:
        density -= 1  # each point's own zero distance was counted

    # rank points by (density desc, id asc); "denser than i" == smaller rank
    rank_order = np.lexsort((np.arange(n), -density))
    Xo = X[rank_order]
    min_dis_ranked = np.empty(n, dtype=np.float64)
    min_dis_ranked[0] = dmax
    for a in range(1, n, block):
        b = min(n, a + block)
        dist = cdist(Xo[a:b], Xo[:b])
        # row i at global rank a+i may only look at ranks < a+i
        tail = dist[:, a:b]
        tail[~np.tri(b - a, b - a, k=-1, dtype=bool)] = np.inf
        min_dis_ranked[a:b] = dist.min(axis=1)
    min_dis = np.empty(n, dtype=np.float64)
    min_dis[rank_order] = min_dis_ranked

    score = _norm01(density.astype(np.float64)) + _norm01(min_dis)
    seeds = np.lexsort((np.arange(n), -score))[:c].astype(np.int64)
    return DensityPeakScores(density=density, min_dis=min_dis, score=score), seeds


def kmeans(point_set: PointSet, seeds, *, max_iter: int = _LLOYD_MAX_ITER) -> ClusterAssignment:
    """Lloyd iterations from the given seed point ids.

    Runs until the assignment reaches a fixpoint or max_iter passes.
    An empty cluster is re-seeded to the point farthest from its stale
    center (ties by id), spending one iteration. If clusters are still
    empty at termination (only possible for degenerate data, e.g. all
    points identical), their labels are compacted away so every remaining
    label is occupied.
    """
    X = point_set.points
    seeds = np.asarray(seeds, dtype=np.int64).reshape(-1)
    c = seeds.shape[0]
    if c < 1:
        raise ValueError("need at least one seed")
    if (seeds < 0).any() or (seeds >= point_set.n).any():
        raise ValueError("seed ids out of range")
    centers = X[seeds].astype(np.float64).copy()

    labels = None
    for _ in range(max_iter):
        dist = cdist(X, centers)
        assign = dist.argmin(axis=1)  # ties: first occurrence = smallest center index
        counts = np.bincount(assign, minlength=c)
        if (counts == 0).any():
            for j in np.flatnonzero(counts == 0):
                centers[j] = X[dist[:, j].argmax()]
            continue
        if labels is not None and (assign == labels).all():
            break
        labels = assign
        for j in range(c):
            centers[j] = X[assign == j].mean(axis=0)
    if labels is None:
        labels = cdist(X, centers).argmin(axis=1)

    occupied = np.unique(labels)
    if occupied.shape[0] < c:
        remap = np.full(c, -1, dtype=np.int64)
        remap[occupied] = np.arange(occupied.shape[0])
        labels = remap[labels]
        centers = centers[occupied]
    return ClusterAssignment(
        label_of=labels.astype(np.int64), centers=centers, seeds=seeds
    )


def peel_cluster(
    point_set: PointSet, params: Params, c: int, *, workers: int = 1, return_detection: bool = False
):
    """Detect boundary points, cluster the internal rest, re-attach the peel.

    Each boundary point receives the label of its nearest internal point
    (Euclidean, ties toward the smaller id). Internal labels are never
    changed by the back-assignment. With a ratio near 0 this degrades to
    plain seeded K-means on all points.
    """
    if c < 1:
        raise ValueError(f"cluster count must be >= 1, got {c}")
    outcome = detect_full(point_set, params, workers=workers)
    mask = outcome.result.boundary_mask
    internal = np.flatnonzero(~mask)
    if internal.size == 0:
        raise AllBoundary("detection marked every point as boundary; nothing to cluster")

    inner_points = PointSet(point_set.points[internal])
    _, seed_local = density_peak_seeds(inner_points, c)
    inner_assign = kmeans(inner_points, seed_local)

    labels = np.empty(point_set.n, dtype=np.int64)
    labels[internal] = inner_assign.label_of
    peeled = np.flatnonzero(mask)
    if peeled.size:
        block = max(1, int(2e7) // max(internal.size, 1))
        for a in range(0, peeled.size, block):
            b = min(peeled.size, a + block)
            dist = cdist(point_set.points[peeled[a:b]], inner_points.points)
            nearest = dist.argmin(axis=1)  # first occurrence = smallest internal id
            labels[peeled[a:b]] = inner_assign.label_of[nearest]

    assignment = ClusterAssignment(
        label_of=labels,
        centers=inner_assign.centers,
        seeds=internal[inner_assign.seeds],
    )
    if return_detection:
        return assignment, outcome.result
    return assignment
