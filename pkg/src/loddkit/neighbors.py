"""Exact k-nearest-neighbor search, the KNN graph, and its connected components.

The search contract is strategy-independent: a space-partitioning tree is
used for d <= 16 and a blockwise brute-force scan above that, but both
produce byte-identical tables. Determinism is guaranteed by a fixed
tie rule — equal distances prefer the smaller point id — enforced by
recomputing candidate distances with one canonical formula and sorting
with a stable two-pass argsort. A duplicate of the query is a legitimate
neighbor at distance 0; only the query's own id is excluded.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray
from scipy import sparse
from scipy.sparse import csgraph
from scipy.spatial import cKDTree

from .core import PointSet
from .exceptions import KTooLarge

__all__ = ["NeighborIndex", "ComponentPartition", "build_index", "knn_graph_components"]

_TREE_DIM_LIMIT = 16
# absolute + relative slack for "these two candidate distances might be tied"
_TIE_ABS = 1e-12
_TIE_REL = 1e-9


@dataclass(frozen=True, eq=False)
class NeighborIndex:
    """Per-point table of the k nearest neighbor ids and distances.

    ``neighbor_ids[i]`` never contains i itself; ``distances[i]`` is
    nondecreasing and holds exact Euclidean distances.
    """

    neighbor_ids: NDArray[np.int64]
    distances: NDArray[np.float64]
    k: int


@dataclass(frozen=True, eq=False)
class ComponentPartition:
    """Connected components of the (symmetrized) KNN graph."""

    component_of: NDArray[np.int64]
    sizes: NDArray[np.int64]

    @property
    def count(self) -> int:
        return len(self.sizes)


def _canonical_distances(X: np.ndarray, rows: np.ndarray, cand: np.ndarray) -> np.ndarray:
    """Euclidean distances from X[rows] to the candidate ids, one fixed formula.

    Both search strategies funnel through this exact computation so that
    their float results cannot disagree.
    """
    diff = X[cand] - X[rows][:, None, :]
    return np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))


def _sort_by_distance_then_id(
    cand: np.ndarray, dist: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Row-wise sort by (distance, id): stable sort by id first, then by distance."""
    by_id = np.argsort(cand, axis=1, kind="stable")
    cand = np.take_along_axis(cand, by_id, axis=1)
    dist = np.take_along_axis(dist, by_id, axis=1)
    by_dist = np.argsort(dist, axis=1, kind="stable")
    return np.take_along_axis(cand, by_dist, axis=1), np.take_along_axis(dist, by_dist, axis=1)


def _brute_rows(X: np.ndarray, rows: np.ndarray, k: int) -> tuple[np.ndarray, np.ndarray]:
    """Exact top-k for the given query rows against every point."""
    n = X.shape[0]
    ids_out = np.empty((len(rows), k), dtype=np.int64)
    d_out = np.empty((len(rows), k), dtype=np.float64)
    # keep the (rows, n, d) difference block around ~3e7 doubles
    block = max(1, int(3e7) // max(n * X.shape[1], 1))
    all_ids = np.arange(n, dtype=np.int64)
    for a in range(0, len(rows), block):
        b = min(len(rows), a + block)
        r = rows[a:b]
        cand = np.broadcast_to(all_ids, (b - a, n))
        dist = _canonical_distances(X, r, cand)
        dist[np.arange(b - a), r] = np.inf  # exclude the query itself
        ids_s, d_s = _sort_by_distance_then_id(np.ascontiguousarray(cand), dist)
        ids_out[a:b] = ids_s[:, :k]
        d_out[a:b] = d_s[:, :k]
    return ids_out, d_out


def _tree_index(X: np.ndarray, k: int, workers: int) -> tuple[np.ndarray, np.ndarray]:
    n = X.shape[0]
    kq = min(n, k + 2)
    tree = cKDTree(X)
    _, cand = tree.query(X, k=kq, workers=workers)
    cand = np.asarray(cand, dtype=np.int64)
    if kq == 1:
        cand = cand.reshape(-1, 1)

    ids_out = np.empty((n, k), dtype=np.int64)
    d_out = np.empty((n, k), dtype=np.float64)
    suspect: list[np.ndarray] = []
    block = max(1, int(3e7) // max(kq * X.shape[1], 1))
    for a in range(0, n, block):
        b = min(n, a + block)
        rows = np.arange(a, b)
        c = cand[a:b]
        dist = _canonical_distances(X, rows, c)
        dist[c == rows[:, None]] = np.inf  # push the query itself to the back
        ids_s, d_s = _sort_by_distance_then_id(c, dist)
        ids_out[a:b] = ids_s[:, :k]
        d_out[a:b] = d_s[:, :k]
        if kq < n:
            # A tie (within slack) straddling the kth/(k+1)th candidate may
            # extend beyond what the tree returned; recheck those rows
            # against all points. Rows whose own id never showed up are
            # drowning in duplicates — recheck those too.
            gap_tied = d_s[:, k] - d_s[:, k - 1] <= _TIE_ABS + _TIE_REL * d_s[:, k]
            self_missing = ~np.isinf(d_s).any(axis=1)
            flagged = np.flatnonzero(gap_tied | self_missing)
            if flagged.size:
                suspect.append(rows[flagged])
    if suspect:
        redo = np.concatenate(suspect)
        ids_fix, d_fix = _brute_rows(X, redo, k)
        ids_out[redo] = ids_fix
        d_out[redo] = d_fix
    return ids_out, d_out


def build_index(point_set: PointSet, k: int, *, workers: int = 1) -> NeighborIndex:
    """Exact k nearest neighbors of every point under Euclidean distance.

    The result is identical whichever internal strategy runs and however
    many workers the tree query uses.
    """
    X = point_set.points
    n = point_set.n
    if not 1 <= k <= n - 1:
        raise KTooLarge(f"k must lie in [1, {n - 1}] for n={n}, got {k}")
    if point_set.d <= _TREE_DIM_LIMIT:
        ids, dist = _tree_index(X, k, workers)
    else:
        ids, dist = _brute_rows(X, np.arange(n, dtype=np.int64), k)
    return NeighborIndex(neighbor_ids=ids, distances=dist, k=k)


def knn_graph_components(index: NeighborIndex) -> ComponentPartition:
    """Connected components of the undirected KNN graph.

    The edge set is the symmetrized union: i~j whenever j is a neighbor of
    i or i is a neighbor of j.
    """
    n, k = index.neighbor_ids.shape
    rows = np.repeat(np.arange(n, dtype=np.int64), k)
    cols = index.neighbor_ids.ravel()
    graph = sparse.coo_matrix(
        (np.ones(n * k, dtype=np.int8), (rows, cols)), shape=(n, n)
    ).tocsr()
    count, labels = csgraph.connected_components(graph, directed=False)
    sizes = np.bincount(labels, minlength=count).astype(np.int64)
    return ComponentPartition(component_of=labels.astype(np.int64), sizes=sizes)
