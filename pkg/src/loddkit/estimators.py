"""Estimator-style front end: fit/predict objects over the functional core.

These follow the scikit-learn contract — constructor arguments are stored
verbatim (so ``clone`` and ``get_params`` work), all computation happens
in ``fit``, and fitted state lands in trailing-underscore attributes.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin

from .cluster import peel_cluster
from .core import Params, PointSet
from .detect import detect_full
from .io import minmax_normalize

__all__ = ["BoundaryDetector", "BoundaryPeeledKMeans"]


class BoundaryDetector(BaseEstimator):
    """Flags the boundary points of a point cloud.

    Scores every point by how lopsided its K-nearest-neighbor directions
    are on the unit sphere, then takes the lowest-scoring fraction as the
    boundary. The fraction is either fixed (``ratio``) or estimated from
    the data (``adaptive``); ``cluster_count`` sharpens the adaptive
    estimate when the number of clusters is known.

    Fitted attributes: ``scores_``, ``boundary_mask_``, ``order_``,
    ``effective_ratio_``, ``boundary_count_``, ``ratio_estimate_``.
    """

    def __init__(
        self,
        k: int = 20,
        omega: float = 0.5,
        ratio: float | None = None,
        adaptive: bool = True,
        cluster_count: int | None = None,
        normalize: bool = False,
        workers: int = 1,
    ):
        self.k = k
        self.omega = omega
        self.ratio = ratio
        self.adaptive = adaptive
        self.cluster_count = cluster_count
        self.normalize = normalize
        self.workers = workers

    def _params(self) -> Params:
        return Params(
            k=self.k,
            omega=self.omega,
            ratio=self.ratio,
            adaptive=self.adaptive and self.ratio is None,
            cluster_count=self.cluster_count,
        )

    def _point_set(self, X) -> PointSet:
        X = np.asarray(X, dtype=np.float64)
        if self.normalize:
            X = minmax_normalize(X)
        return PointSet(X)

    def fit(self, X, y=None):
        point_set = self._point_set(X)
        outcome = detect_full(point_set, self._params(), workers=self.workers)
        self.n_features_in_ = point_set.d
        self.scores_ = outcome.scores.values
        self.boundary_mask_ = outcome.result.boundary_mask
        self.order_ = outcome.result.order
        self.effective_ratio_ = outcome.result.effective_ratio
        self.boundary_count_ = outcome.result.boundary_count
        self.ratio_estimate_ = outcome.estimate
        return self

    def fit_predict(self, X, y=None) -> np.ndarray:
        """Fit and return a 0/1 vector (1 = boundary point)."""
        return self.fit(X).boundary_mask_.astype(np.int64)


class BoundaryPeeledKMeans(ClusterMixin, BaseEstimator):
    """K-means made robust by peeling the boundary off first.

    Boundary points are detected and set aside, density-peak seeds and
    Lloyd iterations run on the internal points only, and the peeled
    points then inherit the label of their nearest internal point.

    Fitted attributes: ``labels_``, ``cluster_centers_``, ``seed_ids_``,
    ``boundary_mask_``, ``effective_ratio_``.
    """

    def __init__(
        self,
        n_clusters: int = 2,
        k: int = 20,
        omega: float = 0.5,
        ratio: float | None = None,
        adaptive: bool = True,
        normalize: bool = False,
        workers: int = 1,
    ):
        self.n_clusters = n_clusters
        self.k = k
        self.omega = omega
        self.ratio = ratio
        self.adaptive = adaptive
        self.normalize = normalize
        self.workers = workers

    def fit(self, X, y=None):
        X = np.asarray(X, dtype=np.float64)
        if self.normalize:
            X = minmax_normalize(X)
        point_set = PointSet(X)
        params = Params(
            k=self.k,
            omega=self.omega,
            ratio=self.ratio,
            adaptive=self.adaptive and self.ratio is None,
            cluster_count=self.n_clusters,
        )
        assignment, detection = peel_cluster(
            point_set,
            params,
            self.n_clusters,
            workers=self.workers,
            return_detection=True,
        )
        self.n_features_in_ = point_set.d
        self.labels_ = assignment.label_of
        self.cluster_centers_ = assignment.centers
        self.seed_ids_ = assignment.seeds
        self.boundary_mask_ = detection.boundary_mask
        self.effective_ratio_ = detection.effective_ratio
        return self
