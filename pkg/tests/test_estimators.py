"""Tests for the scikit-learn style wrappers."""

import numpy as np
import pytest
from sklearn.base import clone

from loddkit import (
    BoundaryDetector,
    BoundaryPeeledKMeans,
    InvalidParams,
    Params,
    PointSet,
    acc,
    detect,
    gen_grid,
    gen_mixture,
)


class TestBoundaryDetector:
    def test_fit_sets_state(self):
        ps, perimeter = gen_grid(10, 10)
        det = BoundaryDetector(k=8, ratio=0.36).fit(ps.points)
        assert det.n_features_in_ == 2
        assert det.boundary_count_ == 36
        assert det.effective_ratio_ == 0.36
        assert np.array_equal(det.boundary_mask_, perimeter)
        assert det.scores_.shape == (100,)
        assert det.ratio_estimate_ is None

    def test_adaptive_default(self):
        ps, perimeter = gen_grid(20, 20)
        det = BoundaryDetector(k=8).fit(ps.points)
        assert det.effective_ratio_ == 0.19
        assert det.ratio_estimate_ is not None
        assert np.array_equal(det.boundary_mask_, perimeter)

    def test_fit_predict_is_binary(self):
        ps, perimeter = gen_grid(10, 10)
        pred = BoundaryDetector(k=8, ratio=0.36).fit_predict(ps.points)
        assert pred.dtype == np.int64
        assert np.array_equal(pred.astype(bool), perimeter)

    def test_matches_functional_core(self):
        rng = np.random.default_rng(0)
        X = rng.standard_normal((200, 3))
        est = BoundaryDetector(k=12, ratio=0.3).fit(X)
        res = detect(PointSet(X), Params(k=12, ratio=0.3))
        assert np.array_equal(est.boundary_mask_, res.boundary_mask)
        assert np.array_equal(est.order_, res.order)

    def test_clone_preserves_parameters(self):
        det = BoundaryDetector(k=7, omega=0.3, ratio=0.25, normalize=True)
        twin = clone(det)
        assert twin.get_params() == det.get_params()
        assert twin.k == 7 and twin.omega == 0.3 and twin.ratio == 0.25

    def test_normalize_changes_geometry(self):
        rng = np.random.default_rng(1)
        X = rng.standard_normal((150, 2)) * [1.0, 100.0]
        raw = BoundaryDetector(k=10, ratio=0.2).fit(X)
        scaled = BoundaryDetector(k=10, ratio=0.2, normalize=True).fit(X)
        assert not np.array_equal(raw.boundary_mask_, scaled.boundary_mask_)

    def test_conflicting_modes_raise(self):
        ps, _ = gen_grid(5, 5)
        with pytest.raises(InvalidParams):
            BoundaryDetector(k=8, ratio=None, adaptive=False).fit(ps.points)


class TestBoundaryPeeledKMeans:
    def test_two_blob_recovery(self):
        ps, _ = gen_mixture([200, 200], [[0.0, 0.0], [12.0, 0.0]], 1.0, seed=7)
        km = BoundaryPeeledKMeans(n_clusters=2, k=20, ratio=0.3).fit(ps.points)
        assert acc(ps.labels, km.labels_) == 1.0
        assert km.cluster_centers_.shape == (2, 2)
        assert km.seed_ids_.shape == (2,)
        assert not km.boundary_mask_[km.seed_ids_].any()

    def test_fit_predict_via_mixin(self):
        ps, _ = gen_mixture([80, 80], [[0.0, 0.0], [10.0, 0.0]], 1.0, seed=8)
        labels = BoundaryPeeledKMeans(n_clusters=2, k=10, ratio=0.2).fit_predict(
            ps.points
        )
        assert labels.shape == (160,)
        assert set(np.unique(labels)) == {0, 1}

    def test_adaptive_uses_known_cluster_count(self):
        ps, _ = gen_mixture([150, 150], [[0.0, 0.0], [14.0, 0.0]], 1.0, seed=9)
        km = BoundaryPeeledKMeans(n_clusters=2, k=15).fit(ps.points)
        assert 0.0 < km.effective_ratio_ <= 0.5
        assert acc(ps.labels, km.labels_) == 1.0

    def test_clone(self):
        km = BoundaryPeeledKMeans(n_clusters=4, k=9, omega=0.7)
        twin = clone(km)
        assert twin.get_params() == km.get_params()
