"""Tests for the seeded synthetic generators."""

import numpy as np
import pytest

from loddkit import (
    GenSpec,
    PlacementFailure,
    PointSet,
    build_index,
    gen_grid,
    gen_mixture,
    gen_ring_blob,
    gen_sphere_holes,
    gen_surface_holes,
    generate,
    knn_graph_components,
)


class TestGrid:
    def test_layout(self):
        ps, truth = gen_grid(3, 4, spacing=2.0)
        assert ps.n == 12
        assert ps.d == 2
        # row-major ids: id 1 is column 1 of row 0
        np.testing.assert_allclose(ps.points[1], [2.0, 0.0])
        np.testing.assert_allclose(ps.points[4], [0.0, 2.0])

    def test_perimeter_count(self):
        for rows, cols in [(2, 2), (3, 7), (10, 10), (21, 4)]:
            _, truth = gen_grid(rows, cols)
            assert truth.sum() == 2 * (rows + cols) - 4

    def test_interior_is_marked_false(self):
        _, truth = gen_grid(5, 5)
        truth2d = truth.reshape(5, 5)
        assert not truth2d[1:-1, 1:-1].any()
        assert truth2d[0].all() and truth2d[-1].all()

    def test_too_small(self):
        with pytest.raises(ValueError):
            gen_grid(1, 5)


class TestMixture:
    def test_counts_and_labels(self):
        ps, truth = gen_mixture([30, 50], [[0.0, 0.0], [9.0, 9.0]], 0.5, seed=0)
        assert truth is None
        assert ps.n == 80
        assert (ps.labels[:30] == 0).all() and (ps.labels[30:] == 1).all()
        # blobs actually sit near their centers
        assert np.linalg.norm(ps.points[:30].mean(axis=0)) < 0.5
        assert np.linalg.norm(ps.points[30:].mean(axis=0) - [9.0, 9.0]) < 0.5

    def test_deterministic(self):
        a, _ = gen_mixture([20, 20], [[0, 0], [5, 5]], 1.0, seed=3)
        b, _ = gen_mixture([20, 20], [[0, 0], [5, 5]], 1.0, seed=3)
        c, _ = gen_mixture([20, 20], [[0, 0], [5, 5]], 1.0, seed=4)
        assert np.array_equal(a.points, b.points)
        assert not np.array_equal(a.points, c.points)

    def test_scalar_std_broadcasts(self):
        ps, _ = gen_mixture([10, 10, 10], [[0, 0], [5, 0], [0, 5]], 2.0, seed=1)
        assert ps.n == 30

    def test_validation(self):
        with pytest.raises(ValueError):
            gen_mixture([0, 10], [[0, 0], [1, 1]], 1.0, seed=0)
        with pytest.raises(ValueError):
            gen_mixture([10], [[0, 0], [1, 1]], 1.0, seed=0)


class TestRingBlob:
    def test_structure(self):
        ps, truth = gen_ring_blob(seed=5)
        assert truth is None
        assert ps.d == 2
        assert set(np.unique(ps.labels)) == {0, 1, 2, 3, 4}
        ring = ps.points[ps.labels == 0]
        radius = np.linalg.norm(ring, axis=1)
        assert 0.8 < radius.min() and radius.max() < 1.2

    def test_sparse_blob_really_is_sparse(self):
        ps, _ = gen_ring_blob(seed=5)
        idx = build_index(ps, 1)
        nn = idx.distances[:, 0]
        core = nn[ps.labels == 1].mean()
        sparse = nn[ps.labels == 2].mean()
        assert sparse > 2.0 * core

    def test_graph_sees_at_least_four_components(self):
        ps, _ = gen_ring_blob(seed=5)
        parts = knn_graph_components(build_index(ps, 10))
        assert parts.count >= 4

    def test_weak_pair_touches(self):
        # the paired blobs must be close enough to fuse in the KNN graph
        ps, _ = gen_ring_blob(seed=5)
        pair = np.flatnonzero(ps.labels >= 3)
        sub = ps.points[pair]
        parts = knn_graph_components(build_index(PointSet(sub), 10))
        assert parts.count == 1


class TestSphereHoles:
    def test_closed_sphere(self):
        ps, truth = gen_sphere_holes(500, 0, 0.3, seed=0)
        assert ps.n == 500
        assert not truth.any()
        np.testing.assert_allclose(
            np.linalg.norm(ps.points, axis=1), 1.0, atol=1e-12
        )

    def test_holes_remove_points_and_mark_rims(self):
        ps, truth = gen_sphere_holes(2000, 3, 0.35, seed=1)
        assert ps.n < 2000
        assert truth.shape == (ps.n,)
        assert 0 < truth.sum() < ps.n
        # rim fraction should be small but meaningful
        frac = truth.mean()
        assert 0.01 < frac < 0.4

    def test_deterministic(self):
        a, ta = gen_sphere_holes(1500, 2, 0.3, seed=9)
        b, tb = gen_sphere_holes(1500, 2, 0.3, seed=9)
        assert np.array_equal(a.points, b.points)
        assert np.array_equal(ta, tb)

    def test_impossible_placement(self):
        with pytest.raises(PlacementFailure):
            gen_sphere_holes(500, 40, 0.8, seed=0)

    def test_validation(self):
        with pytest.raises(ValueError):
            gen_sphere_holes(50, 1, 0.3, seed=0)
        with pytest.raises(ValueError):
            gen_sphere_holes(500, 1, 0.0, seed=0)


class TestSurfaceHoles:
    def test_flat_patch(self):
        ps, truth = gen_surface_holes(1500, 2, 0.1, seed=2)
        assert ps.d == 3
        assert (ps.points[:, 2] == 0.0).all()
        assert ps.n < 1500  # discs were cut out
        assert 0 < truth.sum() < ps.n

    def test_outer_edge_is_truth(self):
        ps, truth = gen_surface_holes(1200, 0, 0.1, seed=3)
        assert ps.n == 1200
        corner = np.argmin(np.linalg.norm(ps.points[:, :2], axis=1))
        assert truth[corner]

    def test_impossible_radius(self):
        with pytest.raises(PlacementFailure):
            gen_surface_holes(500, 1, 0.6, seed=0)


class TestDispatcher:
    def test_routes_and_truth_flag(self):
        spec = GenSpec(kind="grid", seed=0, with_boundary_truth=True,
                       options={"rows": 4, "cols": 5})
        ps, truth = generate(spec)
        assert ps.n == 20
        assert truth.sum() == 14
        ps2, truth2 = generate(
            GenSpec(kind="grid", seed=0, options={"rows": 4, "cols": 5})
        )
        assert truth2 is None

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            generate(GenSpec(kind="moebius", seed=0))

    def test_sphere_defaults(self):
        ps, truth = generate(
            GenSpec(kind="sphere-holes", seed=1, with_boundary_truth=True,
                    options={"n": 800})
        )
        assert truth is not None and truth.any()
