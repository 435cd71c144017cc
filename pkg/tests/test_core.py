"""Unit tests for the core containers, split arithmetic, and validation."""

import math

import numpy as np
import pytest

from loddkit import (
    DetectionResult,
    EmptySet,
    InvalidParams,
    KTooLarge,
    LengthMismatch,
    NonFinite,
    OmegaOutOfRange,
    Params,
    PointSet,
    split_count,
    validate,
)


class TestPointSet:
    def test_basic_shape(self):
        ps = PointSet(np.zeros((5, 3)))
        assert ps.n == 5
        assert ps.d == 3
        assert ps.points.dtype == np.float64
        assert np.array_equal(ps.ids, np.arange(5))

    def test_one_dimensional_input_becomes_column(self):
        ps = PointSet(np.array([1.0, 2.0, 3.0]))
        assert ps.points.shape == (3, 1)

    def test_points_are_copied_and_frozen(self):
        raw = np.arange(6, dtype=float).reshape(3, 2)
        ps = PointSet(raw)
        raw[0, 0] = 99.0
        assert ps.points[0, 0] == 0.0
        with pytest.raises(ValueError):
            ps.points[0, 0] = 7.0

    def test_labels_length_checked(self):
        with pytest.raises(LengthMismatch):
            PointSet(np.zeros((4, 2)), labels=np.array([0, 1]))

    def test_labels_stored_as_int64(self):
        ps = PointSet(np.zeros((3, 2)), labels=[0, 1, 1])
        assert ps.labels.dtype == np.int64


class TestSplitCount:
    def test_exact_fractions(self):
        assert split_count(100, 0.36) == 36
        assert split_count(400, 0.19) == 76
        assert split_count(10, 0.5) == 5

    def test_floor_when_inexact(self):
        # 7 * 0.4 = 2.8 -> floor 2
        assert split_count(7, 0.4) == 2

    def test_ulp_guard_rescues_decimal_products(self):
        # 625 * 0.1536 is exactly 96 in decimal but lands a hair below
        # 96 in binary; the guard must not floor it down to 95.
        assert split_count(625, 0.1536) == 96
        for n, p in [(100, 19), (100, 25), (100, 28), (300, 17), (625, 36)]:
            assert split_count(n, p / 100.0) == (n * p) // 100

    def test_never_exceeds_n(self):
        assert split_count(10, 1.0) == 10

    def test_random_products_floor(self):
        rng = np.random.default_rng(11)
        for _ in range(2000):
            n = int(rng.integers(1, 5000))
            b = int(rng.integers(0, n + 1))
            got = split_count(n, b / n)
            assert got == b, (n, b, got)


class TestValidate:
    def _params(self, **kw):
        base = dict(k=3, omega=0.5, ratio=0.2, adaptive=False)
        base.update(kw)
        return Params(**base)

    def test_accepts_sane_input(self):
        validate(PointSet(np.random.default_rng(0).random((10, 2))), self._params())

    def test_empty(self):
        with pytest.raises(EmptySet):
            validate(PointSet(np.zeros((0, 2))), self._params())

    def test_non_finite(self):
        pts = np.ones((5, 2))
        pts[2, 1] = np.nan
        with pytest.raises(NonFinite):
            validate(PointSet(pts), self._params())
        pts[2, 1] = np.inf
        with pytest.raises(NonFinite):
            validate(PointSet(pts), self._params())

    def test_k_too_large(self):
        with pytest.raises(KTooLarge):
            validate(PointSet(np.random.default_rng(1).random((5, 2))), self._params(k=5))

    def test_k_must_be_positive_integer(self):
        with pytest.raises(InvalidParams):
            validate(PointSet(np.ones((5, 2))), self._params(k=0))
        with pytest.raises(InvalidParams):
            validate(PointSet(np.ones((5, 2))), self._params(k=2.5))

    def test_omega_open_interval(self):
        ps = PointSet(np.random.default_rng(2).random((9, 2)))
        for bad in (0.0, 1.0, -0.1, 1.5):
            with pytest.raises(OmegaOutOfRange):
                validate(ps, self._params(omega=bad))

    def test_ratio_range(self):
        ps = PointSet(np.random.default_rng(3).random((9, 2)))
        for bad in (0.0, -0.2, 1.0001):
            with pytest.raises(InvalidParams):
                validate(ps, self._params(ratio=bad))
        validate(ps, self._params(ratio=1.0))  # inclusive upper end

    def test_exactly_one_split_mode(self):
        ps = PointSet(np.random.default_rng(4).random((9, 2)))
        with pytest.raises(InvalidParams):
            validate(ps, self._params(ratio=0.2, adaptive=True))
        with pytest.raises(InvalidParams):
            validate(ps, self._params(ratio=None, adaptive=False))
        validate(ps, self._params(ratio=None, adaptive=True))

    def test_cluster_count_positive(self):
        ps = PointSet(np.random.default_rng(5).random((9, 2)))
        with pytest.raises(InvalidParams):
            validate(ps, self._params(cluster_count=0))


class TestResultContainers:
    def test_detection_result_count_matches_mask(self):
        mask = np.array([True, False, True])
        res = DetectionResult(
            boundary_mask=mask,
            order=np.array([0, 2, 1]),
            effective_ratio=2 / 3,
            boundary_count=2,
        )
        assert res.boundary_count == int(mask.sum())

    def test_detection_result_rejects_bad_count(self):
        with pytest.raises(LengthMismatch):
            DetectionResult(
                boundary_mask=np.array([True, False]),
                order=np.array([0, 1]),
                effective_ratio=0.5,
                boundary_count=2,
            )

    def test_params_defaults(self):
        p = Params(k=10)
        assert p.omega == 0.5
        assert p.ratio is None
        assert not p.adaptive
        assert p.cluster_count is None
        assert math.isclose(p.omega, 0.5)
