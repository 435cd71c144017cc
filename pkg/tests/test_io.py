"""Table reading/writing, result persistence, and the two projections."""

import json

import numpy as np
import pytest

from loddkit import (
    EmptySet,
    IoError,
    NonNumeric,
    Params,
    PointSet,
    RaggedRows,
    TableSchema,
    detect_full,
    gen_grid,
    minmax_normalize,
    pca_project,
    read_labels,
    read_points,
    read_result,
    write_labels,
    write_points,
    write_result,
)


class TestReadPoints:
    def test_csv_with_header(self, tmp_path):
        path = tmp_path / "pts.csv"
        path.write_text("x0,x1\n1.5,2.5\n3.0,4.0\n")
        ps = read_points(str(path))
        np.testing.assert_allclose(ps.points, [[1.5, 2.5], [3.0, 4.0]])

    def test_csv_without_header_is_sniffed(self, tmp_path):
        path = tmp_path / "pts.csv"
        path.write_text("1.5,2.5\n3.0,4.0\n")
        ps = read_points(str(path))
        assert ps.n == 2

    def test_header_can_be_forced(self, tmp_path):
        # all-numeric first row, but the schema says it is a header
        path = tmp_path / "pts.csv"
        path.write_text("1,2\n3.0,4.0\n")
        ps = read_points(str(path), TableSchema(has_header=True))
        assert ps.n == 1

    def test_xyz_uses_whitespace(self, tmp_path):
        path = tmp_path / "pts.xyz"
        path.write_text("0.0 0.0 1.0\n1.0  2.0\t3.0\n")
        ps = read_points(str(path))
        assert ps.d == 3
        np.testing.assert_allclose(ps.points[1], [1.0, 2.0, 3.0])

    def test_label_column_by_name(self, tmp_path):
        path = tmp_path / "pts.csv"
        path.write_text("x,y,label\n0.0,0.0,1\n1.0,1.0,0\n")
        ps = read_points(str(path), TableSchema(label_column="label"))
        assert ps.d == 2
        assert ps.labels.tolist() == [1, 0]

    def test_label_column_by_index(self, tmp_path):
        path = tmp_path / "pts.csv"
        path.write_text("1,0.0,5.0\n0,1.0,6.0\n")
        ps = read_points(str(path), TableSchema(label_column=0))
        assert ps.labels.tolist() == [1, 0]
        np.testing.assert_allclose(ps.points, [[0.0, 5.0], [1.0, 6.0]])

    def test_feature_columns_subset(self, tmp_path):
        path = tmp_path / "pts.csv"
        path.write_text("a,b,c\n1,2,3\n4,5,6\n")
        ps = read_points(str(path), TableSchema(feature_columns=["c", "a"]))
        np.testing.assert_allclose(ps.points, [[3.0, 1.0], [6.0, 4.0]])

    def test_ragged_rows_report_position(self, tmp_path):
        path = tmp_path / "pts.csv"
        path.write_text("x,y\n1,2\n3,4,5\n")
        with pytest.raises(RaggedRows) as exc:
            read_points(str(path))
        assert exc.value.row == 3  # 1-based, counting the header line

    def test_non_numeric_reports_position(self, tmp_path):
        path = tmp_path / "pts.csv"
        path.write_text("1.0,2.0\n3.0,oops\n")
        with pytest.raises(NonNumeric) as exc:
            read_points(str(path))
        assert exc.value.row == 2
        assert exc.value.col == 2

    def test_empty_inputs(self, tmp_path):
        empty = tmp_path / "empty.csv"
        empty.write_text("")
        with pytest.raises(EmptySet):
            read_points(str(empty))
        header_only = tmp_path / "h.csv"
        header_only.write_text("x,y\n")
        with pytest.raises(EmptySet):
            read_points(str(header_only))

    def test_missing_file(self, tmp_path):
        with pytest.raises(IoError):
            read_points(str(tmp_path / "nope.csv"))


class TestRoundTrips:
    def test_points_csv(self, tmp_path):
        ps, _ = gen_grid(4, 4, spacing=0.3)
        path = str(tmp_path / "grid.csv")
        write_points(path, ps)
        back = read_points(path)
        assert np.array_equal(back.points, ps.points)

    def test_points_xyz(self, tmp_path):
        rng = np.random.default_rng(1)
        ps = PointSet(rng.standard_normal((20, 3)))
        path = str(tmp_path / "cloud.xyz")
        write_points(path, ps)
        back = read_points(path)
        assert np.array_equal(back.points, ps.points)

    def test_result_csv(self, tmp_path):
        ps, _ = gen_grid(6, 6)
        out = detect_full(ps, Params(k=8, ratio=0.5))
        path = str(tmp_path / "res.csv")
        write_result(path, out.result, out.scores)
        ids, scores, mask = read_result(path)
        assert np.array_equal(ids, np.arange(36))
        assert np.array_equal(scores, out.scores.values)  # 17 digits: lossless
        assert np.array_equal(mask, out.result.boundary_mask)

    def test_result_json(self, tmp_path):
        ps, _ = gen_grid(5, 5)
        out = detect_full(ps, Params(k=8, ratio=0.4))
        path = str(tmp_path / "res.json")
        write_result(path, out.result, out.scores)
        doc = json.loads(open(path).read())
        assert doc["params"]["k"] == 8
        assert doc["params"]["ratio"] == 0.4
        assert doc["effective_ratio"] == 0.4
        assert doc["boundary_count"] == out.result.boundary_count
        ids, scores, mask = read_result(path)
        assert np.array_equal(scores, out.scores.values)
        assert np.array_equal(mask, out.result.boundary_mask)

    def test_labels(self, tmp_path):
        path = str(tmp_path / "lab.csv")
        write_labels(path, np.array([2, 0, 1, 1]))
        assert read_labels(path).tolist() == [2, 0, 1, 1]

    def test_bare_label_column(self, tmp_path):
        path = tmp_path / "lab.csv"
        path.write_text("0\n1\n1\n")
        assert read_labels(str(path)).tolist() == [0, 1, 1]


class TestTransforms:
    def test_minmax_basic(self):
        X = np.array([[0.0, 10.0], [5.0, 20.0], [10.0, 30.0]])
        out = minmax_normalize(X)
        np.testing.assert_allclose(out, [[0, 0], [0.5, 0.5], [1, 1]])

    def test_minmax_constant_column(self):
        X = np.array([[1.0, 7.0], [2.0, 7.0]])
        out = minmax_normalize(X)
        np.testing.assert_allclose(out[:, 1], [0.0, 0.0])

    def test_pca_line(self):
        X = np.array([[0.0, 0.0], [1.0, 1.0], [2.0, 2.0]])
        out = pca_project(X, 1)
        np.testing.assert_allclose(
            out[:, 0], [-np.sqrt(2), 0.0, np.sqrt(2)], atol=1e-12
        )

    def test_pca_sign_is_deterministic(self):
        rng = np.random.default_rng(2)
        X = rng.standard_normal((50, 4))
        a = pca_project(X, 2)
        b = pca_project(X.copy(), 2)
        assert np.array_equal(a, b)
        # the dominant loading of each kept component is positive by fiat,
        # so even a mirrored input yields the same projected geometry
        c = pca_project(-X, 2)
        np.testing.assert_allclose(np.abs(c), np.abs(a), atol=1e-9)

    def test_pca_dim_bounds(self):
        X = np.zeros((5, 3))
        with pytest.raises(ValueError):
            pca_project(X, 0)
        with pytest.raises(ValueError):
            pca_project(X, 4)
