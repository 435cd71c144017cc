"""Reading point tables and writing detection results.

Input tables are plain text: comma-separated by default, whitespace-
separated for ``.xyz`` files. A header row is auto-detected (any cell in
the first row that does not parse as a number makes it a header) unless
the schema pins it. Parse failures carry 1-based row/column positions so
a user can open the file and look at the offending cell.

Results go out as CSV (``id,score,boundary`` — scores printed with 17
significant digits so a round-trip is lossless) or as a JSON document
that also records the run parameters.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import DetectionResult, LoddScores, PointSet
from .exceptions import EmptySet, IoError, NonNumeric, RaggedRows

__all__ = [
    "TableSchema",
    "read_points",
    "write_points",
    "write_result",
    "read_result",
    "write_labels",
    "read_labels",
    "minmax_normalize",
    "pca_project",
]


@dataclass(frozen=True)
class TableSchema:
    """How to interpret a point table.

    ``has_header=None`` means sniff; ``label_column`` (name or 0-based
    index) is pulled out as integer labels; ``feature_columns`` restricts
    the coordinate columns (default: every remaining column).
    """

    delimiter: str | None = None
    has_header: bool | None = None
    label_column: int | str | None = None
    feature_columns: Sequence[int | str] | None = None


def _split_rows(path: str, delimiter: str | None) -> list[list[str]]:
    try:
        with open(path, "r", newline="") as fh:
            if delimiter is None:
                return [line.split() for line in fh if line.strip()]
            reader = csv.reader(fh, delimiter=delimiter)
            return [row for row in reader if any(cell.strip() for cell in row)]
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from exc


def _is_number(cell: str) -> bool:
    try:
        float(cell)
        return True
    except ValueError:
        return False


def _resolve_column(spec: int | str, names: list[str] | None, width: int) -> int:
    if isinstance(spec, str):
        if names is None or spec not in names:
            raise ValueError(f"no column named {spec!r} (file has no such header)")
        return names.index(spec)
    idx = int(spec)
    if not 0 <= idx < width:
        raise ValueError(f"column index {idx} out of range for {width} columns")
    return idx


def read_points(path: str, schema: TableSchema | None = None) -> PointSet:
    """Load a delimited text file of coordinates into a PointSet."""
    schema = schema or TableSchema()
    delimiter = schema.delimiter
    if delimiter is None and not str(path).endswith(".xyz"):
        delimiter = ","
    rows = _split_rows(path, delimiter)
    if not rows:
        raise EmptySet(f"{path} contains no data rows")

    has_header = schema.has_header
    if has_header is None:
        has_header = not all(_is_number(cell) for cell in rows[0])
    names = [cell.strip() for cell in rows[0]] if has_header else None
    data_rows = rows[1:] if has_header else rows
    if not data_rows:
        raise EmptySet(f"{path} contains a header but no data rows")

    width = len(data_rows[0])
    for i, row in enumerate(data_rows):
        if len(row) != width:
            # 1-based, counting the header row if present
            file_row = i + 1 + (1 if has_header else 0)
            raise RaggedRows(
                f"{path}: row {file_row} has {len(row)} columns, expected {width}",
                row=file_row,
            )

    label_idx = None
    if schema.label_column is not None:
        label_idx = _resolve_column(schema.label_column, names, width)
    if schema.feature_columns is not None:
        feature_idx = [
            _resolve_column(c, names, width) for c in schema.feature_columns
        ]
    else:
        feature_idx = [j for j in range(width) if j != label_idx]

    values = np.empty((len(data_rows), len(feature_idx)), dtype=np.float64)
    labels = np.empty(len(data_rows), dtype=np.int64) if label_idx is not None else None
    for i, row in enumerate(data_rows):
        file_row = i + 1 + (1 if has_header else 0)
        for out_j, j in enumerate(feature_idx):
            try:
                values[i, out_j] = float(row[j])
            except ValueError:
                raise NonNumeric(
                    f"{path}: row {file_row}, column {j + 1}: "
                    f"{row[j]!r} is not a number",
                    row=file_row,
                    col=j + 1,
                ) from None
        if labels is not None:
            try:
                labels[i] = int(float(row[label_idx]))
            except ValueError:
                raise NonNumeric(
                    f"{path}: row {file_row}, column {label_idx + 1}: "
                    f"{row[label_idx]!r} is not a label",
                    row=file_row,
                    col=label_idx + 1,
                ) from None
    return PointSet(values, labels=labels)


def write_points(path: str, point_set: PointSet) -> None:
    """Write coordinates; ``.xyz`` gets bare whitespace rows, else CSV."""
    as_xyz = str(path).endswith(".xyz")
    try:
        with open(path, "w", newline="") as fh:
            if as_xyz:
                for row in point_set.points:
                    fh.write(" ".join(f"{v:.17g}" for v in row) + "\n")
                return
            writer = csv.writer(fh)
            writer.writerow([f"x{j}" for j in range(point_set.d)])
            for row in point_set.points:
                writer.writerow([f"{v:.17g}" for v in row])
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc


def write_result(
    path: str, result: DetectionResult, scores: LoddScores, fmt: str | None = None
) -> None:
    """Persist a detection run as CSV or JSON (chosen by extension)."""
    if fmt is None:
        fmt = "json" if str(path).endswith(".json") else "csv"
    mask = result.boundary_mask
    try:
        with open(path, "w", newline="") as fh:
            if fmt == "json":
                doc = {
                    "params": {
                        "k": scores.params.k,
                        "omega": scores.params.omega,
                        "ratio": scores.params.ratio,
                        "adaptive": scores.params.adaptive,
                        "cluster_count": scores.params.cluster_count,
                    },
                    "effective_ratio": result.effective_ratio,
                    "boundary_count": int(result.boundary_count),
                    "points": [
                        {
                            "id": int(i),
                            "score": float(scores.values[i]),
                            "boundary": bool(mask[i]),
                        }
                        for i in range(mask.shape[0])
                    ],
                }
                json.dump(doc, fh, indent=2)
                fh.write("\n")
            else:
                writer = csv.writer(fh)
                writer.writerow(["id", "score", "boundary"])
                for i in range(mask.shape[0]):
                    writer.writerow(
                        [i, f"{scores.values[i]:.17g}", int(mask[i])]
                    )
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc


def read_result(path: str):
    """Read back a result file -> (ids, scores, boundary mask)."""
    if str(path).endswith(".json"):
        try:
            with open(path, "r") as fh:
                doc = json.load(fh)
        except OSError as exc:
            raise IoError(f"cannot read {path}: {exc}") from exc
        pts = doc["points"]
        ids = np.array([p["id"] for p in pts], dtype=np.int64)
        scores = np.array([p["score"] for p in pts], dtype=np.float64)
        mask = np.array([p["boundary"] for p in pts], dtype=bool)
        return ids, scores, mask
    rows = _split_rows(path, ",")
    body = rows[1:] if rows and not _is_number(rows[0][0]) else rows
    ids = np.array([int(r[0]) for r in body], dtype=np.int64)
    scores = np.array([float(r[1]) for r in body], dtype=np.float64)
    mask = np.array([bool(int(r[2])) for r in body], dtype=bool)
    return ids, scores, mask


def write_labels(path: str, labels: np.ndarray) -> None:
    """Write cluster labels as an ``id,label`` CSV."""
    labels = np.asarray(labels)
    try:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["id", "label"])
            for i, lab in enumerate(labels):
                writer.writerow([i, int(lab)])
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc


def read_labels(path: str) -> np.ndarray:
    """Read labels from an ``id,label`` CSV or a bare one-column file."""
    rows = _split_rows(path, ",")
    if not rows:
        raise EmptySet(f"{path} contains no labels")
    body = rows[1:] if not _is_number(rows[0][-1]) else rows
    if not body:
        raise EmptySet(f"{path} contains a header but no labels")
    if len(body[0]) == 1:
        return np.array([int(float(r[0])) for r in body], dtype=np.int64)
    out = np.empty(len(body), dtype=np.int64)
    for r in body:
        out[int(r[0])] = int(float(r[1]))
    return out


def minmax_normalize(points: np.ndarray) -> np.ndarray:
    """Rescale every column to [0, 1]; constant columns become 0."""
    points = np.asarray(points, dtype=np.float64)
    lo = points.min(axis=0)
    span = points.max(axis=0) - lo
    safe = np.where(span > 0.0, span, 1.0)
    out = (points - lo) / safe
    out[:, span == 0.0] = 0.0
    return out


def pca_project(points: np.ndarray, dim: int) -> np.ndarray:
    """Project onto the top principal components, deterministically signed.

    Each component's sign is fixed so its largest-magnitude loading is
    positive, making the output independent of SVD sign ambiguity.
    """
    points = np.asarray(points, dtype=np.float64)
    if not 1 <= dim <= points.shape[1]:
        raise ValueError(f"dim must be in [1, {points.shape[1]}], got {dim}")
    centered = points - points.mean(axis=0)
    _, _, vt = np.linalg.svd(centered, full_matrices=False)
    comps = vt[:dim]
    flips = np.sign(comps[np.arange(dim), np.abs(comps).argmax(axis=1)])
    flips[flips == 0.0] = 1.0
    return centered @ (comps * flips[:, None]).T
