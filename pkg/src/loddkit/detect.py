"""Boundary detection pipeline: KNN -> scores -> ascending sort -> split.

Deterministic by construction: the sort breaks score ties by ascending id,
so identical inputs give identical results regardless of worker count.
"""

from __future__ import annotations

import hashlib
import time
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .centrality import score_all
from .core import DetectionResult, LoddScores, Params, PointSet, split_count, validate
from .exceptions import InvalidParams
from .neighbors import NeighborIndex, build_index, knn_graph_components
from .ratio import RatioEstimate, estimate_ratio_components, estimate_ratio_known_c, intrinsic_dimension

__all__ = [
    "DetectionConfig",
    "DetectionOutcome",
    "detect",
    "detect_full",
    "scaling_benchmark",
    "BenchRow",
    "fitted_exponent",
]


@dataclass(frozen=True)
class DetectionConfig:
    """Bundle of detection parameters plus the (fixed) tie rule."""

    params: Params
    tie_rule: str = "by-id"


class DetectionOutcome(NamedTuple):
    """Everything the pipeline computed, for callers that need more than the split."""

    result: DetectionResult
    scores: LoddScores
    index: NeighborIndex
    estimate: RatioEstimate | None


def detect_full(point_set: PointSet, params: Params, *, workers: int = 1) -> DetectionOutcome:
    """Run the full pipeline and keep the intermediate products.

    The KNN index is built once and shared between the component-based
    ratio estimate and the scoring pass.
    """
    validate(point_set, params)
    n = point_set.n
    index = build_index(point_set, params.k, workers=workers)
    raw = score_all(point_set, index, params.omega)

    estimate: RatioEstimate | None = None
    if params.ratio is not None:
        effective = float(params.ratio)
    else:
        dim = intrinsic_dimension(point_set)
        if params.cluster_count is not None:
            estimate = estimate_ratio_known_c(n, params.cluster_count, dim)
        else:
            parts = knn_graph_components(index)
            estimate = estimate_ratio_components(parts.sizes, dim)
        effective = estimate.ratio

    order = np.lexsort((np.arange(n), raw.values))
    count = split_count(n, effective)
    mask = np.zeros(n, dtype=bool)
    mask[order[:count]] = True
    result = DetectionResult(
        boundary_mask=mask,
        order=order,
        effective_ratio=effective,
        boundary_count=count,
    )
    return DetectionOutcome(result, LoddScores(raw.values, params), index, estimate)


def detect(point_set: PointSet, params: Params, *, workers: int = 1) -> DetectionResult:
    """Split a point set into boundary and internal points.

    Scores every point, sorts ascending by (score, id), and marks the first
    floor(n * ratio) points as boundary. The ratio is either fixed by
    ``params.ratio`` or estimated adaptively (from the KNN-graph components,
    or from ``params.cluster_count`` when the cluster count is known).
    """
    return detect_full(point_set, params, workers=workers).result


@dataclass(frozen=True)
class BenchRow:
    """One measured size of the scaling benchmark."""

    n: int
    seconds: float
    boundary_count: int
    mask_sha256: str


def fitted_exponent(rows) -> float:
    """Least-squares slope of log(time) against log(n)."""
    ns = np.log([row.n for row in rows])
    ts = np.log([row.seconds for row in rows])
    return float(np.polyfit(ns, ts, 1)[0])


def scaling_benchmark(sizes, d: int, k: int, *, seed: int = 0, workers: int = 1) -> list[BenchRow]:
    """Wall-clock detect() on standard-normal data at each size.

    Sizes must be ascending. Each size draws a fresh Philox(seed) stream, so
    reruns are bit-identical (the mask checksum makes that checkable even
    though timings differ). A fixed ratio of 0.1 is used so the measured
    curve is the KNN + scoring + sort pipeline itself, without the adaptive
    estimator's extra passes.
    """
    sizes = [int(s) for s in sizes]
    if any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise InvalidParams(f"sizes must be strictly ascending, got {sizes}")
    params = Params(k=k, omega=0.5, ratio=0.1)
    rows = []
    for n in sizes:
        rng = np.random.Generator(np.random.Philox(seed))
        points = PointSet(rng.standard_normal((n, d)))
        start = time.perf_counter()
        result = detect(points, params, workers=workers)
        elapsed = time.perf_counter() - start
        digest = hashlib.sha256(np.packbits(result.boundary_mask).tobytes()).hexdigest()
        rows.append(
            BenchRow(
                n=n,
                seconds=elapsed,
                boundary_count=result.boundary_count,
                mask_sha256=digest[:16],
            )
        )
    return rows
