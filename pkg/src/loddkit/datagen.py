"""Seeded synthetic generators for every test scenario.

All randomness flows through numpy's Philox generator — a counter-based
PRNG with a published algorithm — so a recorded seed reproduces fixtures
bit-exactly across runs and platforms, and a reimplementation in another
language can do the same. Seeds are mandatory: no generator draws entropy.

Shapes provided: rectangular lattices with exact perimeter truth, Gaussian
mixtures, a multi-cluster 2-D layout (ring around a core, a sparse cluster,
a weakly connected pair), and 3-D point clouds — a sphere with circular
holes and a flat surface patch with holes and an outer boundary — with rim
ground truth defined by a measurable convention: a band one mean
nearest-neighbor spacing wide along each hole edge.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np
from scipy.spatial import cKDTree

from .core import PointSet
from .exceptions import PlacementFailure

__all__ = [
    "GenSpec",
    "generate",
    "gen_grid",
    "gen_mixture",
    "gen_ring_blob",
    "gen_sphere_holes",
    "gen_surface_holes",
]

_GOLDEN_ANGLE = np.pi * (3.0 - np.sqrt(5.0))


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(int(seed)))


@dataclass(frozen=True)
class GenSpec:
    """Declarative request for one synthetic dataset.

    ``kind`` picks the generator; ``options`` carries its size parameters.
    The seed is mandatory even for deterministic kinds so specs stay
    uniform and replayable.
    """

    kind: str
    seed: int
    with_boundary_truth: bool = False
    options: dict[str, Any] = field(default_factory=dict)


def gen_grid(rows: int, cols: int, spacing: float = 1.0):
    """A rows x cols lattice of unit cells; truth marks the perimeter.

    The perimeter has exactly 2*(rows + cols - 2) points for any
    rows, cols >= 2.
    """
    if rows < 2 or cols < 2:
        raise ValueError(f"grid needs rows, cols >= 2, got {rows}x{cols}")
    r, c = np.divmod(np.arange(rows * cols), cols)
    points = np.column_stack([c * spacing, r * spacing]).astype(np.float64)
    truth = (r == 0) | (r == rows - 1) | (c == 0) | (c == cols - 1)
    return PointSet(points), truth


def gen_mixture(counts, centers, stds, seed: int):
    """Gaussian blobs with component labels attached.

    counts[i] points are drawn around centers[i] with isotropic standard
    deviation stds[i] (a scalar std applies to all components).
    """
    counts = [int(m) for m in counts]
    if any(m <= 0 for m in counts):
        raise ValueError(f"component counts must be positive, got {counts}")
    centers = np.atleast_2d(np.asarray(centers, dtype=np.float64))
    if centers.shape[0] != len(counts):
        raise ValueError("one center per component is required")
    stds = np.broadcast_to(np.asarray(stds, dtype=np.float64), (len(counts),))
    rng = _rng(seed)
    chunks, labels = [], []
    for i, m in enumerate(counts):
        chunks.append(centers[i] + stds[i] * rng.standard_normal((m, centers.shape[1])))
        labels.append(np.full(m, i, dtype=np.int64))
    return PointSet(np.vstack(chunks), labels=np.concatenate(labels)), None


def gen_ring_blob(seed: int, scale: float = 1.0):
    """A 2-D multi-cluster layout exercising shape and density variety.

    Components (labels in parentheses): a ring (0) surrounding a dense core
    blob (1), a sparse blob (2) of at least 4x lower density, and a weakly
    connected pair of blobs (3, 4) whose tails touch. Under a generous k
    the KNN graph sees the ring, the core, the sparse blob, and the pair as
    separate components (the pair itself may fuse into one).
    """
    rng = _rng(seed)
    parts, labels = [], []

    theta = rng.uniform(0.0, 2.0 * np.pi, 420)
    radius = 1.0 + 0.035 * rng.standard_normal(420)
    parts.append(np.column_stack([radius * np.cos(theta), radius * np.sin(theta)]))
    labels.append(np.full(420, 0))

    parts.append(0.11 * rng.standard_normal((160, 2)))
    labels.append(np.full(160, 1))

    # sparse blob: ~35x lower density than the core
    parts.append(np.array([3.4, 0.6]) + 0.5 * rng.standard_normal((70, 2)))
    labels.append(np.full(70, 2))

    pair_base = np.array([0.6, -3.2])
    for j, offset in enumerate((np.array([-0.52, 0.0]), np.array([0.52, 0.0]))):
        parts.append(pair_base + offset + 0.24 * rng.standard_normal((150, 2)))
        labels.append(np.full(150, 3 + j))

    points = np.vstack(parts) * scale
    return PointSet(points, labels=np.concatenate(labels).astype(np.int64)), None


def _fibonacci_sphere(n: int) -> np.ndarray:
    """Near-uniform deterministic lattice on the unit sphere."""
    i = np.arange(n, dtype=np.float64)
    z = 1.0 - (2.0 * i + 1.0) / n
    r = np.sqrt(np.maximum(0.0, 1.0 - z * z))
    theta = _GOLDEN_ANGLE * i
    return np.column_stack([r * np.cos(theta), r * np.sin(theta), z])


def _mean_nn_spacing(points: np.ndarray) -> float:
    """Mean distance to the nearest neighbor (chord length)."""
    dist, _ = cKDTree(points).query(points, k=2, workers=1)
    return float(dist[:, 1].mean())


def _place_centers(
    rng: np.random.Generator, count: int, min_angle: float, tries: int = 200
) -> np.ndarray:
    """Unit vectors pairwise separated by at least min_angle radians."""
    centers: list[np.ndarray] = []
    for _ in range(count):
        for _ in range(tries):
            v = rng.standard_normal(3)
            v /= np.linalg.norm(v)
            if all(np.arccos(np.clip(v @ c, -1.0, 1.0)) > min_angle for c in centers):
                centers.append(v)
                break
        else:
            raise PlacementFailure(
                f"could not place {count} holes {min_angle:.3f} rad apart "
                f"within {tries} tries"
            )
    return np.array(centers) if centers else np.empty((0, 3))


def gen_sphere_holes(n: int, hole_count: int, hole_radius: float, seed: int):
    """Unit-sphere point cloud with circular holes cut out.

    Points come from a Fibonacci lattice (deterministic, near-uniform);
    hole centers are random directions kept far enough apart that holes and
    their rim bands cannot overlap. Truth marks the rim: surviving points
    within one mean nearest-neighbor angular spacing of a hole edge.
    A closed sphere (hole_count=0) has no rim and no truth.
    """
    if n < 100:
        raise ValueError(f"need n >= 100 for a usable sphere, got n={n}")
    if hole_count < 0 or hole_radius <= 0.0:
        raise ValueError("hole_count must be >= 0 and hole_radius positive")
    points = _fibonacci_sphere(n)
    band = 2.0 * np.arcsin(min(1.0, _mean_nn_spacing(points) / 2.0))

    rng = _rng(seed)
    centers = _place_centers(rng, hole_count, 2.0 * (hole_radius + band))
    if hole_count == 0:
        return PointSet(points), np.zeros(n, dtype=bool)

    angles = np.arccos(np.clip(points @ centers.T, -1.0, 1.0))
    nearest = angles.min(axis=1)
    keep = nearest > hole_radius
    truth = keep & (nearest <= hole_radius + band)
    return PointSet(points[keep]), truth[keep]


def gen_surface_holes(n: int, hole_count: int, hole_radius: float, seed: int):
    """Flat unit-square patch in 3-D with discs removed.

    The outer square edge is a genuine boundary, so truth marks both the
    hole rims and the outer edge band (one mean nearest-neighbor spacing
    wide).
    """
    if n < 100:
        raise ValueError(f"need n >= 100 for a usable surface, got n={n}")
    if hole_count < 0 or hole_radius <= 0.0:
        raise ValueError("hole_count must be >= 0 and hole_radius positive")
    rng = _rng(seed)
    xy = rng.random((n, 2))
    band = _mean_nn_spacing(xy)

    margin = hole_radius + 2.0 * band
    if hole_count and margin >= 0.5:
        raise PlacementFailure(
            f"hole radius {hole_radius} leaves no room inside the unit square"
        )
    centers: list[np.ndarray] = []
    for _ in range(hole_count):
        for _ in range(200):
            cand = margin + (1.0 - 2.0 * margin) * rng.random(2)
            if all(
                np.linalg.norm(cand - c) > 2.0 * (hole_radius + band) for c in centers
            ):
                centers.append(cand)
                break
        else:
            raise PlacementFailure(
                f"could not place {hole_count} discs of radius {hole_radius}"
            )

    if centers:
        dist = np.sqrt(((xy[:, None, :] - np.array(centers)) ** 2).sum(axis=2))
        nearest = dist.min(axis=1)
        keep = nearest > hole_radius
        rim = keep & (nearest <= hole_radius + band)
    else:
        keep = np.ones(n, dtype=bool)
        rim = np.zeros(n, dtype=bool)
    edge = (
        (xy[:, 0] <= band)
        | (xy[:, 0] >= 1.0 - band)
        | (xy[:, 1] <= band)
        | (xy[:, 1] >= 1.0 - band)
    )
    truth = (rim | edge) & keep
    points = np.column_stack([xy, np.zeros(n)])
    return PointSet(points[keep]), truth[keep]


_KINDS = {
    "grid": lambda spec: gen_grid(
        spec.options["rows"], spec.options["cols"], spec.options.get("spacing", 1.0)
    ),
    "gaussian-mixture": lambda spec: gen_mixture(
        spec.options["counts"],
        spec.options["centers"],
        spec.options.get("stds", 1.0),
        spec.seed,
    ),
    "ring-blob": lambda spec: gen_ring_blob(spec.seed, spec.options.get("scale", 1.0)),
    "sphere-holes": lambda spec: gen_sphere_holes(
        spec.options["n"],
        spec.options.get("holes", 3),
        spec.options.get("hole_radius", 0.35),
        spec.seed,
    ),
    "surface-holes": lambda spec: gen_surface_holes(
        spec.options["n"],
        spec.options.get("holes", 3),
        spec.options.get("hole_radius", 0.12),
        spec.seed,
    ),
}


def generate(spec: GenSpec):
    """Dispatch a GenSpec to its generator; returns (PointSet, truth or None)."""
    if spec.kind not in _KINDS:
        raise ValueError(f"unknown kind {spec.kind!r}; choose from {sorted(_KINDS)}")
    points, truth = _KINDS[spec.kind](spec)
    if not spec.with_boundary_truth:
        truth = None
    return points, truth
