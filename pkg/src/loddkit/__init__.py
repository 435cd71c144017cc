"""Boundary-point detection for point clouds.

Points are scored by the directional spread of their K nearest neighbors
after projection onto the unit sphere: interior points see neighbors all
around and score high, boundary points see them on one side and score
low. On top of the score the package offers an adaptive boundary-ratio
estimator, boundary-peeled K-means clustering, hole detection on sampled
surfaces, synthetic dataset generators, and a batch CLI (``loddkit``).

The functional core lives in the submodules; ``BoundaryDetector`` and
``BoundaryPeeledKMeans`` wrap it in the scikit-learn fit/predict style.
"""

from .centrality import (
    NeighborhoodCovariance,
    UnitNeighborhood,
    covariance,
    dcm_2d,
    lodd_from_eigenvalues,
    lodd_from_traces,
    project_to_unit_sphere,
    score_all,
)
from .cluster import (
    ClusterAssignment,
    DensityPeakScores,
    density_peak_seeds,
    kmeans,
    peel_cluster,
)
from .core import (
    DetectionResult,
    LoddScores,
    Params,
    PointSet,
    split_count,
    validate,
)
from .datagen import (
    GenSpec,
    gen_grid,
    gen_mixture,
    gen_ring_blob,
    gen_sphere_holes,
    gen_surface_holes,
    generate,
)
from .detect import (
    BenchRow,
    DetectionOutcome,
    detect,
    detect_full,
    fitted_exponent,
    scaling_benchmark,
)
from .estimators import BoundaryDetector, BoundaryPeeledKMeans
from .exceptions import (
    AllBoundary,
    AllCoincident,
    CTooLarge,
    ConstraintViolated,
    DegenerateData,
    DimensionTooSmall,
    EmptySet,
    InvalidParams,
    IoError,
    KTooLarge,
    LengthMismatch,
    LoddkitError,
    NonFinite,
    NonNumeric,
    OmegaOutOfRange,
    ParseError,
    PlacementFailure,
    RaggedRows,
    TooFewDirections,
    WrongDimension,
)
from .io import (
    TableSchema,
    minmax_normalize,
    pca_project,
    read_labels,
    read_points,
    read_result,
    write_labels,
    write_points,
    write_result,
)
from .metrics import LabelPair, acc, nmi
from .neighbors import (
    ComponentPartition,
    NeighborIndex,
    build_index,
    knn_graph_components,
)
from .ratio import (
    RatioEstimate,
    boundary_count_bounds,
    estimate_ratio_components,
    estimate_ratio_known_c,
    intrinsic_dimension,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # core containers and validation
    "PointSet",
    "Params",
    "LoddScores",
    "DetectionResult",
    "split_count",
    "validate",
    # neighbor machinery
    "NeighborIndex",
    "ComponentPartition",
    "build_index",
    "knn_graph_components",
    # centrality scores
    "UnitNeighborhood",
    "NeighborhoodCovariance",
    "project_to_unit_sphere",
    "covariance",
    "lodd_from_eigenvalues",
    "lodd_from_traces",
    "score_all",
    "dcm_2d",
    # boundary-ratio estimation
    "RatioEstimate",
    "intrinsic_dimension",
    "boundary_count_bounds",
    "estimate_ratio_components",
    "estimate_ratio_known_c",
    # detection pipeline
    "DetectionOutcome",
    "detect",
    "detect_full",
    "BenchRow",
    "fitted_exponent",
    "scaling_benchmark",
    # clustering
    "DensityPeakScores",
    "ClusterAssignment",
    "density_peak_seeds",
    "kmeans",
    "peel_cluster",
    # evaluation
    "LabelPair",
    "acc",
    "nmi",
    # synthetic data
    "GenSpec",
    "generate",
    "gen_grid",
    "gen_mixture",
    "gen_ring_blob",
    "gen_sphere_holes",
    "gen_surface_holes",
    # tables and results
    "TableSchema",
    "read_points",
    "write_points",
    "write_result",
    "read_result",
    "write_labels",
    "read_labels",
    "minmax_normalize",
    "pca_project",
    # estimator front end
    "BoundaryDetector",
    "BoundaryPeeledKMeans",
    # errors
    "LoddkitError",
    "NonFinite",
    "EmptySet",
    "KTooLarge",
    "OmegaOutOfRange",
    "InvalidParams",
    "AllCoincident",
    "TooFewDirections",
    "DimensionTooSmall",
    "WrongDimension",
    "DegenerateData",
    "ConstraintViolated",
    "CTooLarge",
    "AllBoundary",
    "LengthMismatch",
    "ParseError",
    "RaggedRows",
    "NonNumeric",
    "IoError",
    "PlacementFailure",
]
