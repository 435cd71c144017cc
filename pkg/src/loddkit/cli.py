"""Batch command-line interface.

Subcommands::

    loddkit detect   score a point table and split off the boundary
    loddkit ratio    report the estimated boundary ratio for a table
    loddkit cluster  boundary-peeled seeded K-means
    loddkit eval     ACC / NMI between two label files
    loddkit gen      write a synthetic dataset (seeded, reproducible)
    loddkit bench    single-thread scaling benchmark

Bad flag values exit with status 2 (argparse's convention) naming the
flag; runtime failures (unreadable files, degenerate data, parameter
conflicts) print one ``error:`` line to stderr and exit with status 1.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import io as lio
from .cluster import peel_cluster
from .core import Params, PointSet
from .datagen import GenSpec, generate
from .detect import detect_full, fitted_exponent, scaling_benchmark
from .exceptions import LoddkitError
from .metrics import acc, nmi
from .neighbors import build_index, knn_graph_components
from .ratio import (
    estimate_ratio_components,
    estimate_ratio_known_c,
    intrinsic_dimension,
)

__all__ = ["main", "build_parser"]


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _ratio_arg(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a number") from None
    if not 0.0 < value <= 1.0:
        raise argparse.ArgumentTypeError(f"must be in (0, 1], got {value}")
    return value


def _omega_arg(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a number") from None
    if not 0.0 < value < 1.0:
        raise argparse.ArgumentTypeError(f"must be in (0, 1), got {value}")
    return value


def _int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"{text!r} is not a comma-separated integer list"
        ) from None


def _float_list(text: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"{text!r} is not a comma-separated number list"
        ) from None


def _center_list(text: str) -> list[list[float]]:
    try:
        return [
            [float(v) for v in group.split(",")]
            for group in text.split(";")
            if group.strip()
        ]
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"{text!r} is not a semicolon-separated list of coordinate tuples"
        ) from None


def _load_points(args) -> PointSet:
    point_set = lio.read_points(args.input)
    points = point_set.points
    if getattr(args, "normalize", False):
        points = lio.minmax_normalize(points)
    pca_dim = getattr(args, "pca", None)
    if pca_dim is not None:
        points = lio.pca_project(points, pca_dim)
    if points is not point_set.points:
        point_set = PointSet(points, labels=point_set.labels)
    return point_set


def _detect_params(args) -> Params:
    return Params(
        k=args.k,
        omega=args.omega,
        ratio=args.ratio,
        adaptive=args.ratio is None,
        cluster_count=getattr(args, "clusters", None),
    )


def _cmd_detect(args) -> int:
    point_set = _load_points(args)
    outcome = detect_full(point_set, _detect_params(args), workers=args.threads)
    result = outcome.result
    if args.output:
        lio.write_result(args.output, result, outcome.scores)
    print(
        f"n={point_set.n} d={point_set.d} "
        f"ratio={result.effective_ratio:.17g} boundary={result.boundary_count}"
    )
    return 0


def _cmd_ratio(args) -> int:
    point_set = _load_points(args)
    dim = intrinsic_dimension(point_set)
    if args.clusters is not None:
        estimate = estimate_ratio_known_c(point_set.n, args.clusters, dim)
    else:
        partition = knn_graph_components(
            build_index(point_set, args.k, workers=args.threads)
        )
        estimate = estimate_ratio_components(partition.sizes, dim)
    sizes = ",".join(str(int(s)) for s in estimate.components)
    print(
        f"D={estimate.intrinsic_dim} components={sizes} "
        f"B={estimate.boundary_count:.17g} ratio={estimate.ratio:.17g}"
    )
    return 0


def _cmd_cluster(args) -> int:
    point_set = _load_points(args)
    params = Params(
        k=args.k,
        omega=args.omega,
        ratio=args.ratio,
        adaptive=args.ratio is None,
        cluster_count=args.clusters,
    )
    assignment, detection = peel_cluster(
        point_set, params, args.clusters, workers=args.threads, return_detection=True
    )
    if args.output:
        lio.write_labels(args.output, assignment.label_of)
    print(
        f"n={point_set.n} clusters={args.clusters} "
        f"boundary={detection.boundary_count}"
    )
    if args.truth:
        truth = lio.read_labels(args.truth)
        print(
            f"ACC={acc(truth, assignment.label_of):.4f} "
            f"NMI={nmi(truth, assignment.label_of):.4f}"
        )
    return 0


def _cmd_eval(args) -> int:
    truth = lio.read_labels(args.truth)
    predicted = lio.read_labels(args.predicted)
    print(f"ACC={acc(truth, predicted):.4f} NMI={nmi(truth, predicted):.4f}")
    return 0


def _cmd_gen(args) -> int:
    options = {}
    if args.kind == "grid":
        options = {"rows": args.rows, "cols": args.cols, "spacing": args.spacing}
    elif args.kind == "gaussian-mixture":
        if args.counts is None or args.centers is None:
            raise LoddkitError("gaussian-mixture needs --counts and --centers")
        stds = args.stds if args.stds is not None else [1.0]
        options = {
            "counts": args.counts,
            "centers": args.centers,
            "stds": stds if len(stds) > 1 else stds[0],
        }
    elif args.kind == "ring-blob":
        options = {"scale": args.scale}
    else:  # sphere-holes / surface-holes
        options = {
            "n": args.n,
            "holes": args.holes,
            "hole_radius": args.hole_radius,
        }
    spec = GenSpec(
        kind=args.kind, seed=args.seed, with_boundary_truth=True, options=options
    )
    point_set, truth = generate(spec)
    lio.write_points(args.output, point_set)
    if args.truth_output:
        if truth is not None:
            lio.write_labels(args.truth_output, truth.astype(np.int64))
        elif point_set.labels is not None:
            lio.write_labels(args.truth_output, point_set.labels)
        else:
            raise LoddkitError(f"kind {args.kind!r} has no truth to write")
    print(f"n={point_set.n} d={point_set.d}")
    return 0


def _cmd_bench(args) -> int:
    rows = scaling_benchmark(
        args.sizes, args.d, args.k, seed=args.seed, workers=args.threads
    )
    for row in rows:
        print(
            f"n={row.n} seconds={row.seconds:.3f} "
            f"boundary={row.boundary_count} sha={row.mask_sha256}"
        )
    print(f"exponent={fitted_exponent(rows):.3f}")
    return 0


def _add_table_flags(sub) -> None:
    sub.add_argument("input", help="point table (.csv or whitespace .xyz)")
    sub.add_argument("--normalize", action="store_true", help="min-max scale columns")
    sub.add_argument("--pca", type=_positive_int, metavar="D", help="project to D dims")
    sub.add_argument("--threads", type=int, default=-1, help="worker threads (-1 = all)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="loddkit", description=__doc__.split("\n")[0])
    commands = parser.add_subparsers(dest="command", required=True)

    det = commands.add_parser("detect", help="score points and flag the boundary")
    _add_table_flags(det)
    det.add_argument("--k", type=_positive_int, required=True, help="neighbors per point")
    det.add_argument("--omega", type=_omega_arg, default=0.5, help="score weight in (0,1)")
    det.add_argument("--ratio", type=_ratio_arg, help="fixed boundary fraction (0,1]")
    det.add_argument("--clusters", type=_positive_int, help="known cluster count")
    det.add_argument("--output", help="write id,score,boundary (.csv or .json)")
    det.set_defaults(run=_cmd_detect)

    rat = commands.add_parser("ratio", help="estimate the boundary fraction")
    _add_table_flags(rat)
    rat.add_argument("--k", type=_positive_int, default=20, help="neighbors for the graph")
    rat.add_argument("--clusters", type=_positive_int, help="known cluster count")
    rat.set_defaults(run=_cmd_ratio)

    clu = commands.add_parser("cluster", help="boundary-peeled K-means")
    _add_table_flags(clu)
    clu.add_argument("--clusters", type=_positive_int, required=True)
    clu.add_argument("--k", type=_positive_int, required=True)
    clu.add_argument("--omega", type=_omega_arg, default=0.5)
    clu.add_argument("--ratio", type=_ratio_arg, help="fixed boundary fraction (0,1]")
    clu.add_argument("--truth", help="label file to score against")
    clu.add_argument("--output", help="write id,label csv")
    clu.set_defaults(run=_cmd_cluster)

    ev = commands.add_parser("eval", help="ACC / NMI between two label files")
    ev.add_argument("--truth", required=True)
    ev.add_argument("--predicted", required=True)
    ev.set_defaults(run=_cmd_eval)

    gen = commands.add_parser("gen", help="write a synthetic dataset")
    gen.add_argument(
        "--kind",
        required=True,
        choices=["grid", "gaussian-mixture", "ring-blob", "sphere-holes", "surface-holes"],
    )
    gen.add_argument("--seed", type=int, required=True)
    gen.add_argument("--output", required=True, help="coordinate file to write")
    gen.add_argument("--truth-output", help="labels / boundary-truth csv to write")
    gen.add_argument("--rows", type=_positive_int, default=20)
    gen.add_argument("--cols", type=_positive_int, default=20)
    gen.add_argument("--spacing", type=float, default=1.0)
    gen.add_argument("--counts", type=_int_list, help="e.g. 200,200")
    gen.add_argument("--centers", type=_center_list, help="e.g. '0,0;6,0'")
    gen.add_argument("--stds", type=_float_list, help="e.g. 1.0,1.0")
    gen.add_argument("--scale", type=float, default=1.0)
    gen.add_argument("--n", type=_positive_int, default=5000)
    gen.add_argument("--holes", type=int, default=3)
    gen.add_argument("--hole-radius", type=float, default=0.35)
    gen.set_defaults(run=_cmd_gen)

    ben = commands.add_parser("bench", help="single-thread scaling benchmark")
    ben.add_argument("--sizes", type=_int_list, default=[10_000, 20_000, 50_000, 100_000])
    ben.add_argument("--d", type=_positive_int, default=10)
    ben.add_argument("--k", type=_positive_int, default=20)
    ben.add_argument("--seed", type=int, default=0)
    ben.add_argument("--threads", type=int, default=1, help="default single-thread")
    ben.set_defaults(run=_cmd_bench)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except (LoddkitError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
