"""``sqsample`` command line: sample, metrics, bench."""

from __future__ import annotations

import argparse
import logging
import math
import sys
import time
from pathlib import Path

from . import generate
from .deform import invert_pipeline
from .io import DEFAULT_DIGITS, ExportFormat, format_cloud, read_cloud
from .metrics import (
    DESK_D,
    DESK_EPS,
    DESK_REPS,
    TooFewPoints,
    bench_csv,
    cloud_distance,
    full_paper_grid,
    nn_spacing_stats,
    run_bench,
    surface_residual,
)
from .params import InvalidParams, Kind, SamplingConfig, SuperquadricParams, check
from .sampler2d import SamplingError

EXIT_OK, EXIT_INPUT, EXIT_IO = 0, 2, 3

log = logging.getLogger("sqsample")


class InputError(Exception):
    pass


def _floats(n: int | None = None):
    def parse(text: str) -> tuple[float, ...]:
        try:
            values = tuple(float(v) for v in text.split(","))
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")
        if n is not None and len(values) != n:
            raise argparse.ArgumentTypeError(f"expected {n} values, got {len(values)}")
        return values

    return parse


def _grid(text: str) -> tuple[int, int]:
    try:
        n, m = (int(v) for v in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected NxM, got {text!r}")
    return n, m


def _add_shape_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", type=Path, help="key=value file; keys are long flag names")
    p.add_argument("--kind", choices=[k.value for k in Kind])
    p.add_argument("--a", type=_floats(3), metavar="A1,A2,A3")
    p.add_argument("--eps", type=_floats(2), metavar="E1,E2")
    p.add_argument("--euler", type=_floats(3), metavar="THETA,PHI,PSI")
    p.add_argument("--pos", type=_floats(3), metavar="X,Y,Z")
    p.add_argument("--taper", type=_floats(2), metavar="KX,KY")
    p.add_argument("--bend", type=float, metavar="K")
    p.add_argument("--degrees", action="store_true", help="--euler is in degrees")


SHAPE_DEFAULTS = {
    "kind": "se",
    "a": (1.0, 1.0, 1.0),
    "eps": (1.0, 1.0),
    "euler": (0.0, 0.0, 0.0),
    "pos": (0.0, 0.0, 0.0),
    "taper": (0.0, 0.0),
    "bend": None,
    "degrees": False,
}

_CONFIG_PARSERS = {
    "kind": str,
    "a": _floats(3),
    "eps": _floats(2),
    "euler": _floats(3),
    "pos": _floats(3),
    "taper": _floats(2),
    "bend": lambda v: None if v.lower() == "none" else float(v),
    "degrees": lambda v: v.lower() in ("1", "true", "yes"),
    "d": float,
    "naive": _grid,
    "format": str,
}


def read_config(path: Path) -> dict:
    """Parse a ``key=value`` file whose keys mirror the long flag names."""
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"cannot read config {path}: {exc}")
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip().lstrip("-").replace("-", "_")
        if not sep or key not in _CONFIG_PARSERS:
            raise InputError(f"{path}:{lineno}: unrecognised line {raw!r}")
        try:
            values[key] = _CONFIG_PARSERS[key](value.strip())
        except (ValueError, argparse.ArgumentTypeError) as exc:
            raise InputError(f"{path}:{lineno}: {exc}")
    return values


def _merged(args, defaults: dict, config_path: Path | None) -> dict:
    merged = dict(defaults)
    if config_path is not None:
        merged.update(read_config(config_path))
    for key in defaults:
        value = getattr(args, key, None)
        if value is not None and value is not False:
            merged[key] = value
    return merged


def params_from(opts: dict) -> SuperquadricParams:
    euler = opts["euler"]
    if opts["degrees"]:
        euler = tuple(math.radians(v) for v in euler)
    a1, a2, a3 = opts["a"]
    e1, e2 = opts["eps"]
    kx, ky = opts["taper"]
    return SuperquadricParams(
        kind=Kind(opts["kind"]), a1=a1, a2=a2, a3=a3, eps1=e1, eps2=e2,
        euler_zyz=euler, position=opts["pos"], Kx=kx, Ky=ky, bend_k=opts["bend"],
    )


def _report_invalid(errors) -> int:
    for err in errors:
        print(f"error: {err}", file=sys.stderr)
    return EXIT_INPUT


def cmd_sample(args) -> int:
    defaults = {**SHAPE_DEFAULTS, "d": 0.05, "naive": None, "format": None}
    opts = _merged(args, defaults, args.config)
    params = params_from(opts)
    errors = check(params)
    if errors:
        return _report_invalid(errors)
    fmt = opts["format"]
    if fmt is None:
        fmt = ExportFormat.from_path(args.output).value if args.output and Path(args.output).suffix else "ply"
    try:
        fmt = ExportFormat(fmt)
        if not 1 <= args.digits <= 17:
            raise ValueError(f"--digits must be in [1, 17], got {args.digits}")
        config = SamplingConfig(D=opts["d"], theta_singular=args.theta_singular,
                                max_samples_per_curve=args.max_samples)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT

    t0 = time.perf_counter()
    try:
        surface = generate(params, config, naive=opts["naive"])
    except (InvalidParams, SamplingError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    elapsed = (time.perf_counter() - t0) * 1e3

    text = format_cloud(surface.points, surface.normals, fmt, args.digits)
    try:
        if args.output in (None, "-"):
            sys.stdout.write(text)
        else:
            with open(args.output, "w", newline="\n") as fh:
                fh.write(text)
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"{len(surface)} points in {elapsed:.3f} ms", file=sys.stderr)
    return EXIT_OK


def _load(path: Path):
    try:
        points, _ = read_cloud(path)
    except (OSError, ValueError, KeyError) as exc:
        raise InputError(f"cannot read {path}: {exc}")
    if len(points) == 0:
        raise InputError(f"{path} contains no points")
    return points


def cmd_metrics(args) -> int:
    try:
        clouds = [_load(p) for p in args.clouds]
        params = None
        if args.params is not None:
            params = params_from({**SHAPE_DEFAULTS, **read_config(args.params)})
            errors = check(params)
            if errors:
                return _report_invalid(errors)
        rows = []
        for path, points in zip(args.clouds, clouds):
            report = nn_spacing_stats(points)
            if params is not None:
                report.implicit_residual_max = surface_residual(invert_pipeline(points, params), params)
            rows.append((str(path), report))
    except (InputError, TooFewPoints) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT

    distance = None
    if len(clouds) == 2:
        distance = (cloud_distance(clouds[0], clouds[1]), cloud_distance(clouds[0], clouds[1], symmetric=True))

    if args.csv:
        keys = [k for k, _ in rows[0][1].as_rows()]
        print(",".join(["file", *keys]))
        for path, report in rows:
            print(",".join([path, *(v for _, v in report.as_rows())]))
        if distance is not None:
            print(f"cloud_distance,{distance[0]:.9g}")
            print(f"cloud_distance_symmetric,{distance[1]:.9g}")
    else:
        for path, report in rows:
            print(path)
            for key, value in report.as_rows():
                print(f"  {key:<24}{value}")
        if distance is not None:
            print(f"{'cloud_distance':<26}{distance[0]:.9g}")
            print(f"{'cloud_distance_symmetric':<26}{distance[1]:.9g}")
    return EXIT_OK


def cmd_bench(args) -> int:
    if args.full_paper_grid:
        eps_values, D_values, reps = full_paper_grid()
    else:
        eps_values = args.eps or DESK_EPS
        D_values = args.d or DESK_D
        reps = DESK_REPS
    if args.reps is not None:
        reps = args.reps
    kinds = [Kind(k) for k in args.kinds.split(",")]
    records = run_bench(kinds, eps_values, D_values, reps)
    text = bench_csv(records)
    try:
        if args.output in (None, "-"):
            sys.stdout.write(text)
        else:
            with open(args.output, "w", newline="\n") as fh:
                fh.write(text)
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sqsample", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("sample", help="sample a superquadric and export the cloud")
    _add_shape_flags(sp)
    sp.add_argument("--d", type=float, help="target spacing D (default 0.05)")
    sp.add_argument("--naive", type=_grid, metavar="NxM", help="use a uniform NxM parameter grid instead")
    sp.add_argument("--format", choices=[f.value for f in ExportFormat])
    sp.add_argument("--theta-singular", type=float, default=0.01)
    sp.add_argument("--max-samples", type=int, default=100_000, help="per-curve sample cap")
    sp.add_argument("--digits", type=int, default=DEFAULT_DIGITS,
                    help="significant digits per coordinate (default 9, 17 is lossless)")
    sp.add_argument("-o", "--output", help="output file (default stdout)")
    sp.set_defaults(func=cmd_sample)

    mp = sub.add_parser("metrics", help="spacing statistics, residuals and cloud distance")
    mp.add_argument("clouds", nargs="+", type=Path, help="one or two point-cloud files (ply/obj/csv)")
    mp.add_argument("--params", type=Path, help="key=value parameter file for the residual check")
    mp.add_argument("--csv", action="store_true", help="CSV instead of aligned text")
    mp.set_defaults(func=cmd_metrics)

    bp = sub.add_parser("bench", help="median sampling time over an eps x D grid")
    bp.add_argument("--kinds", default="se,sp")
    bp.add_argument("--eps", type=_floats(), help="comma-separated eps values (eps1 = eps2)")
    bp.add_argument("--d", type=_floats(), help="comma-separated D values")
    bp.add_argument("--reps", type=int)
    bp.add_argument("--full-paper-grid", action="store_true",
                    help="eps 0.1..2 step 0.05, D 0.005..0.2 step 0.001, 1000 reps")
    bp.add_argument("-o", "--output", help="CSV file (default stdout)")
    bp.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "metrics" and len(args.clouds) > 2:
        parser.error("metrics takes one or two clouds")
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
