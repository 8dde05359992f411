"""Uniformity/fidelity metrics and the sampling-time benchmark grid."""

from __future__ import annotations

import csv
import gc
import io
import logging
import statistics
import time
from dataclasses import dataclass
from typing import Iterable

import numpy as np
from scipy.spatial import cKDTree

from .params import Kind, SamplingConfig, SuperquadricParams, inside_outside, validate
from .surface import SampledSurface, sample_surface

log = logging.getLogger(__name__)

BENCH_HEADER = ["kind", "eps1", "eps2", "D", "points", "median_ms", "reps"]
DESK_EPS = tuple(round(0.1 + 0.2 * i, 2) for i in range(10))
DESK_D = (0.01, 0.02, 0.05, 0.1, 0.2)
DESK_REPS = 31


class TooFewPoints(ValueError):
    pass


@dataclass
class MetricsReport:
    point_count: int
    nn_mean: float
    nn_cv: float
    nn_max_min_ratio: float
    implicit_residual_max: float | None = None

    def as_rows(self) -> list[tuple[str, str]]:
        rows = [
            ("point_count", str(self.point_count)),
            ("nn_mean", f"{self.nn_mean:.9g}"),
            ("nn_cv", f"{self.nn_cv:.9g}"),
            ("nn_max_min_ratio", f"{self.nn_max_min_ratio:.9g}"),
        ]
        if self.implicit_residual_max is not None:
            rows.append(("implicit_residual_max", f"{self.implicit_residual_max:.3e}"))
        return rows


def nn_distances(points) -> np.ndarray:
    """Distance from every point to its nearest other point."""
    p = np.asarray(points, dtype=float).reshape(-1, 3)
    if len(p) < 2:
        raise TooFewPoints(f"need at least 2 points, got {len(p)}")
    d, _ = cKDTree(p).query(p, k=2)
    return d[:, 1]


def nn_spacing_stats(points) -> MetricsReport:
    d = nn_distances(points)
    mean = float(d.mean())
    cv = float(d.std() / mean) if mean > 0 else 0.0
    dmin = float(d.min())
    ratio = float(d.max() / dmin) if dmin > 0 else float("inf")
    return MetricsReport(point_count=len(d), nn_mean=mean, nn_cv=cv, nn_max_min_ratio=ratio)


def surface_residual(surface: SampledSurface | np.ndarray, params: SuperquadricParams | None = None) -> float:
    """Largest ``|F - 1|`` over canonical-frame points."""
    if isinstance(surface, SampledSurface):
        params = params or surface.params
        points = surface.points
    else:
        points = surface
    points = np.asarray(points, dtype=float).reshape(-1, 3)
    if len(points) == 0:
        return 0.0
    return float(np.max(np.abs(inside_outside(points, params) - 1.0)))


def cloud_distance(A, B, symmetric: bool = False) -> float:
    """Mean over ``A`` of the distance to the nearest point of ``B``.

    With ``symmetric=True`` the two directed means are averaged.
    """
    a = np.asarray(A, dtype=float).reshape(-1, 3)
    b = np.asarray(B, dtype=float).reshape(-1, 3)
    if len(a) == 0 or len(b) == 0:
        raise TooFewPoints("both clouds must be non-empty")
    ab = float(cKDTree(b).query(a)[0].mean())
    if not symmetric:
        return ab
    return 0.5 * (ab + float(cKDTree(a).query(b)[0].mean()))


@dataclass
class BenchRecord:
    kind: Kind
    eps1: float
    eps2: float
    D: float
    point_count: int
    median_time_ms: float
    reps: int
    error: str | None = None

    def csv_row(self) -> list[str]:
        if self.error is not None:
            return [self.kind.value, f"{self.eps1:g}", f"{self.eps2:g}", f"{self.D:g}", "", "", str(self.reps)]
        return [
            self.kind.value,
            f"{self.eps1:g}",
            f"{self.eps2:g}",
            f"{self.D:g}",
            str(self.point_count),
            f"{self.median_time_ms:.6f}",
            str(self.reps),
        ]


def time_cell(params: SuperquadricParams, config: SamplingConfig, reps: int) -> tuple[int, float]:
    """Point count and median wall time (ms) of ``reps`` serial sampling runs."""
    times = []
    count = -1
    gc_was_enabled = gc.isenabled()
    gc.disable()
    try:
        for _ in range(reps):
            t0 = time.perf_counter()
            surface = sample_surface(params, config)
            times.append((time.perf_counter() - t0) * 1e3)
            count = len(surface)
    finally:
        if gc_was_enabled:
            gc.enable()
    return count, statistics.median(times)


def run_bench(
    kinds: Iterable[Kind | str] = (Kind.SUPERELLIPSOID, Kind.SUPERPARABOLOID),
    eps_values: Iterable[float] = DESK_EPS,
    D_values: Iterable[float] = DESK_D,
    reps: int = DESK_REPS,
    scales: tuple[float, float, float] = (1.0, 1.0, 1.0),
) -> list[BenchRecord]:
    """Time the sampler over a ``kind x eps x D`` grid with ``eps1 = eps2 = eps``.

    A failing cell is logged and recorded with its error; the grid continues.
    """
    if reps < 1:
        raise ValueError("reps must be >= 1")
    records = []
    D_values = list(D_values)
    for kind in kinds:
        kind = Kind(kind)
        for eps in eps_values:
            for D in D_values:
                try:
                    params = validate(SuperquadricParams(kind, *scales, eps1=eps, eps2=eps))
                    count, median = time_cell(params, SamplingConfig(D=D), reps)
                except Exception as exc:  # noqa: BLE001 - one bad cell must not abort the grid
                    log.warning("bench cell %s eps=%g D=%g failed: %s", kind.value, eps, D, exc)
                    records.append(BenchRecord(kind, eps, eps, D, 0, float("nan"), reps, error=str(exc)))
                    continue
                records.append(BenchRecord(kind, eps, eps, D, count, median, reps))
    return records


def full_paper_grid() -> tuple[list[float], list[float], int]:
    eps = [round(0.1 + 0.05 * i, 2) for i in range(39)]
    Ds = [round(0.005 + 0.001 * i, 3) for i in range(196)]
    return eps, Ds, 1000


def bench_csv(records: Iterable[BenchRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(BENCH_HEADER)
    for rec in records:
        writer.writerow(rec.csv_row())
    return buf.getvalue()
