"""Superellipsoid and superparaboloid point sets from the 2D samplers."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .params import Kind, SamplingConfig, SuperquadricParams, signed_pow
from .sampler2d import sample_superellipse_angles, sample_superparabola_params

HALF_PI = math.pi / 2
QUARTER_PI = math.pi / 4
DEDUP_TOL = 1e-9

# (sx, sy, sz) in emission order
OCTANTS = [(sx, sy, sz) for sx in (1, -1) for sy in (1, -1) for sz in (1, -1)]
QUADRANTS = [(sx, sy) for sx in (1, -1) for sy in (1, -1)]


@dataclass
class SampledSurface:
    """Points with the parameter pair that produced each one.

    ``param_coords`` holds signed ``(eta, omega)`` for superellipsoids and
    ``(u, omega)`` for superparaboloids, with ``omega`` in ``[-pi, pi]``.
    ``normals`` stays ``None`` until the normals module fills it in.
    """

    points: np.ndarray
    param_coords: np.ndarray
    params: SuperquadricParams
    normals: np.ndarray | None = None

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=float).reshape(-1, 3)
        self.param_coords = np.asarray(self.param_coords, dtype=float).reshape(-1, 2)
        if len(self.points) != len(self.param_coords):
            raise ValueError("points and param_coords differ in length")
        if self.normals is not None:
            self.normals = np.asarray(self.normals, dtype=float).reshape(-1, 3)
            if len(self.normals) != len(self.points):
                raise ValueError("normals and points differ in length")

    def __len__(self) -> int:
        return len(self.points)

    def with_(self, **changes) -> "SampledSurface":
        return replace(self, **changes)


def cos_sin(angle):
    """cos and sin that are exactly 0 or +-1 at multiples of pi/2.

    Signed powers with small exponents turn the 6e-17 residue of
    ``np.cos(pi/2)`` into visible offsets, so angles are folded into
    [0, pi/2] and evaluated from the nearer end.
    """
    angle = np.asarray(angle, dtype=float)
    mag = np.abs(angle)
    flip = mag > HALF_PI
    r = np.where(flip, math.pi - mag, mag)
    upper = r > QUARTER_PI
    rest = HALF_PI - r
    c = np.where(upper, np.sin(rest), np.cos(r))
    s = np.where(upper, np.cos(rest), np.sin(r))
    return np.where(flip, -c, c), np.copysign(s, angle)


def se_point(eta, omega, params: SuperquadricParams):
    ce, se = cos_sin(eta)
    co, so = cos_sin(omega)
    ce1 = signed_pow(ce, params.eps1)
    return np.stack(
        [
            params.a1 * ce1 * signed_pow(co, params.eps2),
            params.a2 * ce1 * signed_pow(so, params.eps2),
            params.a3 * signed_pow(se, params.eps1),
        ],
        axis=-1,
    )


def sp_point(u, omega, params: SuperquadricParams):
    u = np.asarray(u, dtype=float)
    co, so = cos_sin(omega)
    return np.stack(
        [
            params.a1 * u * signed_pow(co, params.eps2),
            params.a2 * u * signed_pow(so, params.eps2),
            params.a3 * (u ** (2.0 / params.eps1) - 1.0) * np.ones_like(co),
        ],
        axis=-1,
    )


def surface_point(p, omega, params: SuperquadricParams):
    if params.kind is Kind.SUPERELLIPSOID:
        return se_point(p, omega, params)
    return sp_point(p, omega, params)


def _mirror_omega(omega, sx, sy):
    if sx > 0:
        return omega if sy > 0 else -omega
    return math.pi - omega if sy > 0 else omega - math.pi


def _mirror(base, coords_of, signs_list, row_of):
    """Mirror first-octant/quadrant points, emitting seam points once.

    A mirrored copy is skipped when every flipped coordinate is within half
    the dedup tolerance of 0 (it would land within DEDUP_TOL of the
    original). Points on the symmetry axis, where a whole row of the grid
    collapses onto one point, keep only their first occurrence per row.
    """
    half = DEDUP_TOL / 2
    near_zero = np.abs(base) <= half
    on_axis = near_zero[:, 0] & near_zero[:, 1]
    first_in_row = np.ones(len(base), dtype=bool)
    if on_axis.any():
        rows = row_of[on_axis]
        _, first = np.unique(rows, return_index=True)
        collapsed = np.zeros(on_axis.sum(), dtype=bool)
        collapsed[first] = True
        first_in_row[on_axis] = collapsed
    points, coords = [], []
    for signs in signs_list:
        keep = first_in_row.copy()
        for axis, sign in enumerate(signs):
            if sign < 0:
                keep &= ~near_zero[:, axis]
        flip = np.ones(3)
        flip[: len(signs)] = signs
        points.append(base[keep] * flip)
        coords.append(coords_of(signs)[keep])
    return np.concatenate(points), np.concatenate(coords)


def _assemble_se(etas, omegas, params: SuperquadricParams, mirror: bool = True) -> SampledSurface:
    eta_g, om_g = np.meshgrid(etas, omegas, indexing="ij")
    eta_g, om_g = eta_g.ravel(), om_g.ravel()
    base = se_point(eta_g, om_g, params)
    if not mirror:
        return SampledSurface(base, np.stack([eta_g, om_g], axis=-1), params)

    def coords_of(signs):
        sx, sy, sz = signs
        return np.stack([sz * eta_g, _mirror_omega(om_g, sx, sy)], axis=-1)

    rows = np.repeat(np.arange(len(etas)), len(omegas))
    points, coords = _mirror(base, coords_of, OCTANTS, rows)
    return SampledSurface(points, coords, params)


def _assemble_sp(us, omegas, params: SuperquadricParams, mirror: bool = True) -> SampledSurface:
    u_g, om_g = np.meshgrid(us, omegas, indexing="ij")
    u_g, om_g = u_g.ravel(), om_g.ravel()
    base = sp_point(u_g, om_g, params)
    if not mirror:
        return SampledSurface(base, np.stack([u_g, om_g], axis=-1), params)

    def coords_of(signs):
        return np.stack([u_g, _mirror_omega(om_g, *signs)], axis=-1)

    rows = np.repeat(np.arange(len(us)), len(omegas))
    points, coords = _mirror(base, coords_of, QUADRANTS, rows)
    return SampledSurface(points, coords, params)


def sample_superellipsoid(params: SuperquadricParams, config: SamplingConfig) -> SampledSurface:
    """Close-to-uniform canonical-frame samples of a superellipsoid.

    The eta angles come from the ``(1, a3, eps1)`` superellipse and the omega
    angles from the ``(a1, a2, eps2)`` one; their product grid covers the first
    octant and is mirrored into the other seven. Seam points shared between
    octants are emitted once.
    """
    etas = sample_superellipse_angles(1.0, params.a3, params.eps1, config)
    omegas = sample_superellipse_angles(params.a1, params.a2, params.eps2, config)
    return _assemble_se(etas, omegas, params)


def sample_superparaboloid(params: SuperquadricParams, config: SamplingConfig) -> SampledSurface:
    """Close-to-uniform canonical-frame samples of a superparaboloid.

    The bowl spans ``z`` in ``[-a3, 0]`` with its apex at ``(0, 0, -a3)``.
    """
    us = sample_superparabola_params(params.a3, params.eps1, config)
    omegas = sample_superellipse_angles(params.a1, params.a2, params.eps2, config)
    return _assemble_sp(us, omegas, params)


def sample_surface(params: SuperquadricParams, config: SamplingConfig) -> SampledSurface:
    if params.kind is Kind.SUPERELLIPSOID:
        return sample_superellipsoid(params, config)
    return sample_superparaboloid(params, config)


def naive_sample(params: SuperquadricParams, n_eta: int, n_omega: int,
                 mirror: bool = True) -> SampledSurface:
    """Baseline: an ``n_eta x n_omega`` uniform grid over the first parameter
    octant (``u`` in [0, 1] for superparaboloids), mirrored like the adaptive
    samplers unless ``mirror`` is false."""
    if n_eta < 2 or n_omega < 2:
        raise ValueError("naive grid sizes must be >= 2")
    omegas = np.linspace(0.0, HALF_PI, n_omega)
    omegas[-1] = HALF_PI
    if params.kind is Kind.SUPERELLIPSOID:
        etas = np.linspace(0.0, HALF_PI, n_eta)
        etas[-1] = HALF_PI
        return _assemble_se(etas, omegas, params, mirror)
    return _assemble_sp(np.linspace(0.0, 1.0, n_eta), omegas, params, mirror)
