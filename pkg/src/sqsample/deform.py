"""Taper, bend and rigid pose applied to sampled point clouds.

Composition order is fixed: ``translate(rotate(bend(taper(x))))``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .params import SuperquadricParams
from .surface import SampledSurface


@dataclass(frozen=True)
class DeformationSpec:
    Kx: float = 0.0
    Ky: float = 0.0
    bend_k: float | None = None
    a3: float = 1.0

    @classmethod
    def from_params(cls, params: SuperquadricParams) -> "DeformationSpec":
        return cls(params.Kx, params.Ky, params.bend_k, params.a3)


def taper_points(points, Kx: float, Ky: float, a3: float) -> np.ndarray:
    """Scale x by ``Kx z / a3 + 1`` and y by ``Ky z / a3 + 1``; z is untouched."""
    p = np.array(points, dtype=float, copy=True).reshape(-1, 3)
    z = p[:, 2]
    p[:, 0] *= Kx / a3 * z + 1.0
    p[:, 1] *= Ky / a3 * z + 1.0
    return p


def untaper_points(points, Kx: float, Ky: float, a3: float) -> np.ndarray:
    """Inverse of :func:`taper_points`; undefined where a taper factor is 0."""
    p = np.array(points, dtype=float, copy=True).reshape(-1, 3)
    z = p[:, 2]
    p[:, 0] /= Kx / a3 * z + 1.0
    p[:, 1] /= Ky / a3 * z + 1.0
    return p


def _bend_shift(z, k):
    return k - np.sqrt(k * k + z * z)


def bend_points(points, k: float) -> np.ndarray:
    """Shift x by ``k - sqrt(k^2 + z^2)``; y and z are untouched."""
    p = np.array(points, dtype=float, copy=True).reshape(-1, 3)
    p[:, 0] += _bend_shift(p[:, 2], k)
    return p


def unbend_points(points, k: float) -> np.ndarray:
    p = np.array(points, dtype=float, copy=True).reshape(-1, 3)
    p[:, 0] -= _bend_shift(p[:, 2], k)
    return p


def rotation_matrix(euler_zyz) -> np.ndarray:
    """``Rz(theta) @ Ry(phi) @ Rz(psi)``."""
    theta, phi, psi = euler_zyz

    def rz(a):
        c, s = np.cos(a), np.sin(a)
        return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])

    c, s = np.cos(phi), np.sin(phi)
    ry = np.array([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]])
    return rz(theta) @ ry @ rz(psi)


def pose_points(points, euler_zyz, position) -> np.ndarray:
    p = np.asarray(points, dtype=float).reshape(-1, 3)
    return p @ rotation_matrix(euler_zyz).T + np.asarray(position, dtype=float)


def unpose_points(points, euler_zyz, position) -> np.ndarray:
    p = np.asarray(points, dtype=float).reshape(-1, 3) - np.asarray(position, dtype=float)
    return p @ rotation_matrix(euler_zyz)


def deform_points(points, params: SuperquadricParams) -> np.ndarray:
    """Canonical-frame points to world frame, skipping identity stages."""
    p = np.asarray(points, dtype=float).reshape(-1, 3)
    if params.Kx != 0.0 or params.Ky != 0.0:
        p = taper_points(p, params.Kx, params.Ky, params.a3)
    if params.bend_k is not None:
        p = bend_points(p, params.bend_k)
    if params.is_posed:
        p = pose_points(p, params.euler_zyz, params.position)
    return p


def invert_pipeline(points, params: SuperquadricParams) -> np.ndarray:
    """World-frame points back to the canonical frame."""
    p = np.asarray(points, dtype=float).reshape(-1, 3)
    if params.is_posed:
        p = unpose_points(p, params.euler_zyz, params.position)
    if params.bend_k is not None:
        p = unbend_points(p, params.bend_k)
    if params.Kx != 0.0 or params.Ky != 0.0:
        p = untaper_points(p, params.Kx, params.Ky, params.a3)
    return p


def apply_pipeline(surface: SampledSurface) -> SampledSurface:
    """Deform and pose a canonical-frame surface, normals included if present.

    Point count and order are preserved.
    """
    from .normals import transform_normals

    params = surface.params
    if surface.normals is not None:
        surface = transform_normals(surface, params)
    return surface.with_(points=deform_points(surface.points, params))
