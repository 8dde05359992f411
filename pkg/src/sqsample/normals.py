"""Parametric surface normals and their transformation under taper, bend and pose."""

from __future__ import annotations

import numpy as np

from .params import Kind, SuperquadricParams, signed_pow
from .surface import SampledSurface, cos_sin

TAPER_CLAMP = 1e-8
DEGENERATE_NORM = 1e-300


class DegenerateNormal(ArithmeticError):
    pass


def _unit(v):
    v = np.asarray(v, dtype=float)
    norm = np.linalg.norm(v, axis=-1, keepdims=True)
    if np.any(norm < DEGENERATE_NORM) or not np.all(np.isfinite(norm)):
        raise DegenerateNormal("normal vector has (near-)zero or non-finite magnitude")
    return v / norm


def se_normal(eta, omega, params: SuperquadricParams):
    """Outward unit normal(s) of the superellipsoid at ``(eta, omega)``.

    Uses the division-free form ``(cos^(2-e1) eta cos^(2-e2) w / a1, ...)``,
    which stays finite at the poles and on the coordinate planes.
    """
    ce, se = cos_sin(eta)
    co, so = cos_sin(omega)
    ce_pow = signed_pow(ce, 2.0 - params.eps1)
    n = np.stack(
        [
            ce_pow * signed_pow(co, 2.0 - params.eps2) / params.a1,
            ce_pow * signed_pow(so, 2.0 - params.eps2) / params.a2,
            signed_pow(se, 2.0 - params.eps1) / params.a3,
        ],
        axis=-1,
    )
    return _unit(n)


def sp_normal(u, omega, params: SuperquadricParams):
    """Outward unit normal(s) of the superparaboloid at ``(u, omega)``.

    The dual vector ``(u cos^(2-e2) w / a1, u sin^(2-e2) w / a2,
    -(e1/2) u^(2-2/e1) / a3)`` is rescaled by ``u^(2/e1 - 2)`` so nothing
    overflows for small ``eps1``; the apex ``u = 0`` gets ``(0, 0, -1)``.
    """
    u = np.asarray(u, dtype=float)
    co, so = cos_sin(omega)
    lateral = u ** (2.0 / params.eps1 - 1.0)
    apex = u == 0.0
    lateral = np.where(apex, 0.0, lateral)
    n = np.stack(
        [
            lateral * signed_pow(co, 2.0 - params.eps2) / params.a1,
            lateral * signed_pow(so, 2.0 - params.eps2) / params.a2,
            np.broadcast_to(-0.5 * params.eps1 / params.a3, np.shape(lateral)),
        ],
        axis=-1,
    )
    return _unit(n)


def surface_normal(p, omega, params: SuperquadricParams):
    if params.kind is Kind.SUPERELLIPSOID:
        return se_normal(p, omega, params)
    return sp_normal(p, omega, params)


def _clamp(f):
    return np.where(np.abs(f) < TAPER_CLAMP, np.where(f < 0, -TAPER_CLAMP, TAPER_CLAMP), f)


def taper_normal_transform(x, y, z, Kx: float, Ky: float, a3: float):
    """Inverse-transpose taper Jacobian at pre-taper coordinates.

    The determinant factor is dropped since normals are renormalized. Taper
    factors with magnitude below 1e-8 are clamped to keep the matrix finite.
    Returns shape ``(..., 3, 3)``.
    """
    x, y, z = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (x, y, z)))
    dfx, dfy = Kx / a3, Ky / a3
    fx = _clamp(dfx * z + 1.0)
    fy = _clamp(dfy * z + 1.0)
    T = np.zeros(x.shape + (3, 3))
    T[..., 0, 0] = 1.0 / fx
    T[..., 1, 1] = 1.0 / fy
    T[..., 2, 0] = -dfx * x / fx
    T[..., 2, 1] = -dfy * y / fy
    T[..., 2, 2] = 1.0
    return T


def bend_normal_transform(z, k: float):
    z = np.asarray(z, dtype=float)
    T = np.zeros(z.shape + (3, 3))
    T[..., 0, 0] = T[..., 1, 1] = T[..., 2, 2] = 1.0
    T[..., 2, 0] = z / np.sqrt(k * k + z * z)
    return T


def transform_normals(surface: SampledSurface, params: SuperquadricParams | None = None) -> SampledSurface:
    """Carry canonical normals through taper, bend and rotation.

    ``surface.points`` must still be in the canonical frame. Translation does
    not affect normals.
    """
    from .deform import rotation_matrix

    params = params or surface.params
    if surface.normals is None:
        raise ValueError("surface has no normals to transform")
    if not (params.is_deformed or any(params.euler_zyz)):
        return surface
    n = surface.normals
    x, y, z = surface.points.T
    if params.Kx != 0.0 or params.Ky != 0.0:
        n = np.einsum("nij,nj->ni", taper_normal_transform(x, y, z, params.Kx, params.Ky, params.a3), n)
    if params.bend_k is not None:
        # taper leaves z unchanged, so this is also the bend input z
        n = np.einsum("nij,nj->ni", bend_normal_transform(z, params.bend_k), n)
    if any(params.euler_zyz):
        n = n @ rotation_matrix(params.euler_zyz).T
    return surface.with_(normals=_unit(n))


def attach_normals(surface: SampledSurface) -> SampledSurface:
    """Fill in canonical-frame normals from the stored parameter coordinates."""
    p, omega = surface.param_coords.T
    return surface.with_(normals=surface_normal(p, omega, surface.params))
