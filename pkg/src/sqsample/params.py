"""Superquadric parameters, validation and inside-outside functions."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

EPS_MIN = 0.01
EPS_MAX = 2.0
MAX_SCALE_RATIO = 10.0


class Kind(str, Enum):
    SUPERELLIPSOID = "se"
    SUPERPARABOLOID = "sp"


class ParamError(ValueError):
    """A single violated parameter invariant."""

    code = "ParamError"

    def __init__(self, message: str):
        super().__init__(f"{self.code}: {message}")
        self.message = message


class EpsOutOfRange(ParamError):
    code = "EpsOutOfRange"


class ScaleRatioTooLarge(ParamError):
    code = "ScaleRatioTooLarge"


class TaperOutOfRange(ParamError):
    code = "TaperOutOfRange"


class BendRadiusTooSmall(ParamError):
    code = "BendRadiusTooSmall"


class NonPositiveScale(ParamError):
    code = "NonPositiveScale"


class InvalidParams(ValueError):
    """Raised by :func:`validate`; ``errors`` lists every violated invariant."""

    def __init__(self, errors: list[ParamError]):
        self.errors = list(errors)
        super().__init__("; ".join(str(e) for e in self.errors))


@dataclass(frozen=True)
class SuperquadricParams:
    """The 14 shape/pose/deformation parameters plus the surface kind.

    ``bend_k=None`` disables bending. Angles are ZYZ Euler angles in radians.
    """

    kind: Kind = Kind.SUPERELLIPSOID
    a1: float = 1.0
    a2: float = 1.0
    a3: float = 1.0
    eps1: float = 1.0
    eps2: float = 1.0
    euler_zyz: tuple[float, float, float] = (0.0, 0.0, 0.0)
    position: tuple[float, float, float] = (0.0, 0.0, 0.0)
    Kx: float = 0.0
    Ky: float = 0.0
    bend_k: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        object.__setattr__(self, "euler_zyz", tuple(float(v) for v in self.euler_zyz))
        object.__setattr__(self, "position", tuple(float(v) for v in self.position))

    @property
    def scales(self) -> tuple[float, float, float]:
        return (self.a1, self.a2, self.a3)

    @property
    def is_deformed(self) -> bool:
        return self.Kx != 0.0 or self.Ky != 0.0 or self.bend_k is not None

    @property
    def is_posed(self) -> bool:
        return any(self.euler_zyz) or any(self.position)


@dataclass(frozen=True)
class SamplingConfig:
    D: float = 0.05
    theta_singular: float = 0.01
    max_samples_per_curve: int = 100_000

    def __post_init__(self):
        if not (self.D > 0 and math.isfinite(self.D)):
            raise ValueError(f"D must be a positive finite number, got {self.D}")
        if not 0 < self.theta_singular < math.pi / 4:
            raise ValueError("theta_singular must lie in (0, pi/4)")
        if self.max_samples_per_curve < 2:
            raise ValueError("max_samples_per_curve must be >= 2")


def check(params: SuperquadricParams) -> list[ParamError]:
    """Return every violated invariant (empty when the parameters are valid)."""
    errors: list[ParamError] = []
    scales = params.scales
    nonpositive = [name for name, v in zip(("a1", "a2", "a3"), scales) if not v > 0]
    if nonpositive:
        errors.append(NonPositiveScale(f"{', '.join(nonpositive)} must be > 0"))
    elif max(scales) / min(scales) > MAX_SCALE_RATIO:
        errors.append(
            ScaleRatioTooLarge(
                f"max/min scale ratio {max(scales) / min(scales):g} exceeds {MAX_SCALE_RATIO:g}"
            )
        )
    for name in ("eps1", "eps2"):
        v = getattr(params, name)
        if not EPS_MIN <= v <= EPS_MAX:
            errors.append(EpsOutOfRange(f"{name}={v:g} not in [{EPS_MIN:g}, {EPS_MAX:g}]"))
    for name in ("Kx", "Ky"):
        v = getattr(params, name)
        if not -1.0 <= v <= 1.0:
            errors.append(TaperOutOfRange(f"{name}={v:g} not in [-1, 1]"))
    if params.bend_k is not None and not (params.a3 > 0 and params.bend_k >= params.a3):
        errors.append(BendRadiusTooSmall(f"bend_k={params.bend_k:g} must be >= a3={params.a3:g}"))
    return errors


def validate(params: SuperquadricParams) -> SuperquadricParams:
    """Return ``params`` unchanged or raise :class:`InvalidParams`."""
    errors = check(params)
    if errors:
        raise InvalidParams(errors)
    return params


def signed_pow(base, exponent):
    """sgn(b)·|b|^e, the real-valued power used by all parametric forms."""
    base = np.asarray(base, dtype=float)
    return np.sign(base) * np.abs(base) ** exponent


def _split(x):
    x = np.asarray(x, dtype=float)
    return x[..., 0], x[..., 1], x[..., 2]


def _xy_term(x, y, params: SuperquadricParams):
    e2 = 2.0 / params.eps2
    return (np.abs(x / params.a1) ** e2 + np.abs(y / params.a2) ** e2) ** (params.eps2 / params.eps1)


def inside_outside_se(x, params: SuperquadricParams):
    """Superellipsoid inside-outside value for canonical-frame point(s) ``x``.

    ``F < 1`` inside, ``F == 1`` on the surface, ``F > 1`` outside. Accepts a
    single 3-vector or an ``(N, 3)`` array.
    """
    px, py, pz = _split(x)
    return _xy_term(px, py, params) + np.abs(pz / params.a3) ** (2.0 / params.eps1)


def inside_outside_sp(x, params: SuperquadricParams):
    """Superparaboloid inside-outside value; the surface is the level set ``F == 1``.

    Substituting ``r(u, w)`` gives ``u^(2/eps1) - (u^(2/eps1) - 1) = 1`` for
    every parameter pair, so 1 is the surface level just as for superellipsoids.
    """
    px, py, pz = _split(x)
    return _xy_term(px, py, params) - pz / params.a3


def inside_outside(x, params: SuperquadricParams):
    if params.kind is Kind.SUPERELLIPSOID:
        return inside_outside_se(x, params)
    return inside_outside_sp(x, params)
