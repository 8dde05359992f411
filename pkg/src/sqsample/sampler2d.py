"""Arc-length adaptive sampling of superellipse angles and superparabola parameters.

Both samplers step a parameter by the first-order estimate of the increment
that moves the curve point a chord length ``D``.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from .params import SamplingConfig

HALF_PI = math.pi / 2
QUARTER_PI = math.pi / 4
MIN_STEP = 1e-9
SNAP_TOL = 1e-12


class SamplingError(RuntimeError):
    pass


class NonFiniteResult(SamplingError):
    pass


class SampleCapExceeded(SamplingError):
    pass


def _quarter_cos_sin(theta: float) -> tuple[float, float]:
    # exact zeros at both ends of [0, pi/2]
    if theta > QUARTER_PI:
        rest = HALF_PI - theta
        return math.sin(rest), math.cos(rest)
    return math.cos(theta), math.sin(theta)


def delta_theta(theta: float, a: float, b: float, eps: float, D: float,
                theta_singular: float = 0.01) -> float:
    """Angle increment moving a chord of length ``D`` along ``(a cos^eps t, b sin^eps t)``.

    Within ``theta_singular`` of either end the closed-form small-angle step is
    used; the step near pi/2 is the magnitude of a move *away* from pi/2, which
    is how the descending pass consumes it.
    """
    try:
        if theta <= theta_singular:
            step = (theta ** eps + D / b) ** (1.0 / eps) - theta
        elif HALF_PI - theta <= theta_singular:
            rest = HALF_PI - theta
            step = (rest ** eps + D / a) ** (1.0 / eps) - rest
        else:
            c, s = _quarter_cos_sin(theta)
            denom = a * a * c ** (2 * eps) * s ** 4 + b * b * s ** (2 * eps) * c ** 4
            step = (D / eps) * math.sqrt((c * c * s * s) / denom)
    except (OverflowError, ZeroDivisionError) as exc:
        raise NonFiniteResult(f"delta_theta overflow at theta={theta!r}, eps={eps!r}, D={D!r}") from exc
    if not math.isfinite(step):
        raise NonFiniteResult(f"delta_theta non-finite at theta={theta!r}, eps={eps!r}, D={D!r}")
    return max(step, MIN_STEP)


def delta_u(u: float, a3: float, eps1: float, D: float) -> float:
    """Parameter increment moving a chord of length ``D`` along ``(u, a3 (u^(2/eps1) - 1))``."""
    try:
        slope_sq = (4.0 * a3 * a3 / (eps1 * eps1)) * u ** (4.0 / eps1 - 2.0)
        step = D / math.sqrt(slope_sq + 1.0)
    except (OverflowError, ZeroDivisionError) as exc:
        raise NonFiniteResult(f"delta_u overflow at u={u!r}, eps1={eps1!r}") from exc
    if not (math.isfinite(slope_sq) and math.isfinite(step)):
        raise NonFiniteResult(f"delta_u non-finite at u={u!r}, eps1={eps1!r}, D={D!r}")
    return max(step, MIN_STEP)


def superellipse_point(theta, a: float, b: float, eps: float):
    """First-quadrant superellipse point(s) for angle(s) in [0, pi/2]."""
    theta = np.asarray(theta, dtype=float)
    upper = theta > QUARTER_PI
    rest = HALF_PI - theta
    c = np.where(upper, np.sin(rest), np.cos(theta))
    s = np.where(upper, np.cos(rest), np.sin(theta))
    return np.stack([a * c ** eps, b * s ** eps], axis=-1)


def superparabola_point(u, a3: float, eps1: float):
    u = np.asarray(u, dtype=float)
    return np.stack([u, a3 * (u ** (2.0 / eps1) - 1.0)], axis=-1)


def _ascend(a, b, eps, config: SamplingConfig) -> list[float]:
    values = [0.0]
    theta = 0.0
    while theta < QUARTER_PI - SNAP_TOL:
        theta += delta_theta(theta, a, b, eps, config.D, config.theta_singular)
        values.append(theta)
        if len(values) > config.max_samples_per_curve:
            raise SampleCapExceeded(f"more than {config.max_samples_per_curve} samples")
    return values


def _descend(a, b, eps, config: SamplingConfig) -> list[float]:
    values = [HALF_PI]
    theta = HALF_PI
    while theta > QUARTER_PI + SNAP_TOL:
        theta -= delta_theta(theta, a, b, eps, config.D, config.theta_singular)
        values.append(theta)
        if len(values) > config.max_samples_per_curve:
            raise SampleCapExceeded(f"more than {config.max_samples_per_curve} samples")
    return values


def _se_xy(theta: float, a, b, eps) -> tuple[float, float]:
    c, s = _quarter_cos_sin(theta)
    return a * c ** eps, b * s ** eps


def _merge(up: list[float], down: list[float], a, b, eps, D) -> list[float]:
    # The passes overlap around pi/4: each ends with a sample past pi/4 and the
    # one before may sit close to it. Among subsets of those inner samples, take
    # the interval count closest to span / D (span measured along the finest
    # polyline), then the gaps that deviate least from D.
    low = up[:-1]
    high = down[::-1][1:]
    left = low[:-1] if len(low) > 1 else low
    right = high[1:] if len(high) > 1 else high
    lo, hi = left[-1], right[0]
    inner = sorted({low[-1], up[-1], high[0], down[-1]} - {lo, hi})
    inner = [t for t in inner if lo + SNAP_TOL < t < hi - SNAP_TOL]

    xy = {t: _se_xy(t, a, b, eps) for t in (lo, hi, *inner)}

    def gaps(middle):
        knots = [lo, *middle, hi]
        return [math.dist(xy[t0], xy[t1]) for t0, t1 in zip(knots, knots[1:])]

    span = sum(gaps(inner)) / D

    def cost(middle: tuple[float, ...]) -> tuple[float, float, float]:
        devs = [abs(math.log(max(g, 1e-300) / D)) for g in gaps(middle)]
        return abs(len(devs) - span), max(devs), sum(devs)

    options = []
    for r in range(len(inner) + 1):
        for middle in itertools.combinations(inner, r):
            if all(t1 - t0 > SNAP_TOL for t0, t1 in zip(middle, middle[1:])):
                options.append(middle)
    target = min(round(cost(m)[0], 12) for m in options)
    best = min((m for m in options if round(cost(m)[0], 12) == target), key=cost)
    return left + list(best) + right


def sample_superellipse_angles(a: float, b: float, eps: float, config: SamplingConfig) -> np.ndarray:
    """Angles in [0, pi/2] spaced by roughly ``config.D`` of arc on the superellipse.

    Runs an ascending pass from 0 and a descending pass from pi/2, each up to
    pi/4, and joins them. Returns a strictly increasing array that starts at
    exactly 0 and ends at exactly pi/2.
    """
    up = _ascend(a, b, eps, config)
    down = _descend(a, b, eps, config)
    values = _merge(up, down, a, b, eps, config.D)
    if len(values) > config.max_samples_per_curve:
        raise SampleCapExceeded(f"more than {config.max_samples_per_curve} samples")
    return np.asarray(values, dtype=float)


def sample_superparabola_params(a3: float, eps1: float, config: SamplingConfig) -> np.ndarray:
    """Parameters in [0, 1] spaced by roughly ``config.D`` along the superparabola.

    The step that crosses 1 is clamped onto 1; a step landing within 1e-12 of
    1 is snapped to it.
    """
    values = [0.0]
    u = 0.0
    while u < 1.0:
        u += delta_u(u, a3, eps1, config.D)
        if u >= 1.0 - SNAP_TOL:
            u = 1.0
        values.append(u)
        if len(values) > config.max_samples_per_curve:
            raise SampleCapExceeded(f"more than {config.max_samples_per_curve} samples")
    return np.asarray(values, dtype=float)
