"""Independent numeric oracles used by the tests.

None of these call the step formulas or the analytic normal code they check.
"""

import math

import numpy as np
from scipy import integrate, optimize


def superellipse_xy(t, a, b, eps):
    t = np.asarray(t, dtype=float)
    # cos(pi/2) evaluates to 6e-17, which c**eps would magnify
    c = np.cos(t)
    s = np.sin(t)
    c = np.where(c < 1e-15, 0.0, c)
    s = np.where(s < 1e-15, 0.0, s)
    return np.stack([a * c ** eps, b * s ** eps], axis=-1)


def superparabola_xy(u, a3, eps1):
    u = np.asarray(u, dtype=float)
    return np.stack([u, a3 * (u ** (2.0 / eps1) - 1.0)], axis=-1)


def rectified_length(curve, t0, t1, n=512):
    """Arc length by dense rectification; copes with integrable speed
    singularities at the interval ends (eps < 1 at theta = 0)."""
    t = np.linspace(t0, t1, n + 1)
    p = curve(t)
    return float(np.hypot(*np.diff(p, axis=0).T).sum())


def interval_lengths(curve, knots, n=256):
    return np.array([rectified_length(curve, t0, t1, n) for t0, t1 in zip(knots, knots[1:])])


def superellipse_speed(t, a, b, eps):
    c, s = math.cos(t), math.sin(t)
    dx = a * eps * c ** (eps - 1) * s
    dy = b * eps * s ** (eps - 1) * c
    return math.hypot(dx, dy)


def superparabola_speed(u, a3, eps1):
    return math.hypot(1.0, a3 * (2.0 / eps1) * u ** (2.0 / eps1 - 1.0))


def invert_arc(speed, start, D, upper):
    """Parameter step from ``start`` covering arc length ``D`` (quadrature + root find)."""
    def gap(step):
        return integrate.quad(speed, start, start + step, limit=200)[0] - D

    return optimize.brentq(gap, 1e-12, upper - start)


def fd_normal(point_fn, p, w, h=1e-6):
    """Unit normal from central differences: normalize(r_w x r_p)."""
    rp = (point_fn(p + h, w) - point_fn(p - h, w)) / (2 * h)
    rw = (point_fn(p, w + h) - point_fn(p, w - h)) / (2 * h)
    n = np.cross(rw, rp)
    return n / np.linalg.norm(n)


def brute_nn(points):
    p = np.asarray(points, dtype=float)
    d = np.linalg.norm(p[:, None, :] - p[None, :, :], axis=-1)
    np.fill_diagonal(d, np.inf)
    return d.min(axis=1)
