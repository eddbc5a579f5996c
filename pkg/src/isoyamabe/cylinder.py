"""Isoperimetric profile of the cylinder (S^k x R, mu (g0 + dx^2)).

Isoperimetric regions are either cylindrical sections S^k x [a, b], whose
boundary has area 2 V_k, or Pedrosa's ball-type regions. A ball-type region
is parametrized by the largest radius eta of its spherical slices; its
boundary area A(eta) and volume V(eta) are one-dimensional integrals with an
inverse square-root singularity at y = eta. The substitution y = eta - t^2
turns both integrands into analytic functions of t, which are then handed to
adaptive Gauss-Kronrod quadrature.

All computations happen at mu = 1 and are rescaled with
I_mu(v) = mu^(k/2) I_1(mu^(-(k+1)/2) v).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.optimize import brentq

from .geometry import gamma, sin_power_integral, unit_ball_volume, unit_sphere_volume
from .optimize import bracketed_root
from .quadrature import gauss_kronrod, tanh_sinh

DEFAULT_RTOL = 1e-10
# below this slice radius the region is replaced by its Euclidean-ball limit
ETA_FLOOR = 1e-4


class ProfileInversionError(RuntimeError):
    """V(eta) failed to be increasing, so volume cannot be inverted."""


@dataclass(frozen=True)
class CylinderSpec:
    """The cylinder S^k x R with metric mu (g0 + dx^2)."""

    k: int
    mu: float = 1.0

    def __post_init__(self):
        if self.k < 2:
            raise ValueError(f"sphere factor dimension must be >= 2, got {self.k}")
        if not self.mu > 0:
            raise ValueError(f"metric scale must be positive, got {self.mu}")

    @property
    def dim(self) -> int:
        return self.k + 1

    def profile(self, v, rtol: float = DEFAULT_RTOL):
        return cylinder_profile(self, v, rtol)


@dataclass(frozen=True)
class BallRegion:
    k: int
    eta: float
    area: float
    volume: float
    mean_curvature: float


def mean_curvature(k: int, eta):
    """h(eta) = sin^(k-1)(eta) / int_0^eta sin^(k-1)."""
    m = k - 1
    return np.sin(eta) ** m / sin_power_integral(m, eta)


def u_factor(k: int, eta: float, y: float) -> float:
    """Ratio h(eta) / h(y) in (0, 1]; equals 1 at y = eta."""
    if not 0 < eta < math.pi:
        raise ValueError(f"eta must lie in (0, pi), got {eta}")
    if not 0 < y <= eta:
        raise ValueError(f"need 0 < y <= eta, got y={y}, eta={eta}")
    if y == eta:
        return 1.0
    return float(mean_curvature(k, eta) / mean_curvature(k, y))


def _check_k(k: int):
    if k < 2:
        raise ValueError(f"sphere factor dimension must be >= 2, got {k}")


def _small_ball(k: int, eta):
    # Euclidean ball of radius eta in R^(k+1)
    area = unit_sphere_volume(k) * eta**k
    volume = unit_ball_volume(k + 1) * eta ** (k + 1)
    return area, volume


def ball_integrals(k: int, eta, rtol: float = DEFAULT_RTOL):
    """Boundary area A(eta) and volume V(eta) of ball-type regions in S^k x R.

    Vectorized over ``eta``; returns ``(area, volume)`` arrays (or floats).
    """
    _check_k(k)
    eta = np.asarray(eta, dtype=float)
    scalar = eta.ndim == 0
    eta = np.atleast_1d(eta)
    if np.any(~(eta > 0)) or np.any(~(eta < math.pi)):
        raise ValueError("eta must lie in (0, pi)")
    m = k - 1
    area = np.empty_like(eta)
    volume = np.empty_like(eta)
    tiny = eta < ETA_FLOOR
    if tiny.any():
        area[tiny], volume[tiny] = _small_ball(k, eta[tiny])
    big = ~tiny
    if big.any():
        e = eta[big]
        h_eta = mean_curvature(k, e)

        def integrand(t, rows):
            y = e[rows, None] - t * t
            s = np.sin(y) ** m
            j = sin_power_integral(m, y)
            h_y = s / j
            u = h_eta[rows, None] / h_y
            one_minus = (h_y - h_eta[rows, None]) / h_y
            root = np.sqrt(np.maximum(one_minus * (1.0 + u), 1e-300))
            return 2.0 * t * s / root, 2.0 * t * j * u / root

        vals, _ = gauss_kronrod(integrand, 0.0, np.sqrt(e), rtol=rtol)
        factor = 2.0 * unit_sphere_volume(m)
        area[big] = factor * vals[0]
        volume[big] = factor * vals[1]
    if scalar:
        return float(area[0]), float(volume[0])
    return area, volume


def ball_area(k: int, eta, rtol: float = DEFAULT_RTOL):
    return ball_integrals(k, eta, rtol)[0]


def ball_volume(k: int, eta, rtol: float = DEFAULT_RTOL):
    return ball_integrals(k, eta, rtol)[1]


def ball_region(k: int, eta: float, rtol: float = DEFAULT_RTOL) -> BallRegion:
    a, v = ball_integrals(k, eta, rtol)
    return BallRegion(k, float(eta), a, v, float(mean_curvature(k, eta)))


def ball_integrals_reference(k: int, eta: float, rtol: float = 1e-12):
    """Independent evaluation of (A, V) for cross-checking ``ball_integrals``.

    Tanh-sinh quadrature directly in y, with the singular factor rewritten so
    that 1 - u(eta, y) is an integral over [y, eta] (no subtraction of nearly
    equal numbers) and every inner integral done by Gauss-Legendre rather
    than the closed-form recurrence.
    """
    _check_k(k)
    m = k - 1
    xg, wg = np.polynomial.legendre.leggauss(40)

    def gl(fun, lo, width):
        lo = np.asarray(lo, dtype=float)
        half = 0.5 * np.asarray(width, dtype=float)
        s = lo[..., None] + half[..., None] * (xg + 1.0)
        return half * np.sum(wg * fun(s), axis=-1)

    def sin_m(s):
        return np.sin(s) ** m

    j_eta = float(gl(sin_m, 0.0, eta))
    s_eta = math.sin(eta) ** m

    def pieces(y, da, db):
        sy = sin_m(y)
        jy = gl(sin_m, np.zeros_like(y), da)
        # D(y) = sin^m(y) J(eta) - sin^m(eta) J(y) vanishes at y = eta; near there
        # it is computed as the integral of -D' over [y, eta]
        near = gl(
            lambda s: s_eta * np.sin(s) ** m - j_eta * m * np.sin(s) ** (m - 1) * np.cos(s),
            y,
            db,
        )
        d = np.where(db < da, near, sy * j_eta - s_eta * jy)
        one_minus = d / (j_eta * sy)
        u = 1.0 - one_minus
        root = np.sqrt(one_minus * (1.0 + u))
        return sy, jy, u, root

    def fa(y, da, db):
        with np.errstate(divide="ignore", invalid="ignore"):
            sy, jy, u, root = pieces(y, da, db)
            return np.where(sy > 1e-250, sy / root, 0.0)

    def fv(y, da, db):
        with np.errstate(divide="ignore", invalid="ignore"):
            sy, jy, u, root = pieces(y, da, db)
            return np.where(sy > 1e-250, jy * u / root, 0.0)

    a, _ = tanh_sinh(fa, 0.0, eta, rtol=rtol)
    v, _ = tanh_sinh(fv, 0.0, eta, rtol=rtol)
    factor = 2.0 * unit_sphere_volume(m)
    return factor * a, factor * v


@lru_cache(maxsize=None)
def crossover(k: int, rtol: float = DEFAULT_RTOL) -> tuple[float, float]:
    """(eta*, v0): the ball-type region whose boundary area equals that of a
    cylindrical section, 2 V_k, and its volume."""
    _check_k(k)
    target = 2.0 * unit_sphere_volume(k)
    scan = np.linspace(0.2, math.pi - 0.05, 60)
    areas = ball_area(k, scan, rtol)
    above = np.nonzero(areas >= target)[0]
    if above.size == 0 or above[0] == 0:
        raise ValueError(f"crossover for k={k} is not bracketed in [0.2, pi - 0.05]")
    i = above[0]
    eta_star = brentq(
        lambda e: ball_area(k, e, rtol) - target, scan[i - 1], scan[i], xtol=1e-15, rtol=1e-15
    )
    return eta_star, ball_volume(k, eta_star, rtol)


@dataclass(frozen=True)
class _Table:
    eta: np.ndarray
    volume: np.ndarray
    area: np.ndarray
    eta_star: float
    v0: float


@lru_cache(maxsize=None)
def _table(k: int, rtol: float) -> _Table:
    eta_star, v0 = crossover(k, rtol)
    eta = np.concatenate([np.geomspace(ETA_FLOOR, 0.2, 40)[:-1], np.linspace(0.2, eta_star, 121)])
    area, volume = ball_integrals(k, eta, rtol)
    bad = np.nonzero(np.diff(volume) <= 0)[0]
    if bad.size:
        i = bad[0]
        raise ProfileInversionError(
            f"V(eta) is not increasing for k={k} between eta={eta[i]:.6g} and eta={eta[i + 1]:.6g}"
        )
    return _Table(eta, volume, area, eta_star, v0)


def _unit_profile(k: int, v, rtol: float):
    """Profile of the unit cylinder S^k x R, vectorized over v > 0."""
    tab = _table(k, rtol)
    out = np.full(v.shape, 2.0 * unit_sphere_volume(k))
    small = v < tab.v0
    floor = small & (v <= tab.volume[0])
    if floor.any():
        out[floor] = gamma(k + 1) * v[floor] ** (k / (k + 1))
    todo = np.nonzero(small & ~floor)[0]
    if todo.size:
        target = v[todo]
        i = np.searchsorted(tab.volume, target)
        lo, hi = tab.eta[i - 1], tab.eta[i]
        flo, fhi = tab.volume[i - 1] - target, tab.volume[i] - target

        def residual(eta, rows):
            return ball_volume(k, eta, rtol) - target[rows]

        eta = bracketed_root(residual, lo, hi, flo, fhi, xtol=1e-15, ftol=1e-12 * target)
        out[todo] = ball_area(k, eta, rtol)
    return out


def cylinder_profile(spec: CylinderSpec, v, rtol: float = DEFAULT_RTOL):
    """Isoperimetric profile I(v) of (S^k x R, mu (g0 + dx^2)), vectorized over v."""
    v = np.asarray(v, dtype=float)
    scalar = v.ndim == 0
    v = np.atleast_1d(v)
    if np.any(~(v > 0)):
        raise ValueError("volume must be positive")
    k, mu = spec.k, spec.mu
    out = mu ** (k / 2) * _unit_profile(k, v * mu ** (-(k + 1) / 2), rtol)
    return float(out[0]) if scalar else out


def profile_ratio(spec: CylinderSpec, v, rtol: float = DEFAULT_RTOL):
    """I(v) / v^(k/(k+1)), which tends to gamma(k+1) as v -> 0."""
    v = np.asarray(v, dtype=float)
    k = spec.k
    r = cylinder_profile(spec, v, rtol) / v ** (k / (k + 1))
    return float(r) if np.ndim(r) == 0 else r


def crossover_volume(spec: CylinderSpec, rtol: float = DEFAULT_RTOL) -> float:
    """Volume beyond which cylindrical sections are isoperimetric, in the scaled metric."""
    return spec.mu ** ((spec.k + 1) / 2) * crossover(spec.k, rtol)[1]
