"""Round spheres: volumes, Euclidean isoperimetric constants and the
isoperimetric profile of (S^d, mu * g0).

Everything is computed in unit-sphere normalization and rescaled on demand:
for the metric mu * g0 on a d-dimensional space, volumes scale by
mu**(d/2) and boundary areas by mu**((d-1)/2).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

_SQRT_PI = math.sqrt(math.pi)


def gamma_half_integer(x: float) -> float:
    """Gamma(x) for x a positive integer or half-integer, by exact recursion."""
    twice = Fraction(x) * 2
    if twice.denominator != 1 or twice <= 0:
        raise ValueError(f"gamma_half_integer needs a positive multiple of 1/2, got {x}")
    n = int(twice)
    if n % 2 == 0:
        return float(math.factorial(n // 2 - 1))
    # Gamma(j + 1/2) = (2j)! / (4^j j!) * sqrt(pi)
    j = (n - 1) // 2
    return math.factorial(2 * j) / (4**j * math.factorial(j)) * _SQRT_PI


def unit_sphere_volume(n: int) -> float:
    """Volume of the round unit n-sphere, 2 pi^((n+1)/2) / Gamma((n+1)/2)."""
    if n < 1:
        raise ValueError(f"sphere dimension must be >= 1, got {n}")
    return 2.0 * math.pi ** ((n + 1) / 2) / gamma_half_integer((n + 1) / 2)


def unit_ball_volume(n: int) -> float:
    """Volume of the Euclidean unit ball in R^n."""
    if n < 1:
        raise ValueError(f"ball dimension must be >= 1, got {n}")
    if n == 1:
        return 2.0
    return unit_sphere_volume(n - 1) / n


def gamma(n: int) -> float:
    """Euclidean isoperimetric constant: I(v) = gamma(n) v^((n-1)/n) in R^n."""
    if n < 2:
        raise ValueError(f"isoperimetric constant needs n >= 2, got {n}")
    return unit_sphere_volume(n - 1) / unit_ball_volume(n) ** ((n - 1) / n)


def euclidean_profile(n: int, v):
    """Isoperimetric profile of R^n (n = 1 gives the constant 2)."""
    v = np.asarray(v, dtype=float)
    if n == 1:
        return np.full_like(v, 2.0)
    return gamma(n) * v ** ((n - 1) / n)


def _sin_power_total(m: int) -> float:
    # int_0^pi sin^m, via T_m = (m-1)/m T_{m-2}
    t = math.pi if m % 2 == 0 else 2.0
    for j in range(2 if m % 2 == 0 else 3, m + 1, 2):
        t *= (j - 1) / j
    return t


def _sin_power_series(m: int, r):
    # r in [0, pi/4]: int_0^r sin^m = S^(m+1) sum_j (1/2)_j / j! * S^(2j) / (m+1+2j), S = sin r.
    # All terms positive; x = S^2 <= 1/2 so 60 terms reach double precision.
    s = np.sin(r)
    x = s * s
    coef = 1.0
    xp = np.ones_like(r)
    total = np.zeros_like(r)
    for j in range(60):
        term = coef * xp / (m + 1 + 2 * j)
        total += term
        if np.all(term <= 1e-17 * total):
            break
        coef *= (j + 0.5) / (j + 1)
        xp = xp * x
    return s ** (m + 1) * total


def _sin_power_recurrence(m: int, r):
    # J_m = ((m-1) J_{m-2} - sin^(m-1) cos) / m, for r in [pi/4, pi/2]
    s, c = np.sin(r), np.cos(r)
    if m % 2 == 0:
        j, start = r.copy(), 2
    else:
        j, start = 2.0 * np.sin(r / 2) ** 2, 3
    for p in range(start, m + 1, 2):
        j = ((p - 1) * j - s ** (p - 1) * c) / p
    return j


def sin_power_integral(m: int, r):
    """int_0^r sin(s)^m ds for 0 <= r <= pi, vectorized over r.

    Closed-form recurrence away from the poles; a positive power series in
    sin(r)^2 near them, where the recurrence cancels catastrophically.
    """
    if m < 0:
        raise ValueError("exponent must be non-negative")
    r = np.asarray(r, dtype=float)
    scalar = r.ndim == 0
    r = np.atleast_1d(r)
    if m == 0:
        out = r.copy()
    elif m == 1:
        out = 2.0 * np.sin(r / 2) ** 2
    else:
        total = _sin_power_total(m)
        upper = r > math.pi / 2
        rr = np.where(upper, math.pi - r, r)
        near_pole = rr <= math.pi / 4
        half = np.empty_like(rr)
        if near_pole.any():
            half[near_pole] = _sin_power_series(m, rr[near_pole])
        if (~near_pole).any():
            half[~near_pole] = _sin_power_recurrence(m, rr[~near_pole])
        out = np.where(upper, total - half, half)
    return out[0] if scalar else out


@dataclass(frozen=True)
class SphereMetricSpec:
    """The round sphere S^dim with metric mu * g0."""

    dim: int
    mu: float = 1.0

    def __post_init__(self):
        if self.dim < 2:
            raise ValueError(f"sphere dimension must be >= 2, got {self.dim}")
        if not self.mu > 0:
            raise ValueError(f"metric scale must be positive, got {self.mu}")

    @property
    def total_volume(self) -> float:
        return self.mu ** (self.dim / 2) * unit_sphere_volume(self.dim)

    def ball_volume(self, r):
        """Volume of the geodesic ball of (unit-sphere) radius r."""
        d = self.dim
        return self.mu ** (d / 2) * unit_sphere_volume(d - 1) * sin_power_integral(d - 1, r)

    def ball_area(self, r):
        d = self.dim
        return self.mu ** ((d - 1) / 2) * unit_sphere_volume(d - 1) * np.sin(r) ** (d - 1)

    def radius_for_volume(self, v, rtol: float = 1e-12):
        return _invert_ball_volume(self, v, rtol)

    def profile(self, v):
        return sphere_profile(self, v)

    def profile_slope(self, v):
        """dI/dv, the mean curvature (d-1) cot(r) / sqrt(mu) of the optimal sphere."""
        r = self.radius_for_volume(v)
        return (self.dim - 1) / np.tan(r) / math.sqrt(self.mu)


@dataclass(frozen=True)
class ProfilePoint:
    volume: float
    boundary_area: float


def _invert_ball_volume(spec: SphereMetricSpec, v, rtol: float = 1e-12):
    """Solve vol(r) = v on (0, pi); bisection with Newton steps when they stay in the bracket."""
    v = np.asarray(v, dtype=float)
    scalar = v.ndim == 0
    v = np.atleast_1d(v)
    total = spec.total_volume
    if np.any(~(v > 0)) or np.any(~(v < total)):
        raise ValueError(f"volume must lie in (0, {total:.12g}) for {spec}")
    d = spec.dim
    scale = spec.mu ** (d / 2) * unit_sphere_volume(d - 1)
    lo = np.zeros_like(v)
    hi = np.full_like(v, math.pi)
    # small-ball start: vol ~ scale r^d / d
    r = np.clip((d * v / scale) ** (1.0 / d), 1e-300, math.pi * (1 - 1e-15))
    r = np.where(r >= math.pi, 0.5 * math.pi, r)
    for _ in range(200):
        f = scale * sin_power_integral(d - 1, r) - v
        lo = np.where(f < 0, r, lo)
        hi = np.where(f >= 0, r, hi)
        deriv = scale * np.sin(r) ** (d - 1)
        with np.errstate(divide="ignore", invalid="ignore"):
            step = r - f / deriv
        ok = np.isfinite(step) & (step > lo) & (step < hi)
        r_new = np.where(ok, step, 0.5 * (lo + hi))
        done = np.abs(r_new - r) <= rtol * r_new
        r = r_new
        if np.all(done):
            break
    else:
        raise RuntimeError("geodesic-ball volume inversion did not converge")
    return r[0] if scalar else r


def sphere_profile(spec: SphereMetricSpec, v):
    """Isoperimetric profile of (S^d, mu g0): the boundary area of the geodesic
    ball enclosing volume v."""
    r = _invert_ball_volume(spec, v)
    return spec.ball_area(r)


def sphere_profile_peak(spec: SphereMetricSpec) -> tuple[float, float]:
    """(volume, area) at the maximum of the profile, the hemisphere."""
    d = spec.dim
    return 0.5 * spec.total_volume, spec.mu ** ((d - 1) / 2) * unit_sphere_volume(d - 1)


def scale_profile_identity_check(d: int, mu: float, v: float, rtol: float = 1e-9) -> bool:
    """Check I_{mu g0}(mu^(d/2) v) == mu^((d-1)/2) I_{g0}(v)."""
    lhs = sphere_profile(SphereMetricSpec(d, mu), mu ** (d / 2) * v)
    rhs = mu ** ((d - 1) / 2) * sphere_profile(SphereMetricSpec(d, 1.0), v)
    return bool(abs(lhs - rhs) <= rtol * abs(rhs))
