"""Quadrature rules used by the Pedrosa integrals.

``gauss_kronrod`` integrates a batch of smooth integrands at once: every
integrand is split into the same number of equal panels, each panel gets a
15-point Kronrod rule with an embedded 7-point Gauss error estimate, and the
panel count is doubled for the members of the batch that have not converged.

``tanh_sinh`` is the double-exponential rule. It tolerates integrable
endpoint singularities and hands the integrand the distances to both
endpoints so those can be evaluated without cancellation.
"""
from __future__ import annotations

import math

import numpy as np


class QuadratureError(RuntimeError):
    """Raised when a quadrature does not reach its tolerance."""

    def __init__(self, message: str, achieved: float):
        super().__init__(f"{message} (achieved relative error estimate {achieved:.3e})")
        self.achieved = achieved


# QUADPACK qk15 abscissae (non-negative half) and weights
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

# full 15-point rule on [-1, 1]
KRONROD_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
KRONROD_WEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
GAUSS_WEIGHTS = np.zeros(15)
GAUSS_WEIGHTS[[1, 3, 5]] = _WG[:3]
GAUSS_WEIGHTS[[9, 11, 13]] = _WG[2::-1]
GAUSS_WEIGHTS[7] = _WG[3]


def gauss_kronrod(f, a, b, rtol=1e-10, atol=0.0, start_panels=2, max_panels=1024):
    """Integrate ``f`` over [a_i, b_i] for every member i of the batch.

    ``f(x, rows)`` receives nodes of shape (len(rows), nodes) for the batch
    members ``rows`` still being refined and returns values of the same shape;
    it may return a tuple of such arrays, in which case all of them are
    integrated on the same nodes and each must converge.

    Returns ``(values, error_estimates)`` with one row per integrand output.
    """
    a = np.atleast_1d(np.asarray(a, dtype=float))
    b = np.atleast_1d(np.asarray(b, dtype=float))
    a, b = np.broadcast_arrays(a, b)
    batch = a.shape[0]
    values = None
    errors = None
    pending = np.arange(batch)
    panels = start_panels
    while pending.size:
        width = (b[pending] - a[pending]) / panels
        left = a[pending, None] + width[:, None] * np.arange(panels)[None, :]
        half = 0.5 * width[:, None, None]
        x = left[:, :, None] + half * (KRONROD_NODES + 1.0)
        out = f(x.reshape(pending.size, -1), pending)
        outs = out if isinstance(out, tuple) else (out,)
        if values is None:
            values = np.zeros((len(outs), batch))
            errors = np.full((len(outs), batch), np.inf)
        done = np.ones(pending.size, dtype=bool)
        for q, fx in enumerate(outs):
            fx = fx.reshape(pending.size, panels, 15)
            k = np.sum(fx * KRONROD_WEIGHTS, axis=2) * half[:, :, 0]
            g = np.sum(fx * GAUSS_WEIGHTS, axis=2) * half[:, :, 0]
            res = k.sum(axis=1)
            err = np.abs(k - g).sum(axis=1)
            values[q, pending] = res
            errors[q, pending] = err
            done &= np.isfinite(res) & (err <= np.maximum(rtol * np.abs(res), atol))
        pending = pending[~done]
        panels *= 2
        if pending.size and panels > max_panels:
            worst = np.max(errors[:, pending] / np.maximum(np.abs(values[:, pending]), 1e-300))
            raise QuadratureError(
                f"Gauss-Kronrod did not converge within {max_panels} panels", float(worst)
            )
    return values, errors


def tanh_sinh(f, a: float, b: float, rtol: float = 1e-12, max_level: int = 10):
    """Double-exponential quadrature of ``f`` over [a, b].

    ``f(x, da, db)`` receives the nodes and their distances to ``a`` and to
    ``b`` computed without cancellation; it returns an array of values.
    Returns ``(value, error_estimate)``.
    """
    if not b > a:
        raise ValueError("tanh_sinh needs a < b")
    half = 0.5 * (b - a)
    # endpoint distances stay representable (>= ~1e-300) for |t| <= 6
    t_max = 6.0
    prev = None
    h = 0.5
    total_sum = 0.0
    for level in range(max_level + 1):
        j = np.arange(-int(t_max / h), int(t_max / h) + 1)
        if level > 0:
            j = j[j % 2 != 0]
        t = j * h
        u = 0.5 * math.pi * np.sinh(t)
        # 1 - tanh(u) = 2 / (exp(2u) + 1), accurate for large u
        comp_plus = 2.0 / (np.exp(2.0 * u) + 1.0)
        comp_minus = 2.0 / (np.exp(-2.0 * u) + 1.0)
        x = a + half * comp_minus  # node, measured from a
        da = half * comp_minus
        db = half * comp_plus
        with np.errstate(over="ignore"):
            w = 0.5 * math.pi * np.cosh(t) / np.cosh(u) ** 2
        keep = (da > 0) & (db > 0) & (w > 0)
        fx = f(x[keep], da[keep], db[keep])
        total_sum += np.sum(w[keep] * fx)
        estimate = half * h * total_sum
        if prev is not None:
            err = abs(estimate - prev)
            if err <= rtol * abs(estimate):
                return estimate, err
        prev = estimate
        h *= 0.5
    raise QuadratureError("tanh-sinh did not converge", abs(estimate - prev) / abs(estimate))
