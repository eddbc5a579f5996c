"""One-dimensional search helpers: golden-section minimization and a
vectorized bracketed root finder."""
from __future__ import annotations

import math

import numpy as np

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
INV_PHI2 = (3.0 - math.sqrt(5.0)) / 2.0


def golden_section_min(f, a: float, b: float, tol: float = 1e-10, max_iter: int = 500):
    """Minimize a unimodal ``f`` on [a, b]; returns ``(x, f(x))``.

    The endpoints are compared against the interior result, so minima sitting
    on the boundary of the interval are returned exactly.
    """
    if not b > a:
        raise ValueError("golden_section_min needs a < b")
    lo, hi = a, b
    c = lo + INV_PHI2 * (hi - lo)
    d = lo + INV_PHI * (hi - lo)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if hi - lo <= tol * max(1.0, abs(lo) + abs(hi)):
            break
        if fc < fd:
            hi, d, fd = d, c, fc
            c = lo + INV_PHI2 * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + INV_PHI * (hi - lo)
            fd = f(d)
    x, fx = (c, fc) if fc < fd else (d, fd)
    for end in (a, b):
        fe = f(end)
        if fe <= fx:
            x, fx = end, fe
    return x, fx


def golden_section_max(f, a: float, b: float, tol: float = 1e-10):
    x, fx = golden_section_min(lambda t: -f(t), a, b, tol)
    return x, -fx


def bracketed_root(func, lo, hi, flo, fhi, xtol=1e-15, ftol=None, max_iter=100):
    """Solve ``func(x, rows) == 0`` elementwise inside sign-changing brackets.

    Illinois-modified regula falsi with a bisection step every fourth
    iteration. ``func`` is called with the current estimates for the still
    active members and their indices ``rows`` into the batch. ``ftol`` is an
    array (or scalar) of absolute residual tolerances.
    """
    lo = np.array(lo, dtype=float)
    hi = np.array(hi, dtype=float)
    flo = np.array(flo, dtype=float)
    fhi = np.array(fhi, dtype=float)
    if np.any(flo * fhi > 0):
        raise ValueError("root is not bracketed")
    n = lo.size
    ftol = np.broadcast_to(np.asarray(0.0 if ftol is None else ftol, dtype=float), (n,))
    x = np.where(np.abs(flo) < np.abs(fhi), lo, hi)
    side = np.zeros(n, dtype=int)
    active = np.arange(n)
    for it in range(max_iter):
        if active.size == 0:
            return x
        l, h, fl, fh = lo[active], hi[active], flo[active], fhi[active]
        c = (l * fh - h * fl) / (fh - fl)
        bad = ~np.isfinite(c) | (c <= l) | (c >= h) | (it % 4 == 3)
        c = np.where(bad, 0.5 * (l + h), c)
        fc = np.asarray(func(c, active), dtype=float)
        x[active] = c
        s = side[active]
        same_hi = fc * fh > 0
        # c replaces hi
        hi[active] = np.where(same_hi, c, h)
        fhi[active] = np.where(same_hi, fc, fh)
        flo[active] = np.where(same_hi & (s == -1), fl / 2, flo[active])
        # c replaces lo
        lo[active] = np.where(~same_hi, c, lo[active])
        flo[active] = np.where(~same_hi, fc, flo[active])
        fhi[active] = np.where(~same_hi & (s == 1), fhi[active] / 2, fhi[active])
        side[active] = np.where(same_hi, -1, 1)
        done = (np.abs(fc) <= ftol[active]) | (hi[active] - lo[active] <= xtol * np.abs(c))
        active = active[~done]
    raise RuntimeError(f"bracketed_root: {active.size} members did not converge")
