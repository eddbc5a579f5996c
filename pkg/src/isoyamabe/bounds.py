"""Lower bounds for isoperimetric profiles and the certification of
inequalities I_left(v) >= c * I_(S^d, mu g0)(v) over volume ranges.

A certificate is assembled from regimes, each covering an interval of
volumes with one of four arguments:

small-volume
    Both profiles have non-increasing I(v) / v^((d-1)/d) (non-negative Ricci
    curvature), and the sphere's ratio tends to gamma(d). So
    left(v_a) / v_a^((d-1)/d) > c * gamma(d) settles all of (0, v_a].
grid-chord
    The left profile is concave, so it lies above its chords; the sphere
    profile is concave, so on each cell it lies below the tangent lines at
    the two nodes. Comparing the chord with the tangent envelope at the
    envelope's kink settles each cell.
line
    A line known to lie below the left profile is compared with the concave
    sphere profile; c * right - line is concave, so golden-section search
    finds its maximum.
tail
    A non-decreasing lower bound that already exceeds c times the sphere's
    maximum settles everything to its right.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .cylinder import DEFAULT_RTOL, CylinderSpec, cylinder_profile
from .geometry import (
    SphereMetricSpec,
    euclidean_profile,
    gamma,
    sphere_profile_peak,
)
from .optimize import golden_section_max, golden_section_min

# a regime passes only if its relative slack exceeds this
MARGIN_FLOOR = 1e-6
DEFAULT_GRID_NODES = 512
INF = math.inf


class CertificationError(RuntimeError):
    """A check that a certificate depends on failed."""


class RegimeInapplicable(ValueError):
    """The bound handed to a regime lacks the property the regime relies on."""


@dataclass(frozen=True)
class ProfileBound:
    """A pointwise lower bound v -> value, valid on ``valid_range``."""

    kind: str
    params: dict
    valid_range: tuple[float, float]
    fn: Callable = field(repr=False, compare=False)
    dim: int | None = None
    concave: bool = False
    ratio_nonincreasing: bool = False
    nondecreasing: bool = False
    provenance: tuple[str, ...] = ()

    def __call__(self, v):
        v = np.asarray(v, dtype=float)
        lo, hi = self.valid_range
        tol = 1e-12 * max(1.0, abs(lo), abs(hi) if math.isfinite(hi) else 0.0)
        if np.any(v < lo - tol) or np.any(v > hi + tol):
            raise ValueError(f"{self.kind} bound evaluated outside its range {self.valid_range}")
        out = self.fn(v)
        return float(out) if np.ndim(out) == 0 else out

    def describe(self) -> dict:
        return {
            "kind": self.kind,
            "params": dict(self.params),
            "valid_range": list(self.valid_range),
            "provenance": list(self.provenance),
        }


def cylinder_exact(k: int, mu: float = 1.0, scale: float = 1.0, rtol: float = DEFAULT_RTOL,
                   provenance: tuple[str, ...] = ()) -> ProfileBound:
    """``scale`` times the exact profile of (S^k x R, mu (g0 + dx^2))."""
    spec = CylinderSpec(k, mu)
    return ProfileBound(
        kind="cylinder-exact",
        params={"k": k, "mu": mu, "scale": scale},
        valid_range=(0.0, INF),
        fn=lambda v: scale * cylinder_profile(spec, v, rtol),
        dim=k + 1,
        concave=True,
        ratio_nonincreasing=True,
        nondecreasing=True,
        provenance=provenance or (f"exact profile of S^{k} x R",),
    )


def sphere_exact(spec: SphereMetricSpec, scale: float = 1.0) -> ProfileBound:
    return ProfileBound(
        kind="sphere-exact",
        params={"dim": spec.dim, "mu": spec.mu, "scale": scale},
        valid_range=(0.0, spec.total_volume),
        fn=lambda v: scale * spec.profile(v),
        dim=spec.dim,
        concave=True,
        ratio_nonincreasing=True,
        provenance=(f"exact profile of S^{spec.dim}",),
    )


@dataclass(frozen=True)
class SphereDomination:
    """The statement I_subject >= lam * I_(S^d, mu g0) on all volumes."""

    subject: str
    lam: float
    sphere: SphereMetricSpec
    provenance: tuple[str, ...] = ()


def times_r(subject: str) -> str:
    """Name of subject x R, merging a trailing Euclidean factor: "S^3 x R" -> "S^3 x R^2"."""
    m = re.search(r" x R(?:\^(\d+))?$", subject)
    if m is None:
        return f"{subject} x R"
    n = int(m.group(1) or 1) + 1
    return f"{subject[:m.start()]} x R^{n}"


def ros_compose(dom: SphereDomination, rtol: float = DEFAULT_RTOL) -> ProfileBound:
    """Take a product with R on both sides of ``dom``.

    lam * I_(S^d, mu g0) is the profile of a model space, so the product
    theorem turns I_X >= lam I_(S^d, mu g0) into
    I_(X x R) >= lam I_(S^d x R, mu (g0 + dx^2)). The metric on the new R
    factor is absorbed into mu because rescaling R is an isometry class
    change that leaves its profile (the constant 2) unchanged.
    """
    d, mu, lam = dom.sphere.dim, dom.sphere.mu, dom.lam
    unit = CylinderSpec(d, 1.0)

    def fn(v):
        return lam * mu ** (d / 2) * cylinder_profile(unit, mu ** (-(d + 1) / 2) * v, rtol)

    return ProfileBound(
        kind="ros-composed",
        params={"lam": lam, "d": d, "mu": mu, "subject": times_r(dom.subject)},
        valid_range=(0.0, INF),
        fn=fn,
        dim=d + 1,
        concave=True,
        ratio_nonincreasing=True,
        nondecreasing=True,
        provenance=dom.provenance + (f"product with R of: {dom.subject} >= {lam:.12g} I(S^{d}, {mu:.12g} g0)",),
    )


def power_law(a: float, q: float, valid_range=(0.0, INF), provenance: tuple[str, ...] = ()) -> ProfileBound:
    if a < 0:
        raise ValueError("power-law coefficient must be non-negative")
    return ProfileBound(
        kind="power-law",
        params={"a": a, "q": q},
        valid_range=tuple(valid_range),
        fn=lambda v: a * np.asarray(v, dtype=float) ** q,
        nondecreasing=q >= 0,
        provenance=provenance,
    )


def constant(value: float, valid_range=(0.0, INF), provenance: tuple[str, ...] = ()) -> ProfileBound:
    if value < 0:
        raise ValueError("constant bound must be non-negative")
    return ProfileBound(
        kind="constant",
        params={"value": value},
        valid_range=tuple(valid_range),
        fn=lambda v: np.full(np.shape(v), value) if np.ndim(v) else value,
        nondecreasing=True,
        provenance=provenance,
    )


def chord_line(p1: tuple[float, float], p2: tuple[float, float],
               provenance: tuple[str, ...] = ()) -> ProfileBound:
    """The segment joining two certified values of a concave profile.

    Concavity puts the profile above the segment between the anchors, so the
    line is a lower bound on [v1, v2] only.
    """
    (v1, y1), (v2, y2) = p1, p2
    if not v1 < v2:
        raise ValueError("chord anchors must satisfy v1 < v2")
    slope = (y2 - y1) / (v2 - v1)
    return ProfileBound(
        kind="chord-line",
        params={"v1": v1, "y1": y1, "v2": v2, "y2": y2, "slope": slope},
        valid_range=(v1, v2),
        fn=lambda v: y1 + slope * (np.asarray(v, dtype=float) - v1),
        nondecreasing=slope >= 0,
        provenance=provenance,
    )


# --- product regions -------------------------------------------------------


@dataclass(frozen=True)
class MorganInstance:
    """Product S^sphere_dim x R^euclid_dim with the data needed for its power-law bound."""

    name: str
    sphere_dim: int
    euclid_dim: int
    threshold: float
    aux: Callable = field(repr=False, compare=False)
    aux_minimum: float = 0.0
    coefficient: float = 0.0
    exponent: float = 0.0


def _aux_s3xr2(t):
    w = t - math.cos(t) * math.sin(t)
    return 4.0 * math.sin(t) ** 2 / w + math.pi * math.sqrt(2.0 * w)


def _aux_s2xr3(t):
    w = 1.0 - math.cos(t)
    return 3.0 * math.sin(t) / w + 2.0 * (3.0 * math.pi) ** (2 / 3) * w ** (1 / 3)


MORGAN_INSTANCES = {
    "S3xR2": MorganInstance(
        "S3xR2", 3, 2, 16.0, _aux_s3xr2,
        aux_minimum=math.sqrt(2.0) * math.pi**1.5,
        coefficient=(2.0 * math.pi) ** 1.5 / math.sqrt(2.0),
        exponent=0.5,
    ),
    "S2xR3": MorganInstance(
        "S2xR3", 2, 3, 27.0, _aux_s2xr3,
        aux_minimum=2.0 * 2.0 ** (1 / 3) * (3.0 * math.pi) ** (2 / 3),
        coefficient=2.0 ** (5 / 6) * (3.0 * math.pi) ** (2 / 3),
        exponent=2 / 3,
    ),
}


def product_objective(sphere_dim: int, euclid_dim: int, v: float, t: float) -> float:
    """Boundary area of (geodesic ball of radius t) x (Euclidean ball) with total volume v."""
    s = SphereMetricSpec(sphere_dim)
    v1 = float(s.ball_volume(t))
    a1 = float(s.ball_area(t))
    v2 = v / v1
    return a1 * v2 + float(euclidean_profile(euclid_dim, v2)) * v1


@dataclass(frozen=True)
class ProductInfimum:
    value: float
    t_min: float
    path: str


def _scan_then_golden(f, n_scan=1000, tol=1e-10) -> ProductInfimum:
    ts = np.linspace(math.pi / n_scan, math.pi, n_scan)
    vals = np.array([f(t) for t in ts])
    d = np.sign(np.diff(vals))
    d = d[d != 0]
    turns = int(np.count_nonzero(np.diff(d) != 0))
    unimodal = turns == 0 or (turns == 1 and d[0] < 0)
    i = int(np.argmin(vals))
    lo = ts[max(i - 1, 0)] if i > 0 else 0.5 * ts[0]
    hi = ts[min(i + 1, n_scan - 1)]
    t, val = golden_section_min(f, lo, hi, tol)
    return ProductInfimum(val, t, "golden-section" if unimodal else "grid-fallback")


def product_infimum(sphere_dim: int, euclid_dim: int, v: float) -> ProductInfimum:
    """inf over product regions of boundary area at volume v (before the sqrt(2) factor)."""
    if not v > 0:
        raise ValueError("volume must be positive")
    return _scan_then_golden(lambda t: product_objective(sphere_dim, euclid_dim, v, t))


def morgan_product_bound(sphere_dim: int, euclid_dim: int, v: float) -> float:
    """I_P(v) / sqrt(2), a lower bound for the profile of S^sphere_dim x R^euclid_dim.

    Both factors have concave profiles, which is what the product estimate
    requires.
    """
    return product_infimum(sphere_dim, euclid_dim, v).value / math.sqrt(2.0)


def verify_auxiliary_min(instance: str | MorganInstance) -> tuple[float, float]:
    """Locate the global minimum of the instance's auxiliary function on (0, pi].

    Raises CertificationError unless it sits at t = pi with the expected value.
    """
    inst = MORGAN_INSTANCES[instance] if isinstance(instance, str) else instance
    res = _scan_then_golden(inst.aux)
    if abs(res.t_min - math.pi) > 1e-6:
        raise CertificationError(f"{inst.name}: auxiliary minimum at t={res.t_min!r}, expected pi")
    if abs(res.value - inst.aux_minimum) > 1e-9 * inst.aux_minimum:
        raise CertificationError(
            f"{inst.name}: auxiliary minimum {res.value!r} differs from {inst.aux_minimum!r}"
        )
    return res.t_min, res.value


def morgan_power_law(instance: str) -> ProfileBound:
    """Power-law lower bound for the product profile beyond the instance threshold.

    For v >= threshold the first term of the product objective only grows, so
    the infimum is bounded by the auxiliary function's minimum at t = pi.
    """
    inst = MORGAN_INSTANCES[instance]
    verify_auxiliary_min(inst)
    return power_law(
        inst.coefficient,
        inst.exponent,
        valid_range=(inst.threshold, INF),
        provenance=(
            f"product-region bound I >= I_P / sqrt(2) on S^{inst.sphere_dim} x R^{inst.euclid_dim}",
            f"auxiliary minimum verified at t = pi for v >= {inst.threshold:g}",
        ),
    )


def morgan_product(instance: str) -> ProfileBound:
    inst = MORGAN_INSTANCES[instance]

    def fn(v):
        v = np.asarray(v, dtype=float)
        out = np.array([morgan_product_bound(inst.sphere_dim, inst.euclid_dim, x) for x in v.ravel()])
        return out.reshape(v.shape) if v.ndim else float(out[0])

    return ProfileBound(
        kind="morgan-product",
        params={"instance": instance},
        valid_range=(0.0, INF),
        fn=fn,
        provenance=(f"product-region bound on {instance}",),
    )


# --- regimes ---------------------------------------------------------------


@dataclass(frozen=True)
class RegimeRecord:
    interval: tuple[float, float]
    method: str
    margin: float
    passed: bool
    witness: float | None = None
    detail: str = ""

    def to_dict(self) -> dict:
        return {
            "interval": [_json_num(x) for x in self.interval],
            "method": self.method,
            "margin": _json_num(self.margin),
            "passed": self.passed,
            "witness": _json_num(self.witness),
            "detail": self.detail,
        }


def _json_num(x):
    if x is None or not math.isfinite(x):
        return None
    return float(f"{x:.12g}")


def _slack(left, right):
    if right <= 0:
        return INF
    return (left - right) / right


def _right_values(right: SphereMetricSpec, v):
    # the sphere profile is extended by 0 beyond the total volume
    v = np.atleast_1d(np.asarray(v, dtype=float))
    out = np.zeros_like(v)
    inside = v < right.total_volume
    if inside.any():
        out[inside] = right.profile(v[inside])
    return out


def certify_small_volume(left: ProfileBound, right: SphereMetricSpec, c: float, v_a: float) -> RegimeRecord:
    d = right.dim
    if not left.ratio_nonincreasing:
        raise RegimeInapplicable(f"{left.kind} bound lacks the non-increasing ratio property")
    if left.dim != d:
        raise RegimeInapplicable(f"dimension mismatch: left {left.dim}, right {d}")
    ratio = left(v_a) / v_a ** ((d - 1) / d)
    target = c * gamma(d)
    margin = _slack(ratio, target)
    return RegimeRecord(
        (0.0, v_a), "small-volume", margin, margin > MARGIN_FLOOR, v_a,
        f"ratio {ratio:.6f} vs c*gamma_{d} = {target:.6f}",
    )


def certify_grid(left: ProfileBound, right: SphereMetricSpec, c: float, grid) -> RegimeRecord:
    """Nodewise comparison plus a tangent-envelope check on every cell."""
    if not left.concave:
        raise RegimeInapplicable(f"{left.kind} bound is not known to be concave")
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0 or np.any(np.diff(grid) <= 0):
        raise ValueError("grid must be a non-empty strictly increasing list of volumes")
    lv = np.atleast_1d(left(grid))
    rv = c * _right_values(right, grid)
    slack = np.array([_slack(a, b) for a, b in zip(lv, rv)])
    worst = int(np.argmin(slack))
    margin, witness = float(slack[worst]), float(grid[worst])
    if grid.size > 1 and c > 0:
        total = right.total_volume
        inside = grid < total
        slope = np.zeros_like(grid)
        slope[inside] = c * right.profile_slope(grid[inside])
        for i in range(grid.size - 1):
            a, b = grid[i], grid[i + 1]
            if a >= total:
                break
            ra, sa = rv[i], slope[i]
            if b < total:
                rb, sb = rv[i + 1], slope[i + 1]
                if sa - sb > 0:
                    vs = (rb - ra + sa * a - sb * b) / (sa - sb)
                    vs = min(max(vs, a), b)
                else:
                    vs = a if ra >= rb else b
                upper = min(ra + sa * (vs - a), rb + sb * (vs - b))
            else:
                vs = a if sa <= 0 else min(b, total)
                upper = ra + sa * (vs - a)
            chord = lv[i] + (lv[i + 1] - lv[i]) * (vs - a) / (b - a)
            s = _slack(chord, upper)
            if s < margin:
                margin, witness = s, vs
    return RegimeRecord(
        (float(grid[0]), float(grid[-1])), "grid-chord", margin, margin > MARGIN_FLOOR, witness,
        f"{grid.size} nodes; chords of the concave left profile against tangent envelopes of the sphere profile",
    )


def certify_line_dominates_sphere(line: ProfileBound, right: SphereMetricSpec, c: float,
                                  interval: tuple[float, float]) -> RegimeRecord:
    lo, hi = interval
    vlo, vhi = line.valid_range
    if lo < vlo - 1e-12 * abs(vlo) or hi > vhi + 1e-12 * abs(vhi):
        raise RegimeInapplicable(f"line valid on {line.valid_range}, regime needs {interval}")
    if c == 0:
        return RegimeRecord((lo, hi), "line", INF, True, None, "c = 0")

    def excess(v):
        return c * float(_right_values(right, v)[0]) - float(line(v))

    top = min(hi, right.total_volume)
    candidates = []
    if top > lo:
        candidates.append(golden_section_max(excess, lo, top, tol=1e-12))
    candidates.append((hi, excess(hi)))
    v_star, worst = max(candidates, key=lambda p: p[1])
    r_star = c * float(_right_values(right, v_star)[0])
    margin = INF if r_star <= 0 else -worst / r_star
    return RegimeRecord(
        (lo, hi), "line", margin, margin > MARGIN_FLOOR, v_star,
        f"max of c*right - line is {worst:.6g} at v = {v_star:.6g}",
    )


def certify_tail(left_tail: ProfileBound, right: SphereMetricSpec, c: float, v_b: float) -> RegimeRecord:
    if not left_tail.nondecreasing:
        raise RegimeInapplicable(f"{left_tail.kind} bound is not known to be non-decreasing")
    v_peak, a_peak = sphere_profile_peak(right)
    value = float(left_tail(v_b))
    target = c * a_peak
    margin = _slack(value, target)
    where = "beyond" if v_b >= v_peak else "before"
    return RegimeRecord(
        (v_b, INF), "tail", margin, margin > MARGIN_FLOOR, v_b,
        f"left({v_b:.6g}) = {value:.6f} vs c * max right = {target:.6f} (v_b {where} the peak at {v_peak:.6g})",
    )


# --- plans and certificates -------------------------------------------------


@dataclass(frozen=True)
class Regime:
    method: str
    interval: tuple[float, float]
    bound: ProfileBound


@dataclass(frozen=True)
class Plan:
    name: str
    c: float
    right: SphereMetricSpec
    subject: str
    regimes: tuple[Regime, ...]
    coverage: tuple[float, float] = (0.0, INF)
    prerequisites: tuple[str, ...] = ()
    provenance: tuple[str, ...] = ()


@dataclass
class DominationCertificate:
    plan: str
    c: float
    subject: str
    right: SphereMetricSpec
    regimes: list[RegimeRecord]
    status: str
    coverage: tuple[float, float]
    reason: str = ""
    prerequisites: tuple[str, ...] = ()
    provenance: tuple[str, ...] = ()
    bounds: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    @property
    def min_margin(self) -> float:
        return min((r.margin for r in self.regimes), default=-INF)

    def failing(self) -> list[RegimeRecord]:
        return [r for r in self.regimes if not r.passed]

    def to_dict(self, config_echo: dict | None = None) -> dict:
        return {
            "plan": self.plan,
            "statement": f"{self.subject} >= {self.c:.12g} * I(S^{self.right.dim}, {self.right.mu:.12g} g0)",
            "c": _json_num(self.c),
            "right": {"dim": self.right.dim, "mu": _json_num(self.right.mu)},
            "coverage": [_json_num(x) for x in self.coverage],
            "regimes": [r.to_dict() for r in self.regimes],
            "status": self.status,
            "reason": self.reason,
            "prerequisites": list(self.prerequisites),
            "provenance": list(self.provenance),
            "bounds": self.bounds,
            "config_echo": config_echo or {},
        }


def coverage_gaps(regimes, coverage) -> list[tuple[float, float]]:
    gaps = []
    at = coverage[0]
    for reg in regimes:
        lo, hi = reg.interval
        if not math.isclose(lo, at, rel_tol=1e-12, abs_tol=1e-15):
            gaps.append((at, lo))
        at = hi
    if not (at == coverage[1] or math.isclose(at, coverage[1], rel_tol=1e-12)):
        gaps.append((at, coverage[1]))
    return gaps


def certify_domination(plan: Plan, grid_nodes: int = DEFAULT_GRID_NODES) -> DominationCertificate:
    """Run every regime of ``plan``; the certificate passes iff all regimes pass
    and together they cover the plan's volume range without gaps."""
    cert = DominationCertificate(
        plan=plan.name, c=plan.c, subject=plan.subject, right=plan.right, regimes=[],
        status="fail", coverage=plan.coverage, prerequisites=plan.prerequisites,
        provenance=plan.provenance,
        bounds=[dict(reg.bound.describe(), regime=reg.method) for reg in plan.regimes],
    )
    gaps = coverage_gaps(plan.regimes, plan.coverage)
    if gaps:
        cert.reason = "coverage gap: " + ", ".join(f"({a:.12g}, {b:.12g})" for a, b in gaps)
        return cert
    for reg in plan.regimes:
        lo, hi = reg.interval
        try:
            if reg.method == "small-volume":
                rec = certify_small_volume(reg.bound, plan.right, plan.c, hi)
            elif reg.method == "grid-chord":
                grid = np.geomspace(lo, hi, max(grid_nodes, 2)) if lo > 0 else np.linspace(lo, hi, grid_nodes)[1:]
                rec = certify_grid(reg.bound, plan.right, plan.c, grid)
            elif reg.method == "line":
                rec = certify_line_dominates_sphere(reg.bound, plan.right, plan.c, (lo, hi))
            elif reg.method == "tail":
                rec = certify_tail(reg.bound, plan.right, plan.c, lo)
            else:
                raise ValueError(f"unknown regime method {reg.method!r}")
        except RegimeInapplicable as exc:
            rec = RegimeRecord((lo, hi), reg.method, -INF, False, None, f"inapplicable: {exc}")
        cert.regimes.append(rec)
    bad = cert.failing()
    if bad:
        cert.reason = "; ".join(f"{r.method} on [{r.interval[0]:.6g}, {r.interval[1]:.6g}] failed at v = {r.witness}" for r in bad)
    else:
        cert.status = "pass"
    return cert
