"""Built-in domination plans and a runner that resolves their prerequisites.

Each plan states an inequality I_subject >= c * I_(S^d, mu g0) and the
regimes that establish it. Some plans only hold if earlier ones do, e.g. a
product-with-R composition is only valid once the inequality it composes is
certified; those are listed as prerequisites and run first.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .bounds import (
    DEFAULT_GRID_NODES,
    INF,
    DominationCertificate,
    Plan,
    Regime,
    SphereDomination,
    certify_domination,
    chord_line,
    constant,
    cylinder_exact,
    morgan_power_law,
    power_law,
    ros_compose,
    sphere_exact,
    verify_auxiliary_min,
    CertificationError,
)
from .cylinder import DEFAULT_RTOL, crossover
from .geometry import SphereMetricSpec, unit_sphere_volume

# (small-volume cutoff alpha_k, multiplier beta_k) for S^k x R against S^(k+1) at 2^(2/k)
SPHERE_CYLINDER_TABLE = {7: (0.0052, 0.94), 8: (0.0068, 0.92), 9: (0.0018, 0.86)}

LAMBDA_S3 = 0.99
THM13_C = math.sqrt(3.0) / 2.0
THM12_C = 3.0 * math.sqrt(7.0) / 10.0
ANCHOR_S3XR2 = 75.517
ANCHOR_S2XR3 = 427.18

BUILTIN_PLANS = (
    "lemma3.1", "lemma3.4", "lemma4.2", "thm1.3", "thm1.2",
    "lemma5.1-k7", "lemma5.1-k8", "lemma5.1-k9", "cor5.2-k7", "cor5.2-k8",
)


class PlanError(ValueError):
    """Unknown plan name or malformed plan configuration."""


def _cylinder_vs_sphere(name, k, c, small_cut, rtol, scale_mu=1.0, lam=1.0, prereq=(), provenance=()):
    """lam * I_(S^k x R, mu) >= c * I_(S^(k+1), mu 2^(2/k)) on all volumes, mu = scale_mu.

    Regimes: small volumes up to ``small_cut`` (given at mu = 1), the grid up
    to the crossover volume, then the constant boundary area of cylindrical
    sections.
    """
    vol_scale = scale_mu ** ((k + 1) / 2)
    _, v0 = crossover(k, rtol)
    if lam == 1.0 and scale_mu == 1.0:
        left = cylinder_exact(k, 1.0, rtol=rtol)
        subject = f"I(S^{k} x R)"
    else:
        left = ros_compose(
            SphereDomination(f"S^{k - 1} x R", lam, SphereMetricSpec(k, scale_mu), provenance), rtol
        )
        subject = f"I(S^{k - 1} x R^2)"
    sections = 2.0 * unit_sphere_volume(k) * lam * scale_mu ** (k / 2)
    tail = constant(sections, (v0 * vol_scale, INF), ("boundary area of cylindrical sections beyond the crossover",))
    right = SphereMetricSpec(k + 1, scale_mu * 2.0 ** (2.0 / k))
    return Plan(
        name=name, c=c, right=right, subject=subject,
        regimes=(
            Regime("small-volume", (0.0, small_cut * vol_scale), left),
            Regime("grid-chord", (small_cut * vol_scale, v0 * vol_scale), left),
            Regime("tail", (v0 * vol_scale, INF), tail),
        ),
        prerequisites=prereq, provenance=provenance,
    )


def _lemma31(rtol, c=None):
    return _cylinder_vs_sphere("lemma3.1", 3, LAMBDA_S3 if c is None else c, 0.03, rtol)


def _lemma34(rtol, c=None):
    left = cylinder_exact(4, 2.0 ** (2 / 3), rtol=rtol)
    return Plan(
        "lemma3.4", THM13_C / LAMBDA_S3 if c is None else c, SphereMetricSpec(5, 2.5),
        "I(S^4 x R, 2^(2/3))",
        (Regime("small-volume", (0.0, 4.0), left), Regime("grid-chord", (4.0, 80.0), left)),
        coverage=(0.0, 80.0),
    )


def _lemma42(rtol, c=None):
    left = cylinder_exact(4, 2.0 ** (5 / 3), rtol=rtol)
    return Plan(
        "lemma4.2", 3.0 * math.sqrt(7.0) / 9.9 if c is None else c, SphereMetricSpec(5, 6.3),
        "I(S^4 x R, 2^(5/3))",
        (Regime("small-volume", (0.0, 100.0), left), Regime("grid-chord", (100.0, ANCHOR_S2XR3), left)),
        coverage=(0.0, ANCHOR_S2XR3),
    )


def s3xr2_bound(rtol=DEFAULT_RTOL):
    """0.99 * I_(S^4 x R, 2^(2/3)), a lower bound for I(S^3 x R^2) once lemma3.1 holds."""
    return ros_compose(
        SphereDomination("S^3 x R", LAMBDA_S3, SphereMetricSpec(4, 2.0 ** (2 / 3)), ("certificate lemma3.1",)),
        rtol,
    )


def s2xr3_bound(rtol=DEFAULT_RTOL):
    """0.99 * I_(S^4 x R, 2^(5/3)), a lower bound for I(S^2 x R^3).

    Chain: I(S^2 x R) >= I(S^3, 2 g0) is a known comparison; two products
    with R give I(S^2 x R^3) >= I(S^3 x R^2, 2(g0 + dx^2)), and lemma3.1
    rescaled by 2 and composed with R bounds that by 0.99 I(S^4 x R, 2^(5/3)).
    """
    return ros_compose(
        SphereDomination(
            "(S^3 x R, 2(g0 + dx^2))",
            LAMBDA_S3,
            SphereMetricSpec(4, 2.0 ** (5 / 3)),
            (
                "assumed: I(S^2 x R) >= I(S^3, 2 g0) (published comparison, not recomputed)",
                "product with R twice: I(S^2 x R^3) >= I(S^3 x R^2, 2(g0 + dx^2))",
                "certificate lemma3.1 rescaled by 2: I(S^3 x R, 2) >= 0.99 I(S^4, 2^(5/3))",
            ),
        ),
        rtol,
    )


def _thm13(rtol, c=None):
    left = s3xr2_bound(rtol)
    tail = morgan_power_law("S3xR2")
    v2 = 450.0
    line = chord_line(
        (ANCHOR_S3XR2, float(left(ANCHOR_S3XR2))),
        (v2, float(tail(v2))),
        ("left anchor: 0.99 I(S^4 x R, 2^(2/3)) at 75.517", "right anchor: product-region power law at 450",
         "valid because I(S^3 x R^2) is concave"),
    )
    return Plan(
        "thm1.3", THM13_C if c is None else c, SphereMetricSpec(5, 2.5), "I(S^3 x R^2)",
        (
            Regime("small-volume", (0.0, 0.03), left),
            Regime("grid-chord", (0.03, 80.0), left),
            Regime("line", (80.0, v2), line),
            Regime("tail", (v2, INF), tail),
        ),
        prerequisites=("lemma3.1",),
        provenance=("product-region auxiliary minimum for S3xR2 verified",),
    )


def _thm12(rtol, c=None):
    left = s2xr3_bound(rtol)
    tail = morgan_power_law("S2xR3")
    v2 = 1500.0
    line = chord_line(
        (ANCHOR_S2XR3, float(left(ANCHOR_S2XR3))),
        (v2, float(tail(v2))),
        ("left anchor recomputed: 0.99 I(S^4 x R, 2^(5/3)) at 427.18",
         "right anchor: product-region power law at 1500", "valid because I(S^2 x R^3) is concave"),
    )
    return Plan(
        "thm1.2", THM12_C if c is None else c, SphereMetricSpec(5, 6.3), "I(S^2 x R^3)",
        (
            Regime("small-volume", (0.0, 100.0), left),
            Regime("grid-chord", (100.0, ANCHOR_S2XR3), left),
            Regime("line", (ANCHOR_S2XR3, v2), line),
            Regime("tail", (v2, INF), tail),
        ),
        prerequisites=("lemma3.1",),
        provenance=("product-region auxiliary minimum for S2xR3 verified",),
    )


def _lemma51(k, rtol, c=None):
    alpha, beta = SPHERE_CYLINDER_TABLE[k]
    return _cylinder_vs_sphere(f"lemma5.1-k{k}", k, beta if c is None else c, alpha, rtol)


def _cor52(n, rtol, c=None):
    # S^n x R^2 >= beta_n I(S^(n+1) x R, 2^(2/n)) >= beta_n beta_(n+1) I(S^(n+2), 2^(2/n + 2/(n+1)))
    beta_n = SPHERE_CYLINDER_TABLE[n][1]
    alpha1, beta1 = SPHERE_CYLINDER_TABLE[n + 1]
    return _cylinder_vs_sphere(
        f"cor5.2-k{n}", n + 1, beta_n * beta1 if c is None else c, alpha1, rtol,
        scale_mu=2.0 ** (2.0 / n), lam=beta_n,
        prereq=(f"lemma5.1-k{n}", f"lemma5.1-k{n + 1}"),
        provenance=(f"certificate lemma5.1-k{n}",),
    )


def build_plan(name: str, rtol: float = DEFAULT_RTOL, c: float | None = None) -> Plan:
    """Construct a built-in plan; ``c`` overrides its multiplier."""
    if name == "lemma3.1":
        return _lemma31(rtol, c)
    if name == "lemma3.4":
        return _lemma34(rtol, c)
    if name == "lemma4.2":
        return _lemma42(rtol, c)
    if name == "thm1.3":
        return _thm13(rtol, c)
    if name == "thm1.2":
        return _thm12(rtol, c)
    if name.startswith("lemma5.1-k") and name[10:].isdigit() and int(name[10:]) in SPHERE_CYLINDER_TABLE:
        return _lemma51(int(name[10:]), rtol, c)
    if name in ("cor5.2-k7", "cor5.2-k8"):
        return _cor52(int(name[8:]), rtol, c)
    raise PlanError(f"unknown plan {name!r}; choose from {', '.join(BUILTIN_PLANS)}")


# --- custom plans ------------------------------------------------------------


def _num(x):
    return INF if x is None else float(x)


def bound_from_config(cfg: dict, rtol: float = DEFAULT_RTOL):
    try:
        kind = cfg["kind"]
        src = ("user-supplied",)
        if kind == "cylinder-exact":
            return cylinder_exact(int(cfg["k"]), float(cfg.get("mu", 1.0)), float(cfg.get("scale", 1.0)), rtol)
        if kind == "sphere-exact":
            return sphere_exact(SphereMetricSpec(int(cfg["dim"]), float(cfg.get("mu", 1.0))), float(cfg.get("scale", 1.0)))
        if kind == "ros-composed":
            dom = SphereDomination(cfg.get("subject", "X"), float(cfg["lam"]),
                                   SphereMetricSpec(int(cfg["d"]), float(cfg.get("mu", 1.0))), src)
            return ros_compose(dom, rtol)
        if kind == "power-law":
            rng = cfg.get("valid_range", [0.0, None])
            return power_law(float(cfg["a"]), float(cfg["q"]), (float(rng[0]), _num(rng[1])), src)
        if kind == "morgan-power-law":
            return morgan_power_law(cfg["instance"])
        if kind == "constant":
            rng = cfg.get("valid_range", [0.0, None])
            return constant(float(cfg["value"]), (float(rng[0]), _num(rng[1])), src)
        if kind == "chord-line":
            return chord_line(tuple(cfg["p1"]), tuple(cfg["p2"]), src)
    except (KeyError, TypeError) as exc:
        raise PlanError(f"bad bound configuration {cfg!r}: {exc}") from exc
    except CertificationError:
        raise
    except ValueError as exc:
        raise PlanError(f"bad bound configuration {cfg!r}: {exc}") from exc
    raise PlanError(f"unknown bound kind {cfg.get('kind')!r}")


def plan_from_config(cfg: dict, rtol: float = DEFAULT_RTOL) -> Plan:
    """Build a plan from a JSON-style dict.

    Keys: ``name``, ``c``, ``right`` ({dim, mu}), ``left`` (bound config),
    ``regimes`` (list of {method, interval, optional bound}), optional
    ``coverage`` (default [0, null], null meaning infinity).
    """
    try:
        left = bound_from_config(cfg["left"], rtol)
        right = SphereMetricSpec(int(cfg["right"]["dim"]), float(cfg["right"].get("mu", 1.0)))
        regimes = []
        for reg in cfg["regimes"]:
            lo, hi = reg["interval"]
            bound = bound_from_config(reg["bound"], rtol) if "bound" in reg else left
            regimes.append(Regime(reg["method"], (float(lo), _num(hi)), bound))
        cov = cfg.get("coverage", [0.0, None])
        return Plan(
            name=cfg.get("name", "custom"), c=float(cfg["c"]), right=right,
            subject=cfg.get("subject", left.kind), regimes=tuple(regimes),
            coverage=(float(cov[0]), _num(cov[1])),
        )
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, PlanError):
            raise
        raise PlanError(f"bad plan configuration: {exc}") from exc


# --- running ------------------------------------------------------------------


@dataclass
class PlanRun:
    certificate: DominationCertificate
    prerequisites: dict[str, DominationCertificate] = field(default_factory=dict)


def _prerequisite_failure(plan: Plan, failed: list[str]) -> DominationCertificate:
    return DominationCertificate(
        plan=plan.name, c=plan.c, subject=plan.subject, right=plan.right, regimes=[],
        status="fail", coverage=plan.coverage,
        reason="prerequisite failed: " + ", ".join(failed),
        prerequisites=plan.prerequisites, provenance=plan.provenance,
    )


def run_plan(name_or_plan, grid_nodes: int = DEFAULT_GRID_NODES, rtol: float = DEFAULT_RTOL,
             c: float | None = None, cache: dict | None = None, disabled=()) -> PlanRun:
    """Certify a plan after certifying its prerequisites (with their own multipliers).

    ``cache`` maps plan names to finished certificates and is filled in.
    Plans named in ``disabled`` are reported as failed without running.
    """
    cache = {} if cache is None else cache
    try:
        plan = name_or_plan if isinstance(name_or_plan, Plan) else build_plan(name_or_plan, rtol, c)
    except CertificationError as exc:
        plan_name = name_or_plan if isinstance(name_or_plan, str) else name_or_plan.name
        cert = DominationCertificate(plan_name, c or 0.0, "", SphereMetricSpec(2), [], "fail", (0.0, INF),
                                     reason=f"auxiliary check failed: {exc}")
        return PlanRun(cert)
    prereq = {}
    for dep in plan.prerequisites:
        if dep not in cache:
            cache[dep] = run_plan(dep, grid_nodes, rtol, cache=cache, disabled=disabled).certificate
        prereq[dep] = cache[dep]
    failed = [d for d, cert in prereq.items() if not cert.passed]
    if plan.name in disabled:
        cert = _prerequisite_failure(plan, [])
        cert.reason = "certificate disabled"
    elif failed:
        cert = _prerequisite_failure(plan, failed)
    else:
        cert = certify_domination(plan, grid_nodes)
    if c is None and not isinstance(name_or_plan, Plan):
        cache[plan.name] = cert
    return PlanRun(cert, prereq)


def auxiliary_minima() -> dict[str, tuple[float, float]]:
    return {name: verify_auxiliary_min(name) for name in ("S3xR2", "S2xR3")}
