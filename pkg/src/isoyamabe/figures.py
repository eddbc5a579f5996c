"""Plot data for the profile comparisons behind each certificate.

Every figure is a list of panels (volume ranges); every panel samples a
left curve (a lower bound for the profile being estimated) and a right
curve (the scaled sphere profile it must dominate). No plotting happens
here; the output is two-column CSV per curve plus a JSON manifest.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .bounds import chord_line, cylinder_exact, morgan_power_law
from .cylinder import DEFAULT_RTOL
from .geometry import SphereMetricSpec
from .output import series_csv, write_atomic, write_json
from .plans import ANCHOR_S2XR3, ANCHOR_S3XR2, THM12_C, THM13_C, s2xr3_bound, s3xr2_bound

DEFAULT_SAMPLES = 200


@dataclass(frozen=True)
class Curve:
    label: str
    description: str
    fn: object


@dataclass(frozen=True)
class Figure:
    name: str
    title: str
    panels: tuple[tuple[float, float], ...]
    curves: tuple[Curve, ...]
    certificate: str


def _scaled_sphere(c, dim, mu):
    spec = SphereMetricSpec(dim, mu)

    def fn(v):
        v = np.asarray(v, dtype=float)
        # beyond the total volume the extended profile is 0
        out = np.zeros_like(v)
        inside = v < spec.total_volume
        out[inside] = c * spec.profile(v[inside])
        return out

    return fn, spec.total_volume


def _sphere_cylinder_figure(name, k, c, cuts, cert, rtol):
    # panels run between consecutive cuts, the last one up to the sphere's total volume
    right, total = _scaled_sphere(c, k + 1, 2.0 ** (2.0 / k))
    mu_text = f"2^(2/{k})"
    edges = list(cuts) + [total]
    return Figure(
        name, f"I(S^{k} x R) against {c:g} I(S^{k + 1}, {mu_text} g0)",
        tuple(zip(edges[:-1], edges[1:])),
        (Curve("left", f"I(S^{k} x R)", cylinder_exact(k, rtol=rtol)), Curve("right", f"{c:g} I(S^{k + 1}, {mu_text} g0)", right)),
        cert,
    )


def build_figures(rtol: float = DEFAULT_RTOL) -> dict[str, Figure]:
    figs = {}
    figs["fig1"] = _sphere_cylinder_figure("fig1", 3, 0.99, (0.03, 0.1, 0.3, 2.0), "lemma3.1", rtol)

    right2, _ = _scaled_sphere(THM13_C / 0.99, 5, 2.5)
    figs["fig2"] = Figure(
        "fig2", "I(S^4 x R, 2^(2/3)) against (sqrt(3)/2)/0.99 I(S^5, 5/2 g0)", ((4.0, 80.0),),
        (Curve("left", "I(S^4 x R, 2^(2/3))", cylinder_exact(4, 2.0 ** (2 / 3), rtol=rtol)),
         Curve("right", "(sqrt(3)/2)/0.99 I(S^5, 5/2 g0)", right2)),
        "lemma3.4",
    )

    composed = s3xr2_bound(rtol)
    power = morgan_power_law("S3xR2")
    line = chord_line((ANCHOR_S3XR2, float(composed(ANCHOR_S3XR2))), (450.0, float(power(450.0))))
    figs["fig3"] = Figure(
        "fig3", "chord l(v) joining two lower bounds for I(S^3 x R^2)", ((ANCHOR_S3XR2, 450.0),),
        (Curve("line", "chord l(v)", line),
         Curve("composed", "0.99 I(S^4 x R, 2^(2/3))", composed),
         Curve("power_law", "(2 pi)^(3/2) sqrt(v) / sqrt(2)", power)),
        "thm1.3",
    )
    right4, _ = _scaled_sphere(THM13_C, 5, 2.5)
    figs["fig4"] = Figure(
        "fig4", "chord l(v) against (sqrt(3)/2) I(S^5, 5/2 g0)", ((80.0, 450.0),),
        (Curve("line", "chord l(v)", line), Curve("right", "(sqrt(3)/2) I(S^5, 5/2 g0)", right4)),
        "thm1.3",
    )

    right5, _ = _scaled_sphere(3 * math.sqrt(7) / 9.9, 5, 6.3)
    figs["fig5"] = Figure(
        "fig5", "I(S^4 x R, 2^(5/3)) against (3 sqrt(7)/9.9) I(S^5, 63/10 g0)", ((100.0, ANCHOR_S2XR3),),
        (Curve("left", "I(S^4 x R, 2^(5/3))", cylinder_exact(4, 2.0 ** (5 / 3), rtol=rtol)),
         Curve("right", "(3 sqrt(7)/9.9) I(S^5, 63/10 g0)", right5)),
        "lemma4.2",
    )

    composed2 = s2xr3_bound(rtol)
    power2 = morgan_power_law("S2xR3")
    line2 = chord_line((ANCHOR_S2XR3, float(composed2(ANCHOR_S2XR3))), (1500.0, float(power2(1500.0))))
    right6, _ = _scaled_sphere(THM12_C, 5, 6.3)
    figs["fig6"] = Figure(
        "fig6", "chord f(v) against (3 sqrt(7)/10) I(S^5, 63/10 g0)", ((ANCHOR_S2XR3, 1500.0),),
        (Curve("line", "chord f(v)", line2), Curve("right", "(3 sqrt(7)/10) I(S^5, 63/10 g0)", right6)),
        "thm1.2",
    )

    figs["fig7"] = _sphere_cylinder_figure("fig7", 7, 0.94, (0.005, 0.078, 1.9), "lemma5.1-k7", rtol)
    figs["fig8"] = _sphere_cylinder_figure("fig8", 8, 0.92, (0.0068, 0.591), "lemma5.1-k8", rtol)
    figs["fig9"] = _sphere_cylinder_figure("fig9", 9, 0.86, (0.0018, 0.028), "lemma5.1-k9", rtol)
    return figs


FIGURE_NAMES = tuple(f"fig{i}" for i in range(1, 10))


def sample_volumes(lo: float, hi: float, samples: int) -> np.ndarray:
    """Log-spaced when the panel spans more than a decade, linear otherwise."""
    if samples == 1:
        return np.array([lo])
    if lo > 0 and hi / lo > 10:
        v = np.geomspace(lo, hi, samples)
    else:
        v = np.linspace(lo, hi, samples)
    v[-1] = hi
    return v


def write_figures(out_dir, names=FIGURE_NAMES, samples: int = DEFAULT_SAMPLES,
                  rtol: float = DEFAULT_RTOL) -> dict:
    """Write CSV files for the requested figures and return their manifest entries."""
    out_dir = Path(out_dir)
    figs = build_figures(rtol)
    manifest = {}
    for name in names:
        fig = figs[name]
        panels = []
        for p, (lo, hi) in enumerate(fig.panels, start=1):
            v = sample_volumes(lo, hi, samples)
            entries = []
            for curve in fig.curves:
                area = np.asarray(curve.fn(v), dtype=float)
                fname = f"{name}_p{p}_{curve.label}.csv"
                write_atomic(out_dir / fname, series_csv(v, area))
                entries.append({"label": curve.label, "description": curve.description, "file": fname})
            panels.append({"range": [lo, hi], "curves": entries})
        manifest[name] = {"title": fig.title, "certificate": fig.certificate, "panels": panels}
    write_json(out_dir / "manifest.json", manifest)
    return manifest
