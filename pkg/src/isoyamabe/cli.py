"""Command-line interface: ``profile``, ``certify`` and ``reproduce``.

Exit codes: 0 when everything requested passes, 1 when a certificate or
check fails, 2 for usage or configuration errors.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import __version__
from .bounds import CertificationError
from .checks import acceptance_summary
from .cylinder import CylinderSpec, crossover, crossover_volume, cylinder_profile, profile_ratio
from .figures import DEFAULT_SAMPLES, FIGURE_NAMES, write_figures
from .geometry import SphereMetricSpec, gamma
from .output import dumps, fmt, series_csv, write_atomic, write_json
from .plans import BUILTIN_PLANS, SPHERE_CYLINDER_TABLE, PlanError, plan_from_config, run_plan
from .yamabe import HeadlineAbort, reproduce_headlines

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
PRINTED_ALPHA_BETA = {7: (9.04, 8.96), 8: (9.51, 9.45), 9: (9.49, 9.44)}
REPRODUCE_PARTS = FIGURE_NAMES + ("headlines", "alpha-beta", "certificates")


class UsageError(Exception):
    pass


def _tol(text):
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not 0 < x <= 1e-4:
        raise argparse.ArgumentTypeError("--tol must lie in (0, 1e-4]")
    return x


def _nodes(text):
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if n < 2:
        raise argparse.ArgumentTypeError("--grid-nodes must be >= 2")
    return n


def _positive_int(text):
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if n < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return n


def _range(text):
    try:
        a, b = (float(x) for x in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a:b, got {text!r}")
    if not 0 < a < b:
        raise argparse.ArgumentTypeError("range needs 0 < a < b")
    return a, b


def _add_globals(p, suppress):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--tol", type=_tol, default=d(1e-8), help="relative quadrature tolerance (default 1e-8)")
    p.add_argument("--grid-nodes", type=_nodes, default=d(512), help="nodes per grid regime (default 512)")
    p.add_argument("--format", choices=("csv", "json"), default=d("csv"), help="format of series and tables")
    p.add_argument("--out", default=d(None), metavar="DIR", help="output directory")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="isoyamabe",
        description="Isoperimetric profiles of S^k x R^n, profile domination certificates and Yamabe bounds.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _add_globals(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _add_globals(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    prof = sub.add_parser("profile", parents=[common], help="sample an isoperimetric profile")
    prof_sub = prof.add_subparsers(dest="space", required=True)
    sph = prof_sub.add_parser("sphere", parents=[common], help="round sphere (S^d, mu g0)")
    sph.add_argument("--dim", type=int, required=True)
    cyl = prof_sub.add_parser("cylinder", parents=[common], help="cylinder (S^k x R, mu (g0 + dx^2))")
    cyl.add_argument("--k", type=int, required=True)
    for p in (sph, cyl):
        p.add_argument("--mu", type=float, default=1.0)
        g = p.add_mutually_exclusive_group()
        g.add_argument("--volume", type=float, help="a single volume")
        g.add_argument("--range", type=_range, metavar="A:B", help="volume range")
        p.add_argument("--samples", type=_positive_int, default=100)

    cert = sub.add_parser("certify", parents=[common], help="run a domination certificate")
    src = cert.add_mutually_exclusive_group(required=True)
    src.add_argument("--plan", choices=BUILTIN_PLANS)
    src.add_argument("--config", metavar="FILE", help="JSON file describing a custom plan")
    cert.add_argument("--lambda", dest="lam", type=float, help="override the plan's multiplier")

    rep = sub.add_parser("reproduce", parents=[common], help="regenerate figures, tables and certificates")
    rep.add_argument("--only", action="append", choices=REPRODUCE_PARTS, help="restrict to these parts (repeatable)")
    rep.add_argument("--samples", type=_positive_int, default=DEFAULT_SAMPLES, help="points per figure panel")
    return parser


def _config_echo(args) -> dict:
    return {"tol": args.tol, "grid_nodes": args.grid_nodes, "format": args.format, "out": args.out}


def _emit(args, name: str, text: str):
    if args.out is None:
        sys.stdout.write(text)
    else:
        path = write_atomic(Path(args.out) / name, text)
        print(path)


def _series(fmt_name, volumes, areas) -> str:
    if fmt_name == "csv":
        return series_csv(volumes, areas)
    return dumps({"volume": list(map(float, volumes)), "area": list(map(float, areas))})


def _table(fmt_name, rows: list[dict], columns: list[str]) -> str:
    if fmt_name == "json":
        return dumps(rows)
    lines = [",".join(columns)]
    for r in rows:
        lines.append(",".join(_cell(r.get(c)) for c in columns))
    return "\n".join(lines) + "\n"


def _cell(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (int, float, np.floating)):
        return fmt(x) if math.isfinite(x) else ""
    if isinstance(x, (list, tuple)):
        return ";".join(_cell(v) for v in x)
    return str(x).replace(",", ";")


def cmd_profile(args) -> int:
    if args.space == "sphere":
        spec = SphereMetricSpec(args.dim, args.mu)
        lo, hi = 0.0, spec.total_volume
        fn = spec.profile
        tag = f"sphere_d{args.dim}"
    else:
        spec = CylinderSpec(args.k, args.mu)
        lo, hi = 0.0, 1.5 * crossover_volume(spec, args.tol)
        fn = lambda v: cylinder_profile(spec, v, args.tol)  # noqa: E731
        tag = f"cylinder_k{args.k}"
    if args.volume is not None:
        v = np.array([args.volume])
    elif args.range is not None:
        a, b = args.range
        v = np.linspace(a, b, args.samples) if args.samples > 1 else np.array([a])
    else:
        # interior points of the default range, avoiding the endpoints
        v = lo + (hi - lo) * np.arange(1, args.samples + 1) / (args.samples + 1)
    area = np.atleast_1d(fn(v))
    _emit(args, f"profile_{tag}.{args.format}", _series(args.format, v, area))
    return EXIT_OK


def _load_config(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc


def cmd_certify(args) -> int:
    if args.config:
        plan = plan_from_config(_load_config(args.config), args.tol)
        if args.lam is not None:
            plan = replace(plan, c=args.lam)
        run = run_plan(plan, args.grid_nodes, args.tol)
    else:
        run = run_plan(args.plan, args.grid_nodes, args.tol, c=args.lam)
    cert = run.certificate
    report = cert.to_dict(_config_echo(args) | {"lambda_override": args.lam})
    report["prerequisite_status"] = {k: v.status for k, v in run.prerequisites.items()}
    _emit(args, f"certificate_{cert.plan}.json", dumps(report))
    if not cert.passed:
        for r in cert.failing():
            print(f"FAIL {cert.plan}: {r.method} on [{fmt(r.interval[0])}, {fmt(r.interval[1])}] "
                  f"margin {fmt(r.margin)} witness v = {r.witness}", file=sys.stderr)
        if cert.reason and not cert.failing():
            print(f"FAIL {cert.plan}: {cert.reason}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def alpha_beta_rows(tol) -> list[dict]:
    rows = []
    for k, (alpha, beta) in SPHERE_CYLINDER_TABLE.items():
        ratio = profile_ratio(CylinderSpec(k), alpha, tol)
        target = beta * gamma(k + 1)
        p_ratio, p_target = PRINTED_ALPHA_BETA[k]
        rows.append({
            "k": k, "alpha": alpha, "beta": beta, "ratio": ratio, "beta_gamma": target,
            "printed_ratio": p_ratio, "printed_beta_gamma": p_target,
            "holds": bool(ratio > target), "matches_printed": bool(abs(ratio - p_ratio) <= 0.02),
            "v0": crossover(k, tol)[1],
        })
    return rows


def cmd_reproduce(args) -> int:
    out = Path(args.out if args.out is not None else "reproduction")
    out.mkdir(parents=True, exist_ok=True)
    parts = set(args.only or REPRODUCE_PARTS)
    full = args.only is None
    status = EXIT_OK

    figs = [f for f in FIGURE_NAMES if f in parts]
    if figs:
        write_figures(out / "figures", figs, args.samples, args.tol)
        print(f"figures: {', '.join(figs)} -> {out / 'figures'}")

    if "alpha-beta" in parts:
        cols = ["k", "alpha", "beta", "ratio", "beta_gamma", "printed_ratio", "printed_beta_gamma",
                "holds", "matches_printed", "v0"]
        write_atomic(out / f"alpha_beta.{args.format}", _table(args.format, alpha_beta_rows(args.tol), cols))
        print(f"alpha-beta table -> {out}")

    certs = {}
    if parts & {"certificates", "headlines"}:
        cache = {}
        for name in BUILTIN_PLANS:
            certs[name] = run_plan(name, args.grid_nodes, args.tol, cache=cache).certificate
        for name, cert in certs.items():
            write_json(out / "certificates" / f"{name}.json", cert.to_dict(_config_echo(args)))
            print(f"certificate {name}: {cert.status}")
            if not cert.passed:
                status = EXIT_FAIL

    headline_status = None
    if "headlines" in parts:
        try:
            rows = reproduce_headlines({n: c.passed for n, c in certs.items()})
            cols = ["space", "k", "n", "mu", "lambda", "branch_values", "branch", "ratio", "absolute",
                    "printed", "certificate_id", "implied"]
            write_atomic(out / f"headlines.{args.format}", _table(args.format, rows, cols))
            headline_status = "pass"
            for r in rows:
                print(f"headline {r['space']}: {r['ratio']:.4f} Y(S^{r['k'] + r['n']})")
        except HeadlineAbort as exc:
            print(f"headlines aborted: {exc}", file=sys.stderr)
            headline_status = f"aborted: {exc}"
            status = EXIT_FAIL

    if full:
        criteria = acceptance_summary(certs, args.tol)
        summary = {
            "status": "pass" if status == EXIT_OK and all(c["passed"] for c in criteria) else "fail",
            "criteria": criteria,
            "certificates": {n: c.status for n, c in certs.items()},
            "headlines": headline_status,
            "config_echo": _config_echo(args) | {"samples": args.samples},
        }
        write_json(out / "summary.json", summary)
        for c in criteria:
            print(f"criterion {c['id']} ({c['criterion']}): {'pass' if c['passed'] else 'FAIL'}")
        if summary["status"] != "pass":
            status = EXIT_FAIL
    return status


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "profile":
            return cmd_profile(args)
        if args.command == "certify":
            return cmd_certify(args)
        return cmd_reproduce(args)
    except (UsageError, PlanError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CertificationError as exc:
        print(f"certification error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
