"""Run the built-in domination certificates and show what each regime proved.

Also shows a failing run: asking for S^3 x R^2 to dominate 0.99 of the
scaled S^5 profile is too much, and the certificate names where it breaks.
"""
from isoyamabe.plans import BUILTIN_PLANS, run_plan

cache = {}
for name in BUILTIN_PLANS:
    cert = run_plan(name, cache=cache).certificate
    print(f"{name:12s} c = {cert.c:.6f}  {cert.status}")
    for r in cert.regimes:
        lo, hi = r.interval
        print(f"    {r.method:13s} [{lo:g}, {hi:g}]  margin {r.margin:.3e}  {r.detail}")

bad = run_plan("thm1.3", c=0.99).certificate
print(f"\nthm1.3 with c = 0.99: {bad.status}")
for r in bad.failing():
    print(f"    {r.method} on [{r.interval[0]:g}, {r.interval[1]:g}] fails near v = {r.witness:.6g}")
