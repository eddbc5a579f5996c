"""Lower bounds for Yamabe invariants of products with Euclidean factors.

Each row combines a curvature term with the square of a profile
domination multiplier; the smaller of the two is the bound, expressed as a
fraction of the Yamabe invariant of the round sphere of the same dimension.
"""
from isoyamabe.plans import BUILTIN_PLANS, run_plan
from isoyamabe.yamabe import reproduce_headlines, yamabe_sphere

cache = {}
status = {name: run_plan(name, cache=cache).certificate.passed for name in BUILTIN_PLANS}
for row in reproduce_headlines(status):
    d = row["k"] + row["n"]
    terms = ", ".join(f"{t:.5f}" for t in row["branch_values"])
    print(f"{row['space']:12s} ratio {row['ratio']:.5f}  ({terms})  "
          f"= {row['absolute']:.3f} of Y(S^{d}) = {yamabe_sphere(d):.3f}")
