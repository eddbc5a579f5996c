import math

import numpy as np
import pytest

from isoyamabe.geometry import gamma
from isoyamabe.plans import BUILTIN_PLANS, PlanError, build_plan, plan_from_config, run_plan


@pytest.fixture(scope="module")
def certificates():
    cache = {}
    return {name: run_plan(name, cache=cache).certificate for name in BUILTIN_PLANS}


@pytest.mark.parametrize("name", BUILTIN_PLANS)
def test_builtin_plan_passes(certificates, name):
    cert = certificates[name]
    assert cert.status == "pass", cert.reason
    assert all(r.margin > 1e-6 for r in cert.regimes)


@pytest.mark.parametrize("name", BUILTIN_PLANS)
def test_soundness_spot_check(certificates, name):
    """Direct comparison at 100 random volumes inside every regime."""
    plan = build_plan(name)
    rng = np.random.default_rng(abs(hash(name)) % 2**32)
    total = plan.right.total_volume
    for reg in plan.regimes:
        lo, hi = reg.interval
        if not math.isfinite(hi):
            hi = max(10 * lo, total)
        v = rng.uniform(max(lo, 1e-12), hi, 100)
        left = np.atleast_1d(reg.bound(v))
        right = np.array([plan.c * plan.right.profile(x) if x < total else 0.0 for x in v])
        assert np.all(left >= right), (name, reg.method, v[np.argmin(left - right)])


def test_published_multipliers():
    assert build_plan("thm1.3").c == pytest.approx(math.sqrt(3) / 2)
    assert build_plan("thm1.2").c == pytest.approx(3 * math.sqrt(7) / 10)
    assert build_plan("thm1.2").right.mu == 6.3
    assert build_plan("cor5.2-k7").c == pytest.approx(0.94 * 0.92)
    assert build_plan("cor5.2-k8").right.mu == pytest.approx(2 ** (2 / 8 + 2 / 9))
    for k, beta in ((7, 0.94), (8, 0.92), (9, 0.86)):
        plan = build_plan(f"lemma5.1-k{k}")
        assert plan.c == beta
        assert plan.right.mu == pytest.approx(2 ** (2 / k))


def test_plan_structure():
    plan = build_plan("thm1.3")
    assert [r.method for r in plan.regimes] == ["small-volume", "grid-chord", "line", "tail"]
    assert [r.interval for r in plan.regimes][:3] == [(0.0, 0.03), (0.03, 80.0), (80.0, 450.0)]
    plan = build_plan("thm1.2")
    assert [r.interval[0] for r in plan.regimes] == [0.0, 100.0, 427.18, 1500.0]


def test_thm12_line_anchor_is_recomputed():
    line = build_plan("thm1.2").regimes[2].bound
    assert line.params["y1"] == pytest.approx(525.245, abs=1e-3)
    assert line.params["y2"] == pytest.approx(2 ** (5 / 6) * (4500 * math.pi) ** (2 / 3), rel=1e-12)


def test_inflated_multiplier_fails_with_witness():
    cert = run_plan("thm1.3", c=0.99).certificate
    assert cert.status == "fail"
    bad = cert.failing()
    assert bad and all(r.witness is not None for r in bad)
    # a small-volume witness is the cutoff where the ratio test fails: the
    # ratio there falls short of c * gamma_d
    plan = build_plan("thm1.3", c=0.99)
    for rec in bad:
        reg = next(r for r in plan.regimes if r.interval[0] == rec.interval[0])
        v = rec.witness
        if rec.method == "small-volume":
            assert v == reg.interval[1]
            assert reg.bound(v) / v ** 0.8 < 0.99 * gamma(5)
        assert rec.margin <= 1e-6


def test_failed_prerequisite_blocks_plan():
    run = run_plan("thm1.3", disabled=("lemma3.1",))
    assert run.certificate.status == "fail"
    assert "lemma3.1" in run.certificate.reason
    assert run.certificate.regimes == []


def test_unknown_plan():
    with pytest.raises(PlanError):
        build_plan("thm9.9")


def test_custom_plan_from_config():
    cfg = {
        "name": "custom-s3",
        "c": 0.95,
        "right": {"dim": 4, "mu": 2 ** (2 / 3)},
        "left": {"kind": "cylinder-exact", "k": 3},
        "regimes": [
            {"method": "small-volume", "interval": [0, 0.03]},
            {"method": "grid-chord", "interval": [0.03, 20.8576]},
            {"method": "tail", "interval": [20.8576, None], "bound": {"kind": "constant", "value": 4 * math.pi**2}},
        ],
    }
    cert = run_plan(plan_from_config(cfg), grid_nodes=64).certificate
    assert cert.status == "pass"
    assert cert.plan == "custom-s3"


def test_custom_plan_errors():
    with pytest.raises(PlanError):
        plan_from_config({"c": 1.0})
    with pytest.raises(PlanError):
        plan_from_config({"c": 1.0, "right": {"dim": 4}, "left": {"kind": "nope"}, "regimes": []})
