import json
import math
import subprocess
import sys

import pytest

from isoyamabe.cli import main


def run(argv, capsys):
    try:
        code = main(argv)
    except SystemExit as exc:  # argparse usage errors
        code = exc.code
    out, err = capsys.readouterr()
    return code, out, err


def parse_csv(text):
    lines = text.strip().splitlines()
    assert lines[0] == "volume,area"
    return [tuple(map(float, line.split(","))) for line in lines[1:]]


def test_profile_cylinder_beyond_crossover(capsys):
    code, out, _ = run(["profile", "cylinder", "--k", "3", "--volume", "30"], capsys)
    assert code == 0
    [(v, a)] = parse_csv(out)
    assert v == 30 and a == pytest.approx(4 * math.pi**2, rel=1e-10)


def test_profile_sphere_half_volume(capsys):
    code, out, _ = run(["profile", "sphere", "--dim", "5", "--volume", repr(math.pi**3 / 2)], capsys)
    assert code == 0
    [(_, a)] = parse_csv(out)
    # the equator of S^5 is a unit S^4 of area 8 pi^2 / 3
    assert a == pytest.approx(8 * math.pi**2 / 3, rel=1e-8)


def test_profile_range_json(capsys):
    code, out, _ = run(["--format", "json", "profile", "sphere", "--dim", "3", "--range", "1:5", "--samples", "5"],
                       capsys)
    assert code == 0
    data = json.loads(out)
    assert data["volume"] == [1.0, 2.0, 3.0, 4.0, 5.0]
    assert len(data["area"]) == 5 and all(a > 0 for a in data["area"])


def test_global_flags_after_subcommand(capsys):
    code, out, _ = run(["profile", "sphere", "--dim", "3", "--volume", "1", "--format", "json"], capsys)
    assert code == 0 and json.loads(out)["volume"] == [1.0]


@pytest.mark.parametrize(
    "argv",
    [
        ["profile", "sphere", "--dim", "1", "--volume", "1"],
        ["profile", "cylinder", "--k", "3", "--volume", "-1"],
        ["profile", "sphere", "--dim", "3", "--range", "5:1"],
        ["--tol", "0.1", "profile", "sphere", "--dim", "3"],
        ["certify", "--plan", "nope"],
        ["frobnicate"],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    code, _, _ = run(argv, capsys)
    assert code == 2


def test_repeated_runs_are_byte_identical(tmp_path, capsys):
    texts = []
    for sub in ("a", "b"):
        code, _, _ = run(["--out", str(tmp_path / sub), "profile", "cylinder", "--k", "4", "--samples", "20"], capsys)
        assert code == 0
        texts.append((tmp_path / sub / "profile_cylinder_k4.csv").read_bytes())
    assert texts[0] == texts[1]


def test_certify_schema(tmp_path, capsys):
    code, _, _ = run(["--out", str(tmp_path), "certify", "--plan", "lemma3.1"], capsys)
    assert code == 0
    report = json.loads((tmp_path / "certificate_lemma3.1.json").read_text())
    assert report["plan"] == "lemma3.1"
    assert report["status"] == "pass"
    assert report["config_echo"]["grid_nodes"] == 512
    for reg in report["regimes"]:
        assert {"interval", "method", "margin"} <= set(reg)
        assert reg["margin"] > 0


def test_certify_inflated_lambda_fails(capsys):
    code, out, err = run(["certify", "--plan", "thm1.3", "--lambda", "0.99"], capsys)
    assert code == 1
    assert json.loads(out)["status"] == "fail"
    assert "FAIL thm1.3" in err and "witness" in err


def _write(tmp_path, cfg):
    path = tmp_path / "plan.json"
    path.write_text(json.dumps(cfg))
    return str(path)


CUSTOM = {
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


def test_certify_custom_config(tmp_path, capsys):
    code, out, _ = run(["--grid-nodes", "64", "certify", "--config", _write(tmp_path, CUSTOM)], capsys)
    assert code == 0
    assert json.loads(out)["plan"] == "custom-s3"


def test_certify_coverage_gap(tmp_path, capsys):
    cfg = dict(CUSTOM, regimes=[CUSTOM["regimes"][0], CUSTOM["regimes"][2]])
    code, out, err = run(["certify", "--config", _write(tmp_path, cfg)], capsys)
    assert code == 1
    report = json.loads(out)
    assert report["status"] == "fail"
    assert "coverage gap" in err


def test_certify_bad_config(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    code, _, _ = run(["certify", "--config", str(path)], capsys)
    assert code == 2


def test_reproduce_single_figure(tmp_path, capsys):
    out_dir = tmp_path / "new" / "dir"
    code, _, _ = run(["--out", str(out_dir), "reproduce", "--only", "fig1", "--samples", "10"], capsys)
    assert code == 0
    files = sorted((out_dir / "figures").glob("fig1_p*.csv"))
    panels = {f.name.split("_")[1] for f in files}
    assert len(panels) == 4
    manifest = json.loads((out_dir / "figures" / "manifest.json").read_text())
    assert "fig1" in manifest


def test_reproduce_headlines_and_table(tmp_path, capsys):
    code, out, _ = run(["--out", str(tmp_path), "reproduce", "--only", "headlines", "--only", "alpha-beta"], capsys)
    assert code == 0
    assert "headline S^3 x R^2: 0.7500" in out
    table = (tmp_path / "alpha_beta.csv").read_text().splitlines()
    assert table[0].startswith("k,alpha,beta,ratio")
    assert len(table) == 4


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "isoyamabe", "--version"], capture_output=True, text=True)
    assert res.returncode == 0 and "0.1.0" in res.stdout
