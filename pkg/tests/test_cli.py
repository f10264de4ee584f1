import csv
import io
import json
import math
import subprocess
import sys

import pytest

from gentile_unify.cli import CSV_COLUMNS, THREADS_ENV, main, parse_grid, resolve_threads
from gentile_unify.specfun import f_alpha

CASE1 = {
    "system1": {"alpha": 1.1, "temperature": 120, "particle_count": 1e6},
    "system2": {"alpha": 1.3, "temperature": 80, "particle_count": 1e6},
}


def write_config(tmp_path, doc, name="c.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc, indent=2))
    return str(path)


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_case1(tmp_path, capsys):
    code, out, _ = run(["analyze", "--config", write_config(tmp_path, CASE1)], capsys)
    assert code == 0
    doc = json.loads(out)
    u, t = doc["unification"], doc["transfer"]
    assert u["T_unified"] == 100
    assert u["alpha_unified"] == pytest.approx(1.2, abs=1e-15)
    assert t["direction"] == "IntoSystem1"
    assert t["delta_k"] == pytest.approx(367328.58650577981, rel=1e-12)
    assert doc["schema_version"] == 1
    assert len(doc["warnings"]) == len(set(doc["warnings"]))


def test_analyze_identical_systems(tmp_path, capsys):
    # alpha1 f(alpha1) T1^alpha1 = ln k1 at alpha1 = 1.2, T1 = 10
    k = math.exp(1.2 * f_alpha(1.2) * 10 ** 1.2)
    sys_ = {"alpha": 1.2, "temperature": 10, "particle_count": k}
    code, out, _ = run(["analyze", "--config", write_config(tmp_path, {"system1": sys_, "system2": sys_})], capsys)
    doc = json.loads(out)
    assert code == 0
    assert doc["unification"]["energy_residual"] == 0
    assert doc["unification"]["entropy_residual"] == 0
    assert doc["transfer"]["direction"] == "None"


def test_analyze_unsupported_regime(tmp_path, capsys):
    cfg = {
        "system1": {"alpha": 0.6, "temperature": 10, "particle_count": 2},
        "system2": {"alpha": 0.8, "temperature": 10, "particle_count": 2},
    }
    code, out, err = run(["analyze", "--config", write_config(tmp_path, cfg)], capsys)
    assert code == 2
    assert "Unsupported" in out and "unsupported regime" in err


def test_analyze_case2_no_solution(tmp_path, capsys):
    cfg = {
        "system1": {"alpha": 0.8, "temperature": 200, "particle_count": 2},
        "system2": {"alpha": 1.4, "temperature": 100, "particle_count": 2},
    }
    code, out, _ = run(["analyze", "--config", write_config(tmp_path, cfg)], capsys)
    doc = json.loads(out)
    assert code == 1
    assert doc["status"] == "no_solution"
    assert len(doc["residual_curve"]) > 0


def test_analyze_malformed_config(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{\n  "system1": {"alpha": 1.1, "temperature": 10, "particle_count": 2},\n'
                    '  "bogus": 3,\n  "system2": {"alpha": 1.2, "temperature": 10, "particle_count": 2}\n}\n')
    code, _, err = run(["analyze", "--config", str(path)], capsys)
    assert code == 1
    assert f"{path}:3: unknown key 'bogus'" in err

    path.write_text('{\n  "system1": {"alpha": 1.1,,}\n}')
    code, _, err = run(["analyze", "--config", str(path)], capsys)
    assert code == 1 and f"{path}:2:" in err


def test_analyze_flat_keys_and_invalid_state(tmp_path, capsys):
    flat = {
        "system1.alpha": 1.1, "system1.temperature": 120, "system1.particle_count": 1e6,
        "system2.alpha": 1.3, "system2.temperature": 80, "system2.particle_count": 1e6,
        "settings.root_tol": 1e-12,
    }
    code, out, _ = run(["analyze", "--config", write_config(tmp_path, flat)], capsys)
    assert code == 0 and json.loads(out)["inputs"]["settings"]["root_tol"] == 1e-12
    flat["system2.alpha"] = 1.7
    code, _, err = run(["analyze", "--config", write_config(tmp_path, flat)], capsys)
    assert code == 1 and "system2" in err


def test_analyze_econ_labels_only(tmp_path, capsys):
    path = write_config(tmp_path, CASE1)
    _, phys, _ = run(["analyze", "--config", path], capsys)
    _, econ, _ = run(["analyze", "--config", path, "--econ"], capsys)
    p, e = json.loads(phys), json.loads(econ)
    assert e["labels"]["T"] == "capital turnover rate"
    assert e["unification"] == p["unification"] and e["transfer"] == p["transfer"]


def test_sweep_single_point_matches_analyze(tmp_path, capsys):
    path = write_config(tmp_path, CASE1)
    _, analyzed, _ = run(["analyze", "--config", path, "--format", "csv"], capsys)
    out = tmp_path / "s.csv"
    code, _, _ = run(["sweep", "--config", path, "--grid", "T1=120:120:1", "--out", str(out)], capsys)
    assert code == 0
    assert out.read_text() == analyzed


def test_sweep_crosses_no_flow_manifold_once(tmp_path, capsys):
    cfg = {
        "system1": {"alpha": 1.1, "temperature": 10, "particle_count": 1e6},
        "system2": {"alpha": 1.3, "temperature": 1, "particle_count": 1e6},
    }
    code, out, _ = run(["sweep", "--config", write_config(tmp_path, cfg), "--grid", "T1=2:12:21"], capsys)
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [float(r["T1"]) for r in rows] == sorted(float(r["T1"]) for r in rows)
    margins = [float(r["no_flow_margin"]) for r in rows]
    signs = [m > 0 for m in margins]
    assert sum(a != b for a, b in zip(signs, signs[1:])) == 1


def test_sweep_empty_grid_and_cap(tmp_path, capsys):
    path = write_config(tmp_path, CASE1)
    code, out, _ = run(["sweep", "--config", path, "--grid", "T1=1:2:0"], capsys)
    assert code == 0 and out == ",".join(CSV_COLUMNS) + "\n"
    code, _, err = run(["sweep", "--config", path, "--grid", "T1=1:2:50", "--grid", "T2=1:2:50",
                        "--max-cells", "100"], capsys)
    assert code == 1 and "2500 cells" in err and "100" in err


def test_sweep_concurrency_is_deterministic(tmp_path, capsys):
    path = write_config(tmp_path, CASE1)
    grid = ["--grid", "T1=80:160:6", "--grid", "alpha1=1.05:1.3:4", "--grid", "k1=10:1e6:3"]
    _, one, _ = run(["sweep", "--config", path, *grid, "--threads", "1"], capsys)
    _, eight, _ = run(["sweep", "--config", path, *grid, "--threads", "8"], capsys)
    assert one == eight
    assert len(one.splitlines()) == 1 + 72


def test_parse_grid_and_threads(monkeypatch):
    assert parse_grid("k1=1:3:3") == ("k1", [1.0, 2.0, 3.0])
    with pytest.raises(ValueError):
        parse_grid("kappa=1:2:3")
    with pytest.raises(ValueError):
        parse_grid("T1=1:2")
    monkeypatch.setenv(THREADS_ENV, "3")
    assert resolve_threads() == 3
    assert resolve_threads(5) == 5
    monkeypatch.setenv(THREADS_ENV, "0")
    assert resolve_threads() >= 1


def test_verify_default_passes(capsys):
    code, out, err = run(["verify"], capsys)
    doc = json.loads(out)
    assert code == 0
    assert "INFO" in err
    assert all(c["passed"] for c in doc["checks"] if c["hard"])


def test_verify_tight_tolerance_reports_failure(capsys):
    code, _, err = run(["verify", "--tol", "1e-14"], capsys)
    assert code == 1 and "FAIL" in err


def test_module_entry_point_is_deterministic(tmp_path):
    path = write_config(tmp_path, CASE1)
    cmd = [sys.executable, "-m", "gentile_unify", "analyze", "--config", path]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and first
