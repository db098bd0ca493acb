import json
import subprocess
import sys
from math import sqrt

import pytest

from periodviz.cli import run


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_gauss17_exit_zero(capsys):
    code, out, _ = call(capsys, "verify", "gauss17", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["passed"] and doc["max_defect"] < 1e-12
    assert "elapsed" not in doc


def test_symmetry_trivial(capsys):
    code, out, _ = call(capsys, "verify", "symmetry", "--modulus", "5", "--omega", "4", "--format", "json")
    assert code == 0
    assert json.loads(out)["details"]["k"] == 1


def test_containment_hypothesis_gate(capsys):
    code, _, err = call(capsys, "verify", "containment", "--modulus", "35", "--omega", "9")
    assert code == 3 and "hypothesis" in err


def test_orders_not_coprime_is_a_hypothesis_violation(capsys):
    code, _, _ = call(capsys, "verify", "multiplicativity", "--m", "7", "--n", "9", "--omega", "2")
    assert code == 3


@pytest.mark.parametrize(
    "argv",
    [
        ["periods", "--modulus", "5"],
        ["periods", "--modulus", "five", "--omega", "4"],
        ["periods", "--modulus", "6", "--omega", "2"],  # not a unit
        ["periods", "--modulus", "6", "--omega", "5", "--layer-mod", "4"],
        ["cyclotomic", "--d", "0"],
        ["weyl", "--q", "7", "--d", "4", "--v", "1,1"],
        ["nonsense"],
        [],
    ],
)
def test_usage_errors(capsys, argv):
    assert run(argv) == 2


def test_periods_csv_exact(capsys):
    code, out, _ = call(capsys, "periods", "--modulus", "5", "--omega", "4")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "y,layer,re,im"
    assert [l.split(",")[0] for l in lines[1:]] == ["0", "1", "2", "3", "4"]
    assert lines[1] == "0,0,2,0"
    re1 = float(lines[2].split(",")[2])
    assert abs(re1 - (sqrt(5) - 1) / 2) < 1e-15
    # 17 significant digits
    assert lines[2].split(",")[2] == f"{re1:.17g}"


def test_periods_json_fields(capsys):
    code, out, _ = call(capsys, "periods", "--modulus", "10", "--omega", "9", "--layer-mod", "2", "--format", "json")
    doc = json.loads(out)
    assert set(doc) == {"modulus", "omega", "order", "layer_mod", "points", "distinct"}
    assert [p["layer"] for p in doc["points"]] == [y % 2 for y in range(10)]


def test_underscore_separators(capsys):
    a = call(capsys, "periods", "--modulus", "1_001", "--omega", "1_0")[1]
    b = call(capsys, "periods", "--modulus", "1001", "--omega", "10")[1]
    assert a == b
    assert run(["periods", "--modulus", "1__001", "--omega", "10"]) == 2


def test_cyclotomic(capsys):
    assert call(capsys, "cyclotomic", "--d", "6")[1] == "1 -1 1\n"
    doc = json.loads(call(capsys, "cyclotomic", "--d", "105", "--format", "json")[1])
    assert doc["degree"] == 48 and min(doc["coefficients"]) == -2


def test_weyl_negative_vector(capsys):
    code, out, _ = call(capsys, "weyl", "--q", "7", "--d", "3", "--v", "-2,1", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["predicted"] == [7.0, 0.0] and doc["v"] == [-2, 1]


def test_discrepancy_reports(capsys):
    code, out, _ = call(capsys, "discrepancy", "--d", "3", "--q-list", "7,13", "--grid", "5", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and len(doc["estimates"]) == 2 and doc["roots"] == [2, 3]


def test_seed_in_sampling_reports(capsys):
    for argv in (
        ["verify", "minkowski", "--r", "3", "--b", "2", "--samples", "100", "--seed", "5"],
        ["verify", "hypocycloid", "--modulus", "7", "--omega", "2", "--seed", "5"],
    ):
        code, out, _ = call(capsys, *argv, "--format", "json")
        assert code == 0 and json.loads(out)["params"]["seed"] == 5


def test_reports_repeat_exactly(capsys):
    argv = ["verify", "multiplicativity", "--m", "7", "--n", "5", "--omega", "9", "--format", "json"]
    assert call(capsys, *argv)[1] == call(capsys, *argv, "--threads", "3")[1]


def test_gd_output(tmp_path, capsys):
    out = tmp_path / "g.csv"
    assert run(["gd", "--d", "3", "--samples", "50", "--seed", "1", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "re,im" and len(lines) == 51
    assert run(["gd", "--d", "3", "--samples", "50", "--seed", "1", "--out", str(tmp_path / "h.csv")]) == 0
    assert (tmp_path / "h.csv").read_text() == out.read_text()


def test_threads_env_var(monkeypatch):
    monkeypatch.setenv("PERIODVIZ_THREADS", "2")
    from periodviz._parallel import resolve_threads

    assert resolve_threads(None) == 2
    assert resolve_threads(5) == 5  # explicit flag wins


def test_render_and_bad_extension(tmp_path):
    assert run(["render", "--modulus", "5", "--omega", "4", "--size", "64", "--out", str(tmp_path / "a.png")]) == 0
    assert run(["render", "--modulus", "5", "--omega", "4", "--size", "64", "--out", str(tmp_path / "a.gif")]) == 2
    assert run(["render-torus", "--q", "7", "--d", "3", "--size", "64", "--out", str(tmp_path / "t.ppm")]) == 0


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "periodviz", "verify", "gauss17"], capture_output=True, text=True
    )
    assert proc.returncode == 0 and proc.stdout.startswith("PASS gauss17")
