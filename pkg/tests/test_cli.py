import json
import subprocess
import sys

import pytest

from stripecover import schema
from stripecover.cli import main
from stripecover.corpus import bundled_path

FIG1 = str(bundled_path("arrangement_figure1.json"))
FIG2 = str(bundled_path("arrangement_figure2.json"))


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_uncross_and_disjointify(tmp_path, capsys):
    code, out, _ = run(capsys, "uncross", "--input", FIG1)
    assert code == 0
    a = schema.arrangement_from_json(json.loads(out))
    assert a.is_ordered()
    dj = tmp_path / "d.json"
    code, _, _ = run(capsys, "disjointify", "--input", FIG2, "--output", str(dj),
                     "--svg", str(tmp_path / "d.svg"))
    assert code == 0 and (tmp_path / "d.svg").exists()
    assert schema.arrangement_from_json(schema.load(dj)).has_disjoint_interiors()


def test_disjointify_needs_order(capsys):
    code, _, err = run(capsys, "disjointify", "--input", FIG1)
    assert code == 1 and "uncross" in err
    code, _, _ = run(capsys, "disjointify", "--input", FIG1, "--uncross-first")
    assert code == 0


def test_malformed_input(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"axis": 1, "delta": 1, "curves": [
        {"breakpoints": [0, 1, "1/2"], "values": [0, 0, 0]}]}))
    code, _, err = run(capsys, "uncross", "--input", str(bad))
    assert code == 1 and "curves[0].breakpoints[2]" in err
    bad.write_text("{")
    code, _, err = run(capsys, "uncross", "--input", str(bad))
    assert code == 1 and "line 1" in err
    code, _, err = run(capsys, "uncross", "--input", str(tmp_path / "missing.json"))
    assert code == 1


def test_usage_errors(capsys):
    assert run(capsys, "uncross")[0] == 1
    assert run(capsys, "nonsense")[0] == 1
    assert run(capsys, "phi", "--arrangement", FIG2, "--eval", "1")[0] == 1


def test_covers_witness_reproduces(tmp_path, capsys, monkeypatch):
    monkeypatch.chdir(tmp_path)
    pts = tmp_path / "p.json"
    pts.write_text(json.dumps({"points": [["1/2", 3], [0, "1/4"]]}))
    code, out, _ = run(capsys, "covers", "--input", FIG2, "--points", str(pts))
    assert code == 2 and json.loads(out)["uncovered"] == [[["1", "2"], ["3", "1"]]]
    w = json.loads((tmp_path / "witness.json").read_text())
    argv = w["command"].split()[1:]
    assert run(capsys, *argv)[0] == 2


def test_phi_commands(tmp_path, capsys):
    dj = tmp_path / "d.json"
    run(capsys, "disjointify", "--input", FIG2, "--output", str(dj))
    code, out, _ = run(capsys, "phi", "--arrangement", str(dj), "--eval", "1/2,1")
    assert code == 0 and json.loads(out)["phi"] == ["1", "2"]
    for mode in ("lipschitz", "approx", "univariate"):
        csv_path = tmp_path / f"{mode}.csv"
        code, _, _ = run(capsys, "phi", "--arrangement", str(dj), "--verify", mode,
                         "--samples", "300", "--seed", "4", "--csv", str(csv_path))
        assert code == 0
        text = csv_path.read_text()
        assert text.startswith(f"# stripecover phi verify={mode} seed=4 samples=300\n")
        run(capsys, "phi", "--arrangement", str(dj), "--verify", mode, "--samples", "300",
            "--seed", "4", "--csv", str(tmp_path / "again.csv"))
        assert (tmp_path / "again.csv").read_text() == text
    code, _, err = run(capsys, "phi", "--arrangement", FIG2, "--eval", "0,0")
    assert code == 1 and "disjoint" in err


def test_null1d_commands(capsys):
    cover = str(bundled_path("cover.json"))
    code, out, _ = run(capsys, "null1d", "phi", "--cover", cover, "--at", "3/4")
    assert code == 0 and json.loads(out)["phi"] == ["1", "2"]
    code, out, _ = run(capsys, "null1d", "deficit", "--cover", cover)
    assert code == 0 and json.loads(out)["max_deficit"] == ["1", "4"]
    args = ["--measure", str(bundled_path("measure.json")), "--weight",
            str(bundled_path("weight.json")), "--function", str(bundled_path("pl_function.json"))]
    code, out, _ = run(capsys, "null1d", "derive", *args, "--at", "3/8")
    assert code == 0 and json.loads(out)["value"] == ["-1", "1"]  # weight 2, slope -1/2
    code, out, _ = run(capsys, "null1d", "derive", *args, "--at", "1/3")
    assert json.loads(out)["value"] == ["0", "1"]
    assert run(capsys, "null1d", "derive", "--at", "1/3")[0] == 1


def test_extend_commands(capsys):
    s1, s2 = str(bundled_path("samples_1d.json")), str(bundled_path("samples_2d.json"))
    code, out, _ = run(capsys, "extend", "--samples", s1, "--query", "2")
    assert code == 0 and json.loads(out)["value"] == ["5", "2"]
    code, out, _ = run(capsys, "extend", "--samples", s1, "--query", "2", "--bounded")
    assert json.loads(out)["value"] == ["1", "1"]
    code, out, _ = run(capsys, "extend", "--samples", s2, "--query", "1,1")
    assert code == 0 and float(json.loads(out)["value"]) == 1.5
    code, _, err = run(capsys, "extend", "--samples", s1, "--query", "0", "--lipschitz", "1/4")
    assert code == 1 and "ConsistencyError" in err


def test_project_commands(tmp_path, capsys):
    code, out, _ = run(capsys, "project", "--set", "four-corner", "--depth", "3", "--dir", "1,0")
    assert code == 0 and json.loads(out)["exact_length"] == ["1", "8"]
    code, out, _ = run(capsys, "project", "--set", str(bundled_path("squares.json")), "--dir", "1,0")
    assert json.loads(out)["exact_length"] == ["1", "2"]
    assert run(capsys, "project", "--depth", "11", "--dir", "1,0")[0] == 1
    csv_path, fig = tmp_path / "r.csv", tmp_path / "r.svg"
    code, _, _ = run(capsys, "project", "--report", "--depths", "1-4", "--dirs", "1,0", "1,1",
                     "--csv", str(csv_path), "--figure", str(fig))
    assert code == 0 and fig.exists()
    lines = csv_path.read_text().splitlines()
    assert lines[0] == "# stripecover project report depths=1-4" and len(lines) == 2 + 8 + 2


def test_verify_quick(tmp_path, capsys):
    csv_path = tmp_path / "v.csv"
    code, out, _ = run(capsys, "verify", "--all", "--quick", "--seed", "7", "--csv", str(csv_path),
                       "--figures", str(tmp_path / "figs"))
    assert code == 0 and out.count("[PASS]") == 13
    assert csv_path.read_text().startswith("# stripecover verify seed=7\n")
    assert len(list((tmp_path / "figs").glob("*.svg"))) == 5
    first = csv_path.read_text()
    run(capsys, "verify", "--all", "--quick", "--seed", "7", "--csv", str(csv_path))
    assert csv_path.read_text() == first


def test_verify_failure_writes_witness(tmp_path, capsys, monkeypatch):
    from stripecover import verify

    def broken(seed, budgets):
        return verify.CriterionResult(99, "broken", False, "forced", {"x": 1})

    monkeypatch.setitem(verify.CRITERIA, 1, broken)
    code, out, _ = run(capsys, "verify", "--criteria", "1", "--witness-dir", str(tmp_path))
    assert code == 2 and "[FAIL]" in out
    w = json.loads((tmp_path / "witness_99.json").read_text())
    assert w["seed"] == 7 and w["command"].startswith("stripecover verify")


def test_threads_env(monkeypatch):
    from stripecover.verify import Budgets, run_all, worker_count
    monkeypatch.setenv("STRIPECOVER_THREADS", "2")
    assert worker_count() == 2
    res = run_all(3, Budgets.quick(), only=[9, 11])
    assert [r.number for r in res] == [9, 11] and all(r.passed for r in res)
    monkeypatch.setenv("STRIPECOVER_THREADS", "zero")
    assert worker_count() == 1


def test_module_entry_point():
    p = subprocess.run([sys.executable, "-m", "stripecover", "project", "--depth", "1",
                        "--dir", "1,0"], capture_output=True, text=True)
    assert p.returncode == 0 and '"exact_length": ["1", "2"]' in p.stdout
