import io
import json
import subprocess
import sys

import pytest

from edcs_lp.cli import EXIT_OK, EXIT_OPERATIONAL, EXIT_USAGE, EXIT_VERIFY, main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_ratio():
    assert run("ratio", "2", "1") == (EXIT_OK, "1/2 = 0.5000000000\n")
    code, text = run("ratio", "6", "5")
    assert code == EXIT_OK and text.startswith("21/31 = 0.6774193548")
    code, text = run("ratio", "4", "3", "--float")
    assert code == EXIT_OK and text == "0.6250000000 (float)\n"


@pytest.mark.parametrize("argv", [
    ["ratio", "5", "5"], ["ratio", "1", "0"], ["ratio", "x", "1"], ["bogus"], [],
    ["ratio", "3", "2", "--exact", "--float"], ["sweep", "1"], ["sweep"],
    ["sweep", "4", "--diagonal", "a"], ["tight-example", "5", "4"],
    ["export-lp", "2", "1", "--format", "csv"], ["construct", "3", "2", "--min-scale", "0"],
])
def test_usage_errors(argv, capsys):
    assert run(*argv)[0] == EXIT_USAGE
    assert "usage error" in capsys.readouterr().err


def test_sweep_stdout_and_files(tmp_path):
    code, text = run("sweep", "4")
    assert code == EXIT_OK
    assert text.splitlines()[:2] == ["beta\\beta_minus,1,2,3", "2,0.5000,-,-"]
    code, text = run("sweep", "--max-beta", "4", "--diagonal", "1,2")
    assert text.splitlines()[0] == "beta,beta-1,beta-2"
    stem = tmp_path / "grid"
    code, text = run("sweep", "4", "--out", str(stem), "--format", "svg")
    assert code == EXIT_OK and "best ratio 0.6250 at (4,3)" in text
    assert (tmp_path / "grid.csv").read_text().startswith("beta\\beta_minus")
    assert json.loads((tmp_path / "grid.json").read_text())["best"]["ratio_exact"] == "5/8"
    assert "<circle" in (tmp_path / "grid.svg").read_text()


def test_construct_then_verify(tmp_path):
    path = tmp_path / "inst.json"
    assert run("construct", "5", "4", "--out", str(path))[0] == EXIT_OK
    code, text = run("verify", str(path))
    assert code == EXIT_OK and "all checks passed" in text
    assert "mu(G)/mu(H) = 8/5" in text
    code, text = run("verify", str(path), "--format", "json")
    assert json.loads(text)["approximation"] == "5/8"


def test_tight_example_verifies(tmp_path):
    path = tmp_path / "t.json"
    assert run("tight-example", "3", "4", "--out", str(path))[0] == EXIT_OK
    code, text = run("verify", str(path))
    assert code == EXIT_OK and "mu(G)/mu(H) = 3/2" in text


def test_verify_fills_in_missing_parts(tmp_path):
    path = tmp_path / "g.json"
    path.write_text(json.dumps({"n_left": 2, "n_right": 2, "edges": [[0, 0], [1, 0], [1, 1]],
                                "h": [[0, 0], [1, 1]], "beta": 2, "beta_minus": 1}))
    code, text = run("verify", str(path))
    assert code == EXIT_OK and "mu(G)/mu(H) = 1" in text
    assert run("verify", str(path), "--beta", "3")[0] == EXIT_USAGE
    path.write_text(json.dumps({"n_left": 1, "n_right": 1, "edges": [[0, 0]]}))
    assert run("verify", str(path))[0] == EXIT_USAGE


def test_verify_failures(tmp_path):
    path = tmp_path / "dup.json"
    path.write_text(json.dumps({"n_left": 1, "n_right": 1, "edges": [[0, 0], [0, 0]],
                                "h": [[0, 0]], "beta": 2, "beta_minus": 1}))
    code, text = run("verify", str(path))
    assert code == EXIT_VERIFY and "[FAIL] simple graph" in text
    path.write_text("{not json")
    assert run("verify", str(path))[0] == EXIT_OPERATIONAL
    assert run("verify", str(tmp_path / "missing.json"))[0] == EXIT_OPERATIONAL


def test_export_lp():
    code, text = run("export-lp", "2", "1")
    assert code == EXIT_OK and "\nMaximize\n" in text and "64 variables, 29 equality rows" in text
    code, text = run("export-lp", "2", "1", "--format", "json")
    doc = json.loads(text)
    assert code == EXIT_OK
    code, text2 = run("export-lp", "2", "1", "--format", "json", "--include-isolated")
    assert len(json.loads(text2)["variables"]) == len(doc["variables"]) + 2


def test_dump_profiles():
    code, text = run("dump-profiles", "2", "1")
    lines = text.splitlines()
    assert code == EXIT_OK
    assert lines[0] == "kind,label,side,region,degree,in_h,in_m,in_mstar"
    kinds = [l.split(",")[0] for l in lines[1:]]
    assert kinds.count("vertex") == 14
    code, text = run("dump-profiles", "2", "1", "--format", "json", "--include-isolated")
    assert len(json.loads(text)["vertex_profiles"]) == 16


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "edcs_lp", "ratio", "3", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "1/2 = 0.5000000000\n"
