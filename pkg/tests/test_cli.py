import json
import subprocess
import sys

import pytest

from sunadacheck.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_gassmann(capsys):
    code, out, _ = run(capsys, "group", "verify-gassmann")
    assert code == 0
    assert "almost conjugate: True" in out and "conjugate: False" in out


def test_components(capsys):
    code, out, _ = run(capsys, "cover", "components", "--subgroup", "H", "--curve", "a b d [d,c^-1] d^-1")
    assert code == 0 and "degrees: 1,1,2,2,2" in out
    code, out, _ = run(capsys, "cover", "components", "--subgroup", "K", "--curve", "a b x a b a^-1 b^-1 x^-1")
    assert code == 0 and "degrees: 1,1,2,2,2" in out


def test_orbits(capsys):
    code, out, _ = run(capsys, "cover", "orbits")
    assert code == 0
    assert "{g1,g9}" in out and "{g1,g13}" in out


def test_involution(capsys):
    code, out, _ = run(capsys, "involution", "check", "--length", "2", "--random", "100")
    assert code == 0 and "identity" in out


def test_trace(capsys):
    code, out, _ = run(capsys, "trace", "--word", "a b x a b a^-1 b^-1 x^-1")
    assert code == 0
    assert "tr = 109505/2048" in out
    assert "length = 7.95751308373644656750927845876" in out


def test_trace_of_elliptic_word(capsys):
    code, out, _ = run(capsys, "trace", "--word", "x a")
    assert code == 0 and "undefined" in out


def test_trace_with_metric_file(tmp_path, capsys):
    path = tmp_path / "metric.toml"
    path.write_text('[matrices]\na = [["2", "0"], ["0", "1/2"]]\nb = [["1", "0"], ["0", "1"]]\n'
                    'x = [["1", "0"], ["0", "1"]]\n')
    code, out, _ = run(capsys, "trace", "--word", "a", "--metric", str(path))
    assert code == 0 and "tr = 5/2" in out


def test_usage_errors(capsys):
    code, _, err = run(capsys, "trace", "--word", "")
    assert code == 2 and "empty word" in err
    code, _, err = run(capsys, "trace", "--word", "a q")
    assert code == 2 and "error" in err
    code, _, err = run(capsys, "cover", "components", "--subgroup", "H", "--curve", "a c x")
    assert code == 2
    with pytest.raises(SystemExit) as exc:
        main(["trace"])
    assert exc.value.code == 2


def test_missing_config_file(capsys):
    code, _, err = run(capsys, "--config", "/nonexistent.toml", "group", "verify-gassmann")
    assert code == 2 and "error" in err


def test_enumerate(tmp_path, capsys):
    out_file = tmp_path / "cands.txt"
    code, out, _ = run(capsys, "enumerate", "--emit", str(out_file))
    assert code == 0
    assert "cyclic_classes: 252" in out and "closed_set_linear_words: 4536" in out
    assert len(out_file.read_text().splitlines()) == 504


def test_reproduce_paper(tmp_path, capsys):
    out_file = tmp_path / "report.json"
    code, out, _ = run(capsys, "reproduce-paper", "--out", str(out_file))
    assert code == 0 and "not simple iso-length spectral" in out
    assert json.loads(out_file.read_text())["verdict"]["status"] == "verified"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "sunadacheck", "trace", "--word", "b"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "tr = 17/4" in proc.stdout
