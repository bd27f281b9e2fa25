import csv
import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from lftstat.cli import EXIT_GUARD, EXIT_INPUT, EXIT_NO, EXIT_OK, main, parse_range
from lftstat.transducer import identity_lft, unit_delay


def run_cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def delay_file(tmp_path):
    p = tmp_path / "delay.json"
    p.write_text(json.dumps(unit_delay().to_json()))
    return str(p)


def test_parse_range():
    assert parse_range("3") == [3]
    assert parse_range("1..4") == [1, 2, 3, 4]
    assert parse_range("0,2") == [0, 2]


def test_injective_exit_codes(capsys, delay_file):
    code, out, _ = run_cli(capsys, "injective", delay_file, "--tau", "1")
    assert code == EXIT_OK
    assert json.loads(out) == {"injective": True, "min_delay": 1, "tau": 1}
    code, out, _ = run_cli(capsys, "injective", delay_file, "--tau", "0")
    assert code == EXIT_NO and json.loads(out)["injective"] is False


def test_bad_input(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"l": 1}')
    code, out, err = run_cli(capsys, "injective", str(bad), "--tau", "0")
    assert code == EXIT_INPUT and out == "" and "bad.json" in err
    code, _, _ = run_cli(capsys, "class-size", str(tmp_path / "missing.json"))
    assert code == EXIT_INPUT
    code, _, _ = run_cli(capsys, "estimate", "-l", "0", "-m", "1", "-n", "1", "--tau", "0")
    assert code == EXIT_INPUT
    code, _, _ = run_cli(capsys, "estimate", "-l", "1", "-m", "1", "-n", "1", "--tau", "0", "--seed", "-1")
    assert code == EXIT_INPUT
    code, _, _ = run_cli(capsys, "samples", "--confidence", "1.5")
    assert code == EXIT_INPUT


def test_class_size(capsys, delay_file, tmp_path):
    code, out, _ = run_cli(capsys, "class-size", delay_file)
    assert code == EXIT_OK and json.loads(out) == {"rank_diagnostic": 1, "class_size": "1"}
    p = tmp_path / "ident.json"
    p.write_text(json.dumps(identity_lft(2, n=2).to_json()))
    _, out, _ = run_cli(capsys, "class-size", str(p))
    # C = 0: rank 0, class size 2^((n+l)(n-r)) = 2^8
    assert json.loads(out)["class_size"] == str(2**8)


def test_count_canonical(capsys):
    _, out, _ = run_cli(capsys, "count-canonical", "-l", "2", "-m", "5", "-n", "1")
    assert json.loads(out)["count"] == "253952"
    _, out, _ = run_cli(capsys, "count-canonical", "-l", "1", "-m", "1", "-n", "2", "--cumulative")
    assert json.loads(out)["count"] == "40"
    _, out, _ = run_cli(capsys, "count-canonical", "-l", "1", "-m", "1", "-n", "1", "--include-trivial")
    assert json.loads(out)["count"] == "10"
    _, out, _ = run_cli(capsys, "count-canonical", "-l", "1", "-m", "1", "-n", "1", "-q", "3")
    assert json.loads(out)["count"] == "27"


def test_estimate_json_and_csv_agree(capsys):
    args = ["estimate", "-l", "2", "-m", "3", "-n", "1", "--tau", "0..2", "--samples", "1500", "--seed", "4", "--percentage"]
    code, out, _ = run_cli(capsys, *args, "--no-timing")
    assert code == EXIT_OK
    js = json.loads(out)
    assert [r["tau"] for r in js] == [0, 1, 2]
    assert "wall_seconds" not in js[0]
    _, out, _ = run_cli(capsys, *args, "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    for j, c in zip(js, rows):
        assert c["estimate"] == j["estimate"] and c["percentage"] == j["percentage"]
        assert Fraction(j["percentage"]) == Fraction(j["estimate"]) * 100 / int(j["total_classes"])


def test_estimate_seed_from_environment(capsys, monkeypatch):
    args = ["estimate", "-l", "1", "-m", "2", "-n", "1", "--tau", "1", "--samples", "300", "--no-timing"]
    monkeypatch.setenv("LFT_SEED", "77")
    _, from_env, _ = run_cli(capsys, *args)
    _, explicit, _ = run_cli(capsys, *args, "--seed", "77")
    assert from_env == explicit and json.loads(from_env)["seed"] == 77
    monkeypatch.delenv("LFT_SEED")
    _, default, _ = run_cli(capsys, *args)
    assert json.loads(default)["seed"] == 0
    monkeypatch.setenv("LFT_SEED", "abc")
    code, _, _ = run_cli(capsys, *args)
    assert code == EXIT_INPUT


def test_table_formats(capsys):
    base = ["table", "percentage", "-m", "3", "-l", "1", "-n", "1..2", "--tau", "0,1", "--samples", "400", "--seed", "2"]
    _, md, _ = run_cli(capsys, *base)
    assert "| n \\ tau | 0 | 1 |" in md
    _, js, _ = run_cli(capsys, *base, "--format", "json")
    doc = json.loads(js)
    _, cs, _ = run_cli(capsys, *base, "--format", "csv")
    body = [line for line in cs.splitlines() if not line.startswith("#")]
    assert len(doc["cells"]) == 4
    assert len(body) == 5
    code, _, _ = run_cli(capsys, "table", "count-injective", "-l", "1", "-n", "1", "--tau", "0,1")
    assert code == EXIT_INPUT


def test_exact(capsys):
    code, out, _ = run_cli(capsys, "exact", "-l", "1", "-m", "1", "-n", "1", "--tau", "0..1")
    assert code == EXIT_OK
    d = json.loads(out)
    assert d["injective_class_count_per_tau"] == {"0": 5, "1": 7}
    code, out, err = run_cli(capsys, "exact", "-l", "2", "-m", "5", "-n", "2")
    assert code == EXIT_GUARD and out == "" and "guard" in err


def test_random_round_trips(capsys, tmp_path):
    _, out, _ = run_cli(capsys, "random", "-l", "2", "-m", "3", "-n", "4", "--seed", "9")
    _, again, _ = run_cli(capsys, "random", "-l", "2", "-m", "3", "-n", "4", "--seed", "9")
    assert out == again
    p = tmp_path / "r.json"
    p.write_text(out)
    code, _, _ = run_cli(capsys, "class-size", str(p))
    assert code == EXIT_OK


def test_samples(capsys):
    _, out, _ = run_cli(capsys, "samples")
    assert json.loads(out)["samples"] == 16590
    _, out, _ = run_cli(capsys, "samples", "--exact-z")
    assert json.loads(out)["samples"] == 16588


def test_module_entry_point(delay_file):
    proc = subprocess.run(
        [sys.executable, "-m", "lftstat", "injective", delay_file, "--tau", "0"],
        capture_output=True, text=True,
    )
    assert proc.returncode == EXIT_NO
    assert json.loads(proc.stdout)["min_delay"] == 1
