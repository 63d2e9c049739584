import os
import subprocess
import sys

import pytest

from rotslice import cli
from rotslice.errors import ConfigError
from rotslice.tables import read_table

import oracles


def run(*argv):
    out = subprocess.run([sys.executable, "-m", "rotslice.cli", *argv], capture_output=True, text=True)
    return out.returncode, out.stdout, out.stderr


def test_ap_scan_table():
    text, _, _ = cli.execute("ap-scan", {"p": "3", "q": "2", "k-max": "5"})
    t = read_table(text)
    assert t["columns"] == ["k"]
    assert [r[0] for r in t["rows"]] == ["0", "1", "2", "3", "4"]
    assert text.startswith("# rotslice 0.1.0\n")


def test_cf_zero_terms():
    text, _, _ = cli.execute("cf", {"value": "log2/log3", "terms": "0"})
    t = read_table(text)
    assert t["rows"] == [] and t["columns"] == ["n", "a", "p", "q"]
    assert ("certified_terms", "0") in t["metadata"]


def test_slice_count_matches_grid_oracle():
    text, _, _ = cli.execute("slice-count", {"ax": "cantor3", "ay": "base8-01", "u": "1", "v": "0", "depth": "10"})
    rows = read_table(text)["rows"]
    assert len(rows) == 11
    for level, count, _ in rows:
        assert int(count) == oracles.slice_grid_count(3, {0, 2}, 8, {0, 1}, 1, 0, int(level))


def test_exact_values_are_rationals():
    text, _, _ = cli.execute("disc-bound", {"N": "10,100"})
    rows = read_table(text)["rows"]
    assert rows == [["10", "5", "7", "7/10"], ["100", "10", "13", "13/100"]]


def test_config_errors_report_line_and_field(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("command = cf\n# comment\nvalue = golden\nterms = many\n")
    code, _, err = run("run", str(cfg))
    assert code == 2 and "line 4" in err and "'terms'" in err
    with pytest.raises(ConfigError) as exc:
        cli.load_config("command = cf\nvalue = 1\nvalue = 2\n")
    assert exc.value.line == 3 and exc.value.field == "value"
    with pytest.raises(ConfigError) as exc:
        cli.execute("cf", {"bogus": "1"})
    assert exc.value.field == "bogus"
    with pytest.raises(ConfigError) as exc:
        cli.execute("ostrowski", {})
    assert exc.value.field == "N"


def test_resource_cap_error():
    code, _, err = run("ap-scan", "--k-max", "1000", "--max-n", "10")
    assert code == 2 and "max_n" in err


def test_env_caps(tmp_path):
    env = {**os.environ, "ROTSLICE_MAX_N": "77"}
    out = subprocess.run([sys.executable, "-m", "rotslice.cli", "ap-scan", "--k-max", "3"], env=env,
                         capture_output=True, text=True, check=True)
    assert "#@ max-n = 77" in out.stdout


def test_output_file_timing_sidecar_and_rerun(tmp_path):
    out = tmp_path / "t.tsv"
    code, stdout, _ = run("star-disc", "--N", "10,100", "--output", str(out))
    assert code == 0 and stdout == ""
    assert (tmp_path / "t.tsv.timing").read_text().startswith("wall_seconds = ")
    re = tmp_path / "r.tsv"
    assert run("rerun", str(out), "--output", str(re))[0] == 0
    assert out.read_bytes() == re.read_bytes()
    cfg = tmp_path / "c.cfg"
    cfg.write_text("command = star-disc\nN = 10,100\n")
    again = tmp_path / "a.tsv"
    assert run("run", str(cfg), "--output", str(again))[0] == 0
    assert again.read_bytes() == out.read_bytes()


def test_every_subcommand_is_registered():
    expected = {"power-digits", "ap-scan", "beta-scan", "digit-freq", "cf", "ostrowski", "disc-bound", "gap-check",
                "orbit", "star-disc", "hit-count", "make-set", "cover", "slice-count", "dipole", "sum-decompose",
                "pair-push", "sparse-index", "density", "dim-fit", "gauge-sum", "casino-sim"}
    assert set(cli.COMMANDS) == expected
