import json
import subprocess
import sys
import xml.etree.ElementTree as ET
from fractions import Fraction

import numpy as np
import pytest

from oracles import literal_z
from tailscope import distributions as D
from tailscope.cli import main


@pytest.fixture
def small_counts(tmp_path):
    p = tmp_path / "counts.csv"
    p.write_text("a,2\nb,1\nc,1\n")
    return p


def read_rows(path):
    return [line.split(",") for line in path.read_text().splitlines()]


def test_profile_rows(tmp_path, small_counts):
    out = tmp_path / "prof.csv"
    assert main(["profile", "--counts", str(small_counts), "--v1", "1", "--v2", "3",
                 "--out", str(out)]) == 0
    rows = read_rows(out)
    assert rows[0] == ["v", "T_v"]
    for v, (sv, st) in zip((1, 2, 3), rows[1:]):
        assert int(sv) == v
        expected = v * literal_z([2, 1, 1], v)
        assert float(st) == pytest.approx(float(expected), abs=1e-12)
    assert float(rows[1][1]) == pytest.approx(5 / 6, abs=1e-12)
    assert float(rows[3][1]) == pytest.approx(1.5, abs=1e-12)
    assert literal_z([2, 1, 1], 3) == Fraction(1, 2)


def test_profile_v2_too_large(small_counts, capsys):
    assert main(["profile", "--counts", str(small_counts), "--v1", "1", "--v2", "4"]) == 2
    assert "InvalidRange" in capsys.readouterr().err


def test_profile_needs_input():
    with pytest.raises(SystemExit) as info:
        main(["profile"])
    assert info.value.code == 2


def test_inputs_mutually_exclusive(small_counts):
    with pytest.raises(SystemExit) as info:
        main(["profile", "--counts", str(small_counts), "--values", str(small_counts)])
    assert info.value.code == 2


def test_missing_file_is_io_error(tmp_path):
    assert main(["profile", "--counts", str(tmp_path / "nope.csv")]) == 1


def test_parse_error_exit_code(tmp_path, capsys):
    p = tmp_path / "v.txt"
    p.write_text("1.0\nfoo\n")
    assert main(["profile", "--values", str(p)]) == 2
    assert ":2: not a number" in capsys.readouterr().err


def test_classify_nearexp_sample(tmp_path):
    x = D.sample(D.reference_distributions()[2], 10_000, seed=20200101)
    values = tmp_path / "values.txt"
    values.write_text("\n".join(map(str, x.tolist())) + "\n")
    out = tmp_path / "report.json"
    # unit bins put each integer outcome in its own class
    assert main(["classify", "--values", str(values), "--delta", "1", "--out", str(out)]) == 0
    report = json.loads(out.read_text())
    assert report["family"] == "NearExponential"
    assert (report["v1"], report["v2"], report["n"]) == (6, 500, 10_000)
    assert report["parameter_estimate"] > 0
    for key in ("r_II", "r_III", "r_IV", "trend", "slope", "dropped_points"):
        assert key in report


def test_classify_degenerate_profile(tmp_path):
    p = tmp_path / "counts.csv"
    p.write_text("only,500\n")
    out = tmp_path / "report.json"
    assert main(["classify", "--counts", str(p), "--out", str(out)]) == 0
    report = json.loads(out.read_text())
    assert report["family"] == "ExponentialOrThinner"
    assert report["trend"] == 0.0
    assert report["r_II"] is None


def test_classify_echoes_range(tmp_path):
    x = D.sample(D.reference_distributions()[0], 3000, seed=1)
    p = tmp_path / "counts.csv"
    keys, counts = np.unique(x, return_counts=True)
    p.write_text("".join(f"{k},{c}\n" for k, c in zip(keys, counts)))
    out = tmp_path / "r.json"
    assert main(["classify", "--counts", str(p), "--v1", "8", "--v2", "120",
                 "--out", str(out)]) == 0
    report = json.loads(out.read_text())
    assert (report["v1"], report["v2"]) == (8, 120)


def test_simulate_row_sums_and_determinism(tmp_path):
    args = ["simulate", "--dist", "power:lambda=2", "--n", "2000", "--reps", "500",
            "--seed", "7", "--workers", "1"]
    assert main(args + ["--out", str(tmp_path / "a")]) == 0
    assert main(args + ["--out", str(tmp_path / "b")]) == 0
    rows = read_rows(tmp_path / "a" / "confusion.csv")
    assert rows[1][:2] == ["power", "2000"]
    assert sum(map(int, rows[1][2:])) == 500
    for name in ("confusion.csv", "precision.csv"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_simulate_bad_spec(tmp_path):
    assert main(["simulate", "--dist", "gauss:lambda=1", "--n", "2000",
                 "--out", str(tmp_path)]) == 2


def test_simulate_needs_dist(tmp_path):
    with pytest.raises(SystemExit) as info:
        main(["simulate", "--out", str(tmp_path)])
    assert info.value.code == 2


@pytest.fixture
def profile_file(tmp_path):
    p = tmp_path / "prof.csv"
    p.write_text("v,T_v\n" + "".join(f"{v},{np.sqrt(v):.15g}\n" for v in range(2, 30)))
    return p


def test_plot_ii_csv(tmp_path, profile_file):
    out = tmp_path / "ii.csv"
    assert main(["plot", "--profile", str(profile_file), "--transform", "II",
                 "--out", str(out)]) == 0
    rows = read_rows(out)
    assert rows[0] == ["ln_v", "ln_T_v"]
    x, y = float(rows[1][0]), float(rows[1][1])
    assert x == pytest.approx(np.log(2))
    assert y == pytest.approx(0.5 * np.log(2))
    assert len(rows) == 1 + 28


def test_plot_iv_drops_v2(tmp_path, profile_file):
    out = tmp_path / "iv.csv"
    assert main(["plot", "--profile", str(profile_file), "--transform", "IV",
                 "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0].startswith("# dropped 1 ")
    assert len(lines) == 2 + 27
    assert float(lines[2].split(",")[0]) == pytest.approx(np.log(np.log(np.log(3))))


def test_plot_svg(tmp_path, profile_file):
    out = tmp_path / "p.svg"
    assert main(["plot", "--profile", str(profile_file), "--transform", "III",
                 "--out", str(out)]) == 0
    root = ET.fromstring(out.read_text())
    assert root.tag.endswith("svg")
    assert len(root.findall("{http://www.w3.org/2000/svg}polyline")) == 1


def test_console_entry_point(small_counts):
    res = subprocess.run([sys.executable, "-m", "tailscope.cli", "profile", "--counts",
                          str(small_counts), "--v1", "1", "--v2", "3"],
                         capture_output=True, text=True, check=True)
    assert res.stdout.splitlines()[0] == "v,T_v"


def test_help_lists_flags():
    res = subprocess.run([sys.executable, "-m", "tailscope.cli", "simulate", "--help"],
                         capture_output=True, text=True, check=True)
    for flag in ("--dist", "--n", "--reps", "--seed", "--out", "--workers"):
        assert flag in res.stdout
