import csv
import subprocess
import sys
import time

import numpy as np
import pytest

from boostlets import cli, io
from boostlets.boostlet import cbt_slice, default_mother
from boostlets.closed_form import tau_zero_value
from boostlets.field import Field2D, GridSpec, l2_norm
from boostlets.signals import signal_suite
from boostlets.uncertainty import GroupQuadrature, coefficient_density

PNG = b"\x89PNG\r\n\x1a\n"
SMALL = ["--grid", "64x64"]
SMALL_T = ["--grid", "64x64", "--extent", "4"]  # wider band for the transform lattice


def run(*argv):
    return cli.main([str(a) for a in argv])


def read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


# --- transform ----------------------------------------------------------------


def test_transform_zero_input(tmp_path):
    g = GridSpec.square(64, 4.0)
    src = io.write_bsf(tmp_path / "zero.bsf", Field2D.zeros(g))
    assert run("transform", "--input", src, "--out", tmp_path / "o") == cli.EXIT_OK
    planes = sorted((tmp_path / "o").glob("plane_*.bsf"))
    assert len(planes) == 32
    assert all(not io.read_bsf(p).values.any() for p in planes)


def test_transform_planes_reread_exactly(tmp_path, band_limited64):
    src = io.write_bsf(tmp_path / "f.bsf", band_limited64)
    assert run("transform", "--input", src, "--out", tmp_path, "--n-c", 1, "--n-alpha", 2,
               "--c-range", "1:1.2", "--alpha-range", "-0.3:0.3") == 0
    rows = (tmp_path / "manifest.txt").read_text().splitlines()
    assert rows[2] == "c alpha component file"
    m = default_mother(band_limited64.grid)
    for line in rows[3:]:
        c, a, k, name = line.split()
        ref = cbt_slice(band_limited64, m, float(c), float(a)).planes[int(k) - 1]
        assert io.read_bsf(tmp_path / name).values.tobytes() == ref.values.tobytes()


def test_transform_verify_paths(tmp_path, capsys):
    assert run("transform", *SMALL_T, "--out", tmp_path, "--verify-paths") == 0
    line = [x for x in capsys.readouterr().out.splitlines() if "path equivalence" in x][0]
    assert line.startswith("PASS") and float(line.split("error")[1].split()[0]) < 1e-10


def test_transform_errors(tmp_path):
    assert run("transform", "--input", tmp_path / "nope.bsf", "--out", tmp_path) == cli.EXIT_IO
    (tmp_path / "bad.bsf").write_text("BSF1 8 8 1 1\n")
    assert run("transform", "--input", tmp_path / "bad.bsf", "--out", tmp_path) == cli.EXIT_IO
    assert run("transform", *SMALL_T, "--out", tmp_path, "--c-range", "0.2:4",
               "--alpha-range", "-3:3") == cli.EXIT_MODEL


def test_transform_images(tmp_path):
    assert run("transform", *SMALL_T, "--out", tmp_path, "--n-c", 1, "--n-alpha", 1,
               "--images") == 0
    assert (tmp_path / "planes.png").read_bytes().startswith(PNG)
    assert io.read_pgm(tmp_path / "plane_c00_a00_1.pgm").shape == (64, 64)


# --- admissibility and verify --------------------------------------------------


def test_admissibility_default(tmp_path, capsys):
    assert run("admissibility", "--out", tmp_path, "--images") == cli.EXIT_OK
    out = capsys.readouterr().out
    assert "samples          32" in out
    change = float(out.split("relative change")[1].split()[0])
    assert change < 5e-3 and "(ok)" in out
    assert (tmp_path / "admissibility.png").read_bytes().startswith(PNG)


def test_admissibility_failures():
    assert run("admissibility", *SMALL, "--scale-width", 0) == cli.EXIT_MODEL
    assert run("admissibility", *SMALL, "--spread-threshold", 1e-300) == cli.EXIT_SPREAD


def test_verify(capsys):
    assert run("verify") == cli.EXIT_OK
    out = capsys.readouterr().out.splitlines()
    assert not any(x.startswith("FAIL") for x in out)
    assert sum(x.startswith("info") for x in out) == 3


# --- uncertainty --------------------------------------------------------------


@pytest.fixture(scope="module")
def small_setup():
    g = GridSpec.square(64, 8.0)
    m = default_mother(g)
    q = GroupQuadrature.default(m)
    return g, m, q


def test_uncertainty_rows(tmp_path, capsys):
    assert run("uncertainty", *SMALL, "--n-signals", 2, "--out", tmp_path) == cli.EXIT_OK
    rows = read_csv(tmp_path / "uncertainty.csv")
    assert len(rows) == 10
    assert [r["name"] for r in rows[:5]] == ["heisenberg", "lp_i", "log", "pitt", "nazarov"]
    assert [r["signal"] for r in rows] == ["0"] * 5 + ["1"] * 5
    naz = [r for r in rows if r["name"] == "nazarov"]
    assert all(r["satisfied"] == "" and float(r["ratio"]) > 0 for r in naz)
    assert all(r["satisfied"] == "true" for r in rows if r["name"] != "nazarov")


def test_uncertainty_reductions(tmp_path, small_setup):
    g, m, q = small_setup
    assert run("uncertainty", *SMALL, "--n-signals", 1, "--p", 2, "--lambda", 0,
               "--out", tmp_path) == 0
    rows = {r["name"]: r for r in read_csv(tmp_path / "uncertainty.csv")}
    h, lp, pitt = rows["heisenberg"], rows["lp_i"], rows["pitt"]
    assert float(lp["lhs"]) == pytest.approx(float(h["lhs"]), rel=1e-10)
    assert float(lp["rhs"]) == pytest.approx(float(h["rhs"]), rel=1e-10)
    psi = signal_suite(g, 0, 1)[0][1]
    delta = q.admissibility(m).delta
    assert float(pitt["lhs"]) == pytest.approx(delta * l2_norm(psi) ** 2, rel=1e-10)
    assert float(pitt["rhs"]) == pytest.approx(coefficient_density(psi, m, q).total, rel=1e-10)


def test_uncertainty_images(tmp_path):
    assert run("uncertainty", *SMALL, "--n-signals", 1, "--out", tmp_path, "--images") == 0
    for name in ("ratios.png", "density_signal00.png"):
        assert (tmp_path / name).read_bytes().startswith(PNG)
    assert io.read_pgm(tmp_path / "density_signal00.pgm").shape == (64, 64)


def test_uncertainty_seed_is_deterministic(tmp_path):
    for d in ("a", "b"):
        assert run("uncertainty", *SMALL, "--n-signals", 1, "--seed", 4, "--out",
                   tmp_path / d) == 0
    assert (tmp_path / "a/uncertainty.csv").read_bytes() == (tmp_path / "b/uncertainty.csv").read_bytes()


# --- example ------------------------------------------------------------------


def test_example_tau_zero_row(tmp_path):
    assert run("example", "--n-tau", 33, "--n-c", 2, "--n-alpha", 2, "--out", tmp_path) == 0
    table = np.loadtxt(tmp_path / "example.csv", delimiter=",", skiprows=1)
    rows = table[(table[:, 2] == 0) & (table[:, 3] == 0)]
    assert len(rows) == 4
    for c, _, _, _, re1, im1, re2, im2 in rows:
        ref = tau_zero_value(c, 0.1)
        assert abs(complex(re1, im1) - ref) <= 1e-12 * abs(ref)
        assert abs(complex(re2, im2) - ref) <= 1e-12 * abs(ref)


def test_example_deterministic_and_fast(tmp_path, capsys):
    t0 = time.perf_counter()
    assert run("example", "--out", tmp_path / "a") == 0
    assert time.perf_counter() - t0 < 10.0
    assert run("example", "--out", tmp_path / "b") == 0
    for name in ("example.csv", "slice_c07_a03.pgm", "example_manifest.txt"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()
    assert len(list((tmp_path / "a").glob("slice_*.pgm"))) == 256
    manifest = (tmp_path / "a/example_manifest.txt").read_text()
    assert "# sqrt branch principal" in manifest and "# epsilon 0.1" in manifest


def test_example_near_pole(tmp_path, capsys):
    c = 2 ** -0.5
    assert run("example", "--c-range", f"{c!r}:0.8", "--n-c", 1, "--n-alpha", 1,
               "--n-tau", 4, "--out", tmp_path) == 0
    assert "near-pole" in capsys.readouterr().out


def test_example_images(tmp_path):
    assert run("example", "--n-c", 2, "--n-alpha", 2, "--out", tmp_path, "--images") == 0
    assert (tmp_path / "example_surface.png").read_bytes().startswith(PNG)


# --- parsing ------------------------------------------------------------------


@pytest.mark.parametrize("command", sorted(cli._COMMAND_KEYS))
def test_help_lists_defaults(command):
    sub = cli.build_parser()._subparsers._group_actions[0].choices[command]
    flags = [a for a in sub._actions if a.option_strings and a.dest != "help"]
    assert flags and all("(default:" in a.help for a in flags)
    text = sub.format_help()
    for a in flags:
        assert a.option_strings[0] in text


def test_config_file_and_override(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("grid = 64x64\nn_signals = 1\nseed = 2\n")
    assert run("uncertainty", "--config", cfg, "--out", tmp_path / "a") == 0
    assert run("uncertainty", "--config", cfg, "--seed", 3, "--out", tmp_path / "b") == 0
    assert len(read_csv(tmp_path / "a/uncertainty.csv")) == 5
    a, b = (read_csv(tmp_path / d / "uncertainty.csv")[0]["lhs"] for d in ("a", "b"))
    assert a != b


def test_config_errors(tmp_path):
    bad = tmp_path / "bad.cfg"
    bad.write_text("colour = red\n")
    assert run("verify", "--config", bad) == cli.EXIT_MODEL
    assert run("verify", "--config", tmp_path / "missing.cfg") == cli.EXIT_IO


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "boostlets.cli", "example", "--help"],
                         capture_output=True, text=True, check=True)
    text = " ".join(res.stdout.split())
    assert "--epsilon EPS" in text and "(default: 0.1)" in text
