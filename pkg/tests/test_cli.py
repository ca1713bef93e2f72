import json
import math
import os

import numpy as np
import pytest

import dtlab
from dtlab.cli import CSV_HEADER, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def strip_wall_time(csv_text: str) -> list[str]:
    rows = []
    for line in csv_text.strip().splitlines():
        rows.append(",".join(line.split(",")[:-1]))
    return rows


def test_gen_solve_render_chain(tmp_path, capsys, monkeypatch):
    monkeypatch.chdir(tmp_path)
    code, out, _ = run(capsys, "gen", "comb", "--n", "6", "--eps", "0.1")
    assert code == 0 and "comb-n6.tsp" in out
    assert (tmp_path / "comb-n6.tsp").exists()
    assert (tmp_path / "comb-n6.json").exists()

    code, out, _ = run(capsys, "solve", "comb-n6.tsp", "--method", "min-dt")
    assert code == 0
    rec = json.loads(out)
    assert rec["family"] == "comb" and rec["method"] == "min-dt"
    assert rec["tour_weight"] == pytest.approx(14.0, abs=1e-9)  # 2n + 2
    assert rec["ratio"] == pytest.approx(1.0, abs=1e-12)
    tour_file = tmp_path / "comb-n6.min-dt.tour"
    assert tour_file.exists()
    tour = dtlab.parse_tour(tour_file.read_text())
    assert sorted(tour.order) == list(range(20))

    code, out, _ = run(capsys, "render", "comb-n6.tsp",
                       "--tour", "comb-n6.min-dt.tour", "--out", "fig.svg")
    assert code == 0
    svg = (tmp_path / "fig.svg").read_text()
    assert svg.count("<path ") == 1 and svg.count("<circle ") == 20


def test_solve_depth_first_and_root_override(tmp_path, capsys, monkeypatch):
    monkeypatch.chdir(tmp_path)
    run(capsys, "gen", "comb", "--n", "4", "--eps", "0.1", "--out", "c.tsp")
    code, out, _ = run(capsys, "solve", "c.tsp", "--method", "df-dt")
    assert code == 0
    assert json.loads(out)["tour_weight"] == pytest.approx(
        16.743055874066016, abs=1e-9)
    code, out, _ = run(capsys, "solve", "c.tsp", "--method", "min-dt",
                       "--root", "3")
    assert code == 0  # optimum is root-independent
    assert json.loads(out)["tour_weight"] == pytest.approx(10.0, abs=1e-9)
    code, _, err = run(capsys, "solve", "c.tsp", "--root", "99")
    assert code == 1 and "out of range" in err


def test_solve_exact_reference(tmp_path, capsys, monkeypatch):
    monkeypatch.chdir(tmp_path)
    run(capsys, "gen", "star", "--n", "2", "--out", "s.tsp")  # 13 nodes
    code, out, _ = run(capsys, "solve", "s.tsp", "--method", "min-dt", "--exact")
    assert code == 0
    rec = json.loads(out)
    assert rec["ratio"] >= 1.0 - 1e-12  # reference is now the true optimum


def test_exit_codes(tmp_path, capsys, monkeypatch):
    monkeypatch.chdir(tmp_path)
    # usage error -> 1
    assert main(["gen", "comb", "--n", "not-an-int"]) == 1
    capsys.readouterr()
    # invalid parameter -> 1
    code, _, err = run(capsys, "gen", "comb", "--n", "0")
    assert code == 1 and "error:" in err
    # missing size flag -> 1
    code, _, err = run(capsys, "gen", "twin-trees")
    assert code == 1 and "--k" in err
    # guard -> 2
    run(capsys, "gen", "star", "--n", "4", "--out", "s4.tsp")
    code, _, err = run(capsys, "solve", "s4.tsp", "--method", "held-karp")
    assert code == 2 and "held_karp" in err
    # malformed file -> 1
    (tmp_path / "bad.tsp").write_text("DIMENSION : x\nEOF\n")
    code, _, err = run(capsys, "solve", "bad.tsp")
    assert code == 1
    # help -> 0
    assert main(["--help"]) == 0
    capsys.readouterr()


def test_sweep_csv_contract(tmp_path, capsys, monkeypatch):
    monkeypatch.chdir(tmp_path)
    code, out, _ = run(capsys, "sweep", "--family", "twin-trees",
                       "--sizes", "3,2", "--methods", "df-dt,min-dt",
                       "--out", "sweep.csv")
    assert code == 0 and "sweep.csv" in out
    text = (tmp_path / "sweep.csv").read_text()
    lines = text.strip().splitlines()
    assert lines[0] == CSV_HEADER
    assert len(lines) == 5
    cells = [ln.split(",") for ln in lines[1:]]
    assert [(c[2], c[3]) for c in cells] == [
        ("2", "df-dt"), ("2", "min-dt"), ("3", "df-dt"), ("3", "min-dt")]
    for c in cells:
        ratio = float(c[6])
        # fields carry 12 significant digits, so recomputing loses a little
        assert ratio == pytest.approx(float(c[4]) / float(c[5]), rel=1e-9)
    assert (tmp_path / "sweep.png").exists()


def test_sweep_threads_reproducible(tmp_path, capsys, monkeypatch):
    monkeypatch.chdir(tmp_path)
    run(capsys, "sweep", "--family", "star", "--sizes", "2,3",
        "--methods", "min-dt,df-dt", "--out", "a.csv", "--no-plot")
    monkeypatch.setenv("DTLAB_THREADS", "4")
    run(capsys, "sweep", "--family", "star", "--sizes", "2,3",
        "--methods", "min-dt,df-dt", "--out", "b.csv", "--no-plot")
    a = strip_wall_time((tmp_path / "a.csv").read_text())
    b = strip_wall_time((tmp_path / "b.csv").read_text())
    assert a == b
    assert not (tmp_path / "a.png").exists()


def test_sweep_guard_rows_become_nan(tmp_path, capsys, monkeypatch):
    monkeypatch.chdir(tmp_path)
    code, _, err = run(capsys, "sweep", "--family", "star", "--sizes", "2,5",
                       "--methods", "held-karp", "--out", "g.csv", "--no-plot")
    assert code == 0
    assert "warning:" in err and "held_karp" in err
    lines = (tmp_path / "g.csv").read_text().strip().splitlines()
    by_size = {ln.split(",")[2]: ln for ln in lines[1:]}
    assert "nan" in by_size["5"]
    assert "nan" not in by_size["2"]  # 13 nodes, exact solver fits


def test_sweep_rejects_unknown_method(tmp_path, capsys, monkeypatch):
    monkeypatch.chdir(tmp_path)
    code, _, err = run(capsys, "sweep", "--family", "comb", "--sizes", "4",
                       "--methods", "magic", "--out", "x.csv")
    assert code == 1 and "magic" in err


def test_bad_dtlab_threads_is_an_input_error(tmp_path, capsys, monkeypatch):
    monkeypatch.chdir(tmp_path)
    monkeypatch.setenv("DTLAB_THREADS", "many")
    code, _, err = run(capsys, "sweep", "--family", "comb", "--sizes", "4",
                       "--out", "x.csv")
    assert code == 1 and "DTLAB_THREADS" in err


def test_selftest_quick(capsys):
    code, out, _ = run(capsys, "selftest", "--quick")
    assert code == 0
    assert "selftest: all checks passed" in out
