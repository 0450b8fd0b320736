import math

import pytest

from minimaxlb.cli import (CSV_COLUMNS, SweepConfig, main, parse_grid,
                           parse_prior, rows_to_csv, run_sweep)
from minimaxlb.priors import Cosine, GaussianPrior, KeplerCosine, UniformPrior

PI2 = math.pi**2


def read(path):
    with open(path, "rb") as fh:
        return fh.read()


def test_parse_prior():
    assert parse_prior("cosine:0:1") == Cosine(0.0, 1.0)
    assert parse_prior("gaussian:1:2") == GaussianPrior(1.0, 2.0)
    assert parse_prior("uniform:-1:1") == UniformPrior(-1.0, 1.0)
    kc = parse_prior("kepler:0.75")
    assert isinstance(kc, KeplerCosine) and kc.a == 0.75
    with pytest.raises(ValueError):
        parse_prior("spike:0")


def test_parse_grid():
    grid = parse_grid("log:1e-2:1e2:5")
    assert len(grid) == 5
    assert grid[0] == pytest.approx(1e-2) and grid[-1] == pytest.approx(1e2)
    assert parse_grid("0.5,1,2") == (0.5, 1.0, 2.0)


def test_kepler_command(tmp_path, capsys):
    out = tmp_path / "kepler.csv"
    assert main(["kepler", "--a", "0.5", "--a", "1.0", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "a,y_a,w_a,min_fisher"
    row = lines[1].split(",")
    assert [float(x) for x in row[:3]] == [0.5, 0.0, 2.0]
    assert float(row[3]) == pytest.approx(PI2, abs=1e-12)
    row = lines[2].split(",")
    assert [float(x) for x in row[:3]] == [1.0, 1.0, 1.0]
    assert float(row[3]) == pytest.approx(4.0 * PI2, abs=1e-12)


def test_kepler_grid_monotone(tmp_path):
    out = tmp_path / "grid.csv"
    assert main(["kepler", "--grid", "101", "--out", str(out)]) == 0
    rows = [line.split(",") for line in out.read_text().splitlines()[1:]]
    assert len(rows) == 101
    by_gap = sorted((abs(2.0 * float(r[0]) - 1.0), float(r[3])) for r in rows)
    fishers = [f for _, f in by_gap]
    assert all(b >= a - 1e-9 for a, b in zip(fishers, fishers[1:]))


def test_kepler_svg(tmp_path):
    svg = tmp_path / "kepler.svg"
    out = tmp_path / "k.csv"
    assert main(["kepler", "--a", "0.75", "--out", str(out), "--svg", str(svg)]) == 0
    content = svg.read_text()
    assert content.startswith("<?xml")
    assert "polyline" in content


def test_bound_command_vt(tmp_path, capsys):
    out = tmp_path / "b.csv"
    code = main(["bound", "--method", "vt", "--delta", "1", "--n", "100",
                 "--out", str(out)])
    assert code == 0
    printed = capsys.readouterr().out
    value = float([l for l in printed.splitlines() if l.startswith("value=")][0][6:])
    assert value == pytest.approx(0.749, abs=5e-3)
    assert out.read_text().splitlines()[0] == "delta,n,method,value"


def test_bound_command_twopoint_equal_points(tmp_path, capsys):
    code = main(["bound", "--method", "twopoint", "--theta1", "0.3",
                 "--theta2", "0.3", "--n", "5", "--out", str(tmp_path / "t.csv")])
    assert code == 0
    printed = capsys.readouterr().out
    assert "value=0.0" in printed


def test_bound_command_chi2_divergent_note(tmp_path, capsys):
    code = main(["bound", "--method", "chi2", "--family", "uniform",
                 "--prior", "cosine:2:0.5", "--h", "0.1", "--n", "1",
                 "--out", str(tmp_path / "c.csv")])
    assert code == 0
    printed = capsys.readouterr().out
    assert "value=0.0" in printed
    assert "divergent denominator" in printed


def test_bound_command_diffeo_fixed_point(tmp_path, capsys):
    code = main(["bound", "--method", "diffeo", "--delta", "1", "--n", "100",
                 "--xi1", "0", "--xi2", "1", "--out", str(tmp_path / "d.csv")])
    assert code == 0
    printed = capsys.readouterr().out
    value = float([l for l in printed.splitlines() if l.startswith("value=")][0][6:])
    assert value == pytest.approx(0.2048489, abs=1e-6)


def test_risk_command(tmp_path, capsys):
    assert main(["risk", "--estimator", "constant", "--delta", "2", "--n", "1",
                 "--out", str(tmp_path / "r.csv")]) == 0
    assert "value=1.0" in capsys.readouterr().out
    assert main(["risk", "--estimator", "plugin", "--delta", "1e-9", "--n", "100",
                 "--out", str(tmp_path / "r2.csv")]) == 0
    assert float(capsys.readouterr().out.split("=")[1]) == pytest.approx(0.5, abs=1e-6)


def test_risk_validation_exit_code(tmp_path):
    assert main(["risk", "--estimator", "plugin", "--delta", "-1", "--n", "10",
                 "--out", str(tmp_path / "x.csv")]) == 2


def test_sweep_deterministic_and_schema(tmp_path):
    args = ["sweep", "--n", "10", "--delta", "log:0.1:10:5",
            "--methods", "vt,twopoint", "--estimators", "constant,plugin"]
    out1, out2 = tmp_path / "s1.csv", tmp_path / "s2.csv"
    svg1, svg2 = tmp_path / "s1.svg", tmp_path / "s2.svg"
    assert main(args + ["--out", str(out1), "--svg", str(svg1)]) == 0
    assert main(args + ["--out", str(out2), "--svg", str(svg2)]) == 0
    assert read(out1) == read(out2)
    assert read(svg1) == read(svg2)
    lines = out1.read_text().splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert len(lines) == 6
    cells = lines[1].split(",")
    assert len(cells) == len(CSV_COLUMNS)
    assert cells[3] == ""   # bound_diffeo not requested: empty, column kept
    assert cells[7] == ""   # risk_pretest not requested
    assert float(cells[2]) >= 0.0
    assert b"\r" not in read(out1)
    assert svg1.read_text().startswith("<?xml")


def test_sweep_vary_n_mode(tmp_path):
    out = tmp_path / "n.csv"
    assert main(["sweep", "--mode", "n", "--n", "10,100", "--delta", "1.0",
                 "--methods", "vt", "--estimators", "constant",
                 "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 3
    assert [row.split(",")[1] for row in lines[1:]] == ["10", "100"]
    # n-scaled vt bound grows with n at fixed delta
    assert float(lines[2].split(",")[2]) > float(lines[1].split(",")[2])


def test_sweep_config_validation():
    with pytest.raises(ValueError):
        SweepConfig("fixed-n-vary-delta", (100, 10), (1.0,))
    with pytest.raises(ValueError):
        SweepConfig("fixed-n-vary-delta", (10,), ())
    with pytest.raises(ValueError):
        SweepConfig("sideways", (10,), (1.0,))
    with pytest.raises(ValueError):
        SweepConfig("fixed-n-vary-delta", (10,), (1.0,), methods=("fano",))


def test_sweep_rows_in_grid_order():
    cfg = SweepConfig("fixed-n-vary-delta", (10, 100), (0.5, 1.0),
                      methods=("vt",), estimators=("constant",))
    rows = run_sweep(cfg)
    assert [(r["n"], r["delta"]) for r in rows] == \
        [(10, 0.5), (10, 1.0), (100, 0.5), (100, 1.0)]
    csv = rows_to_csv(rows)
    assert csv.splitlines()[0] == ",".join(CSV_COLUMNS)


def test_sweep_float_cells_roundtrip():
    cfg = SweepConfig("fixed-n-vary-delta", (10,), (0.7,),
                      methods=("vt",), estimators=("constant",))
    rows = run_sweep(cfg)
    line = rows_to_csv(rows).splitlines()[1]
    cells = line.split(",")
    assert float(cells[0]) == 0.7
    assert float(cells[2]) == rows[0]["bound_vt"]  # repr round-trips exactly


def test_constants_command(tmp_path, capsys):
    out1, out2 = tmp_path / "c1.csv", tmp_path / "c2.csv"
    assert main(["constants", "--out", str(out1)]) == 0
    first = capsys.readouterr().out
    assert main(["constants", "--out", str(out2)]) == 0
    assert read(out1) == read(out2)
    rows = out1.read_text().splitlines()
    assert rows[0] == "name,value,argmax"
    vals = {r.split(",")[0]: float(r.split(",")[1]) for r in rows[1:]}
    assert vals["regular_twopoint"] == pytest.approx(0.28953, abs=5e-4)
    assert vals["uniform_twopoint"] == pytest.approx(0.0558, abs=5e-4)
    assert vals["uniform_diffeo"] == pytest.approx(0.0635**2, abs=1e-4)
    args = {r.split(",")[0]: float(r.split(",")[2]) for r in rows[1:]}
    assert all(math.isfinite(v) for v in args.values())
    assert "regular_twopoint" in first


def test_selftest_command(capsys):
    assert main(["selftest"]) == 0
    printed = capsys.readouterr().out
    assert printed.count("PASS") == 6
    assert "FAIL" not in printed


def test_selftest_reports_injected_failure(capsys, monkeypatch):
    import minimaxlb.cli as cli

    def broken_checks():
        return [("kepler-residual", False, "tolerance forced to 0")]

    monkeypatch.setattr(cli, "_selftest_checks", broken_checks)
    assert main(["selftest"]) == 3
    printed = capsys.readouterr().out
    assert "FAIL kepler-residual" in printed


def test_bound_command_hellinger_and_vantrees(tmp_path, capsys):
    code = main(["bound", "--method", "vantrees", "--functional", "maxzero",
                 "--prior", "cosine:0:1", "--n", "1",
                 "--out", str(tmp_path / "v.csv")])
    assert code == 0
    value = float(capsys.readouterr().out.splitlines()[1].split("=")[1])
    assert value == pytest.approx(0.25 / (PI2 + 1.0), abs=1e-9)
    code = main(["bound", "--method", "hellinger", "--functional", "identity",
                 "--prior", "gaussian:0:1", "--n", "1", "--h", "0.001",
                 "--out", str(tmp_path / "h.csv")])
    assert code == 0
    value = float([l for l in capsys.readouterr().out.splitlines()
                   if l.startswith("value=")][0][6:])
    assert value == pytest.approx(0.5, abs=2e-3)


def test_bound_command_validation_exit(tmp_path):
    # lambda > 0 with n > 1 is a documented API restriction
    assert main(["bound", "--method", "chi2", "--prior", "gaussian:0:1",
                 "--h", "0.1", "--lambda", "0.5", "--n", "2",
                 "--out", str(tmp_path / "x.csv")]) == 2
