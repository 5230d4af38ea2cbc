import json
import math
import subprocess
import sys

import pytest

from ris_dps import LinkBudget, sample_realization
from ris_dps.cli import main, parse_phases

PI = math.pi


def test_parse_phases():
    ps = parse_phases("pi/6, 5pi/6")
    assert ps.phases == pytest.approx((PI / 6, 5 * PI / 6))
    assert parse_phases("0.5,1.5").phases == (0.5, 1.5)
    assert parse_phases("0,2pi/3,1.5pi").phases == pytest.approx(
        (0.0, 2 * PI / 3, 1.5 * PI))
    with pytest.raises(ValueError, match="parse"):
        parse_phases("pi/6,banana")


@pytest.fixture
def realization_file(tmp_path):
    real = sample_realization(LinkBudget(-80.0, -60.0, -140.0, 100.0), 6,
                              (123, 0))
    path = tmp_path / "real.json"
    real.save(path)
    return path


def test_solve_command(realization_file, capsys):
    rc = main(["solve", "--input", str(realization_file),
               "--phases", "pi/6,5pi/6", "--solver", "sweep"])
    assert rc == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["solver"] == "sweep"
    assert len(doc["config"]) == 6
    assert doc["amplitude"] > 0
    assert "capacity_bps" not in doc


def test_solve_with_budget_reports_capacity(realization_file, capsys):
    rc = main(["solve", "--input", str(realization_file),
               "--phases", "pi/6,5pi/6", "--solver", "exhaustive",
               "--snr-budget-db", "140"])
    assert rc == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["capacity_bps"] > 0


def test_solve_agrees_across_solvers(realization_file, capsys):
    amps = {}
    for solver in ("sweep", "exhaustive", "cpp", "cpp_always_on"):
        main(["solve", "--input", str(realization_file),
              "--phases", "pi/6,5pi/6", "--solver", solver])
        amps[solver] = json.loads(capsys.readouterr().out)["amplitude"]
    assert amps["sweep"] == pytest.approx(amps["exhaustive"], rel=1e-12)
    assert amps["cpp"] <= amps["sweep"] * (1 + 1e-12)


def test_regions_command(realization_file, capsys):
    rc = main(["regions", "--input", str(realization_file),
               "--phases", "pi/6,5pi/6"])
    assert rc == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "center_rad,half_width_rad,element,kind"
    assert len(lines) == 1 + 6 * 3


def test_regions_upper_bound_narrows(realization_file, capsys):
    main(["regions", "--input", str(realization_file),
          "--phases", "pi/6,5pi/6"])
    sweep_rows = capsys.readouterr().out.splitlines()[1:]
    main(["regions", "--input", str(realization_file),
          "--phases", "pi/6,5pi/6", "--use-upper-bound"])
    ub_rows = capsys.readouterr().out.splitlines()[1:]
    for s_row, u_row in zip(sweep_rows, ub_rows):
        assert float(u_row.split(",")[1]) <= float(s_row.split(",")[1])


def scenario_doc(seed=31):
    return {
        "schema_version": 1,
        "name": "smoke",
        "budget": {"gain_tx_ris_db": -80.0, "gain_ris_rx_db": -60.0,
                   "gain_direct_db": -140.0, "snr_budget_db": 100.0,
                   "bandwidth_hz": 1.0},
        "n_elements": 4,
        "phases": [PI / 6, 5 * PI / 6],
        "sweep": {"axis": "n_elements", "values": [2, 4]},
        "trials": 6,
        "seed": seed,
        "solvers": ["sweep", "cpp"],
    }


def test_run_command_byte_identical(tmp_path):
    spath = tmp_path / "smoke.json"
    spath.write_text(json.dumps(scenario_doc()))
    out_a, out_b = tmp_path / "a", tmp_path / "b"
    assert main(["run", "--scenario", str(spath), "--out", str(out_a)]) == 0
    assert main(["run", "--scenario", str(spath), "--out", str(out_b)]) == 0
    csv_a = (out_a / "smoke.csv").read_bytes()
    csv_b = (out_b / "smoke.csv").read_bytes()
    assert csv_a == csv_b
    meta = json.loads((out_a / "smoke.meta.json").read_text())
    assert meta["scenario"]["trials"] == 6


def test_run_command_seed_override_changes_output(tmp_path):
    spath = tmp_path / "smoke.json"
    spath.write_text(json.dumps(scenario_doc()))
    out_a, out_b = tmp_path / "a", tmp_path / "b"
    main(["run", "--scenario", str(spath), "--out", str(out_a)])
    main(["run", "--scenario", str(spath), "--out", str(out_b),
          "--seed", "77"])
    assert ((out_a / "smoke.csv").read_bytes()
            != (out_b / "smoke.csv").read_bytes())


def test_run_preset_regions_mode(tmp_path):
    rc = main(["run", "--scenario", "fig14", "--out", str(tmp_path)])
    assert rc == 0
    lines = (tmp_path / "fig14.csv").read_text().splitlines()
    assert len(lines) == 1 + 150


def test_unknown_preset_fails_cleanly(tmp_path, capsys):
    rc = main(["run", "--scenario", "fig99", "--out", str(tmp_path)])
    assert rc == 1
    assert "error" in capsys.readouterr().err


def test_invalid_scenario_fails_cleanly(tmp_path, capsys):
    spath = tmp_path / "bad.json"
    doc = scenario_doc()
    doc["trials"] = 0
    spath.write_text(json.dumps(doc))
    rc = main(["run", "--scenario", str(spath), "--out", str(tmp_path)])
    assert rc == 1
    assert "trials" in capsys.readouterr().err


def test_module_entry_point(tmp_path):
    real = sample_realization(LinkBudget(-80.0, -60.0, -140.0, 100.0), 3,
                              (5, 0))
    path = tmp_path / "real.json"
    real.save(path)
    proc = subprocess.run(
        [sys.executable, "-m", "ris_dps", "solve", "--input", str(path),
         "--phases", "pi/6,5pi/6", "--solver", "sweep"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["config"]
