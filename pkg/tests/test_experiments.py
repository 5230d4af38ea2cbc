import io
import json
import math

import pytest

from ris_dps import LinkBudget, PhaseShiftSet
from ris_dps.experiments import (Scenario, builtin_scenarios, get_builtin,
                                 regions_dump, run_scenario, write_meta_json,
                                 write_rows_csv)

PI = math.pi

BUDGET = LinkBudget(-80.0, -60.0, -140.0, 100.0)
TWO_PHASES = PhaseShiftSet((PI / 6, 5 * PI / 6))


def tiny_scenario(**overrides):
    base = dict(name="tiny", budget=BUDGET, n_elements=4, phases=TWO_PHASES,
                axis="n_elements", values=(2, 4), trials=8, seed=99,
                solvers=("sweep", "cpp", "exhaustive"))
    base.update(overrides)
    return Scenario(**base)


class TestScenarioValidation:
    def test_valid(self):
        tiny_scenario().validate()

    def test_bad_trials(self):
        with pytest.raises(ValueError):
            tiny_scenario(trials=0).validate()

    def test_bad_solver(self):
        with pytest.raises(ValueError, match="solvers"):
            tiny_scenario(solvers=("sweep", "annealing")).validate()

    def test_empty_values(self):
        with pytest.raises(ValueError):
            tiny_scenario(values=()).validate()

    def test_empty_ratio_needs_sweep(self):
        with pytest.raises(ValueError, match="sweep"):
            tiny_scenario(solvers=("cpp",), empty_ratio=True).validate()

    def test_gap_axis_checks_gap_values(self):
        with pytest.raises(ValueError):
            tiny_scenario(axis="phase_gap", values=(2 * PI,),
                          phases=None).validate()
        tiny_scenario(axis="phase_gap", values=(PI / 3,), phases=None).validate()

    def test_missing_phases(self):
        with pytest.raises(ValueError, match="phase set"):
            tiny_scenario(phases=None).validate()

    def test_exhaustive_cap_must_admit_a_point(self):
        with pytest.raises(ValueError, match="cap"):
            tiny_scenario(values=(30, 40), exhaustive_cap=3 ** 8).validate()

    def test_unknown_axis(self):
        with pytest.raises(ValueError, match="axis"):
            tiny_scenario(axis="temperature").validate()


def test_scenario_json_roundtrip():
    s = tiny_scenario(empty_ratio=True, solvers=("sweep", "cpp"))
    doc = json.loads(json.dumps(s.to_json()))
    back = Scenario.from_json(doc)
    assert back == s
    with pytest.raises(ValueError, match="schema_version"):
        Scenario.from_json({**doc, "schema_version": 99})


def test_run_scenario_rows():
    rows = run_scenario(tiny_scenario())
    assert [row.x for row in rows] == [(2,), (4,)]
    for row in rows:
        assert set(row.mean_se) == {"sweep", "cpp", "exhaustive"}
        # sweep is optimal: never below cpp, equal to exhaustive
        assert row.gain_pct >= -1e-9
        assert row.mean_se["sweep"] == pytest.approx(
            row.mean_se["exhaustive"], rel=1e-12)
        assert row.std_se["sweep"] >= 0.0


def test_exhaustive_skipped_beyond_cap():
    s = tiny_scenario(values=(2, 12), exhaustive_cap=3 ** 8)
    rows = run_scenario(s)
    assert rows[0].mean_se["exhaustive"] is not None
    assert rows[1].mean_se["exhaustive"] is None


def test_deterministic_rows_and_csv():
    s = tiny_scenario()
    rows_a = run_scenario(s)
    rows_b = run_scenario(s)
    assert rows_a == rows_b
    bufs = []
    for rows in (rows_a, rows_b):
        buf = io.StringIO()
        write_rows_csv(s, rows, buf)
        bufs.append(buf.getvalue())
    assert bufs[0] == bufs[1]


def test_jobs_do_not_change_results():
    s = tiny_scenario(values=(3,), trials=6)
    assert run_scenario(s, jobs=1) == run_scenario(s, jobs=2)


def test_empty_ratio_column():
    s = tiny_scenario(solvers=("sweep",), empty_ratio=True, values=(6,))
    (row,) = run_scenario(s)
    assert 0.0 < row.empty_ratio < 1.0
    assert row.gain_pct is None


def test_snr_axis_reuses_realizations():
    # the channel is independent of the SNR budget, so the per-trial
    # amplitudes (hence gains) must come from the same realizations
    s = tiny_scenario(axis="snr_budget_db", values=(100.0, 100.0),
                      solvers=("sweep", "cpp"), n_elements=5)
    rows = run_scenario(s)
    assert rows[0].mean_se == rows[1].mean_se


def test_phase_gap_axis_builds_pair_sets():
    s = tiny_scenario(axis="phase_gap", values=(PI / 2, PI), phases=None,
                      solvers=("sweep", "cpp"), n_elements=6, trials=5)
    rows = run_scenario(s)
    assert len(rows) == 2
    s2 = tiny_scenario(axis="phase_gap_pair",
                       values=((2 * PI / 3, 2 * PI / 3),), phases=None,
                       solvers=("sweep", "cpp"), n_elements=6, trials=5)
    (row,) = run_scenario(s2)
    assert len(row.x) == 2


def test_csv_header_layout():
    s = tiny_scenario(solvers=("sweep", "cpp", "exhaustive"))
    rows = run_scenario(s)
    buf = io.StringIO()
    write_rows_csv(s, rows, buf)
    header = buf.getvalue().splitlines()[0].split(",")
    assert header == ["x", "mean_se_sweep", "std_se_sweep", "mean_se_cpp",
                      "std_se_cpp", "mean_se_exhaustive", "std_se_exhaustive",
                      "gain_pct"]

    s2 = tiny_scenario(axis="phase_gap_pair", values=((PI / 2, PI / 2),),
                       phases=None, solvers=("sweep", "cpp"), trials=2,
                       empty_ratio=True)
    buf = io.StringIO()
    write_rows_csv(s2, run_scenario(s2), buf)
    header = buf.getvalue().splitlines()[0].split(",")
    assert header[:2] == ["x", "x2"]
    assert header[-2:] == ["gain_pct", "empty_ratio"]


def test_meta_sidecar():
    s = tiny_scenario()
    buf = io.StringIO()
    write_meta_json(s, buf, jobs=3)
    doc = json.loads(buf.getvalue())
    assert doc["seed"] == 99
    assert doc["jobs"] == 3
    assert doc["scenario"]["name"] == "tiny"
    assert "generated_at" in doc


def test_builtin_presets_validate():
    presets = builtin_scenarios()
    names = [s.name for s in presets]
    assert names == ["fig9", "fig10", "fig11", "fig12", "fig13", "fig14",
                     "fig15_k2", "fig15_k3"]
    for s in presets:
        s.validate()


def test_get_builtin_lookup():
    assert [s.name for s in get_builtin("fig15")] == ["fig15_k2", "fig15_k3"]
    assert get_builtin("fig12")[0].axis == "phase_gap"
    with pytest.raises(KeyError):
        get_builtin("fig99")


def test_fig13_grid_contains_uniform_point():
    s = get_builtin("fig13")[0]
    assert any(abs(g1 - 2 * PI / 3) < 1e-12 and abs(g2 - 2 * PI / 3) < 1e-12
               for g1, g2 in s.values)


def test_regions_dump_matches_line_count():
    s = get_builtin("fig14")[0]
    regions = regions_dump(s)
    assert len(regions) == 150  # 50 elements, K+1 = 3 lines each
    with pytest.raises(ValueError):
        regions_dump(tiny_scenario())
