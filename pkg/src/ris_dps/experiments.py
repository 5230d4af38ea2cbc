"""Scenario runner reproducing the simulation study at desk scale.

A Scenario fixes a link budget, a phase-shift set (or a gap-parameterized
family), the solvers to compare, and a sweep axis; run_scenario samples
`trials` seeded realizations per axis point, solves each with every
requested solver, and aggregates spectral-efficiency statistics into
ResultRows.  Output is CSV plus a JSON metadata sidecar; the CSV is a pure
function of (scenario, seed) so repeated runs are byte-identical.
"""

import json
import math
import subprocess
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from datetime import datetime, timezone
from functools import partial
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .analysis import empty_regions, measured_empty_ratio
from .channel import LinkBudget, PhaseShiftSet, sample_realization
from .metrics import performance_gain
from .optimizer import (continuous_upper_bound, cpp_optimize,
                        exhaustive_optimize, sweep_optimize)

SCHEMA_VERSION = 1

#: Canonical solver order for result columns.
SOLVERS = ("sweep", "cpp", "cpp_always_on", "exhaustive", "continuous_ub")

AXES = ("n_elements", "gain_direct_db", "snr_budget_db", "phase_gap",
        "phase_gap_pair")

_PI = math.pi


@dataclass
class Scenario:
    """One experiment: an axis of points, each averaged over seeded trials.

    For the gap axes the phase set is rebuilt per point ({0, gap} or
    {0, g1, g1+g2}) and the `phases` field is unused.  mode "regions"
    dumps the empty regions of a single realization instead of a curve.
    """

    name: str
    budget: LinkBudget
    n_elements: int
    phases: Optional[PhaseShiftSet]
    axis: str
    values: tuple
    trials: int
    seed: int
    solvers: tuple
    empty_ratio: bool = False
    mode: str = "curve"
    exhaustive_cap: int = 2 ** 24

    def validate(self) -> None:
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if self.mode not in ("curve", "regions"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.mode == "regions":
            if self.phases is None:
                raise ValueError("regions mode needs an explicit phase set")
            if self.n_elements < 1:
                raise ValueError("regions mode needs at least one element")
            return
        if self.axis not in AXES:
            raise ValueError(f"unknown sweep axis {self.axis!r}")
        if not self.values:
            raise ValueError("sweep values must be non-empty")
        unknown = set(self.solvers) - set(SOLVERS)
        if unknown or not self.solvers:
            raise ValueError(f"solvers must be a non-empty subset of {SOLVERS}")
        if self.empty_ratio and "sweep" not in self.solvers:
            raise ValueError("empty_ratio needs the sweep solver")
        if self.axis in ("phase_gap", "phase_gap_pair"):
            for x in self.values:
                self._point(x)  # raises on an invalid gap combination
        elif self.phases is None:
            raise ValueError(f"axis {self.axis!r} needs an explicit phase set")
        if "exhaustive" in self.solvers:
            if not any(self._exhaustive_ok(x) for x in self.values):
                raise ValueError(
                    "exhaustive requested but every point exceeds the cap")

    def _point(self, x) -> Tuple[LinkBudget, int, PhaseShiftSet]:
        """Budget, element count, and phase set at one axis point."""
        budget, n, phases = self.budget, self.n_elements, self.phases
        if self.axis == "n_elements":
            n = int(x)
        elif self.axis == "gain_direct_db":
            budget = replace(budget, gain_direct_db=float(x))
        elif self.axis == "snr_budget_db":
            budget = replace(budget, snr_budget_db=float(x))
        elif self.axis == "phase_gap":
            phases = PhaseShiftSet((0.0, float(x)))
        elif self.axis == "phase_gap_pair":
            g1, g2 = (float(x[0]), float(x[1]))
            phases = PhaseShiftSet((0.0, g1, g1 + g2))
        return budget, n, phases

    def _exhaustive_ok(self, x) -> bool:
        _, n, phases = self._point(x)
        return (phases.k + 1) ** n <= self.exhaustive_cap

    def to_json(self) -> dict:
        doc = {
            "schema_version": SCHEMA_VERSION,
            "name": self.name,
            "budget": self.budget.to_json(),
            "n_elements": self.n_elements,
            "phases": list(self.phases.phases) if self.phases else None,
            "sweep": {"axis": self.axis,
                      "values": [list(v) if isinstance(v, tuple) else v
                                 for v in self.values]},
            "trials": self.trials,
            "seed": self.seed,
            "solvers": list(self.solvers),
            "empty_ratio": self.empty_ratio,
            "mode": self.mode,
            "exhaustive_cap": self.exhaustive_cap,
        }
        return doc

    @classmethod
    def from_json(cls, doc: dict) -> "Scenario":
        if doc.get("schema_version") != SCHEMA_VERSION:
            raise ValueError(
                f"unsupported scenario schema_version {doc.get('schema_version')!r}")
        sweep = doc.get("sweep") or {"axis": "n_elements", "values": []}
        values = tuple(tuple(v) if isinstance(v, list) else v
                       for v in sweep.get("values", []))
        phases = doc.get("phases")
        scenario = cls(
            name=str(doc["name"]),
            budget=LinkBudget.from_json(doc["budget"]),
            n_elements=int(doc.get("n_elements", 0)),
            phases=PhaseShiftSet(phases) if phases else None,
            axis=sweep.get("axis", "n_elements"),
            values=values,
            trials=int(doc.get("trials", 1000)),
            seed=int(doc["seed"]),
            solvers=tuple(doc.get("solvers", ("sweep", "cpp"))),
            empty_ratio=bool(doc.get("empty_ratio", False)),
            mode=str(doc.get("mode", "curve")),
            exhaustive_cap=int(doc.get("exhaustive_cap", 2 ** 24)),
        )
        scenario.validate()
        return scenario


@dataclass
class ResultRow:
    """Aggregated statistics at one axis point.

    x carries one coordinate (two for the gap-pair axis); mean/std are
    spectral efficiencies in bit/s/Hz keyed by solver, with None where a
    solver was skipped (exhaustive over its cap).
    """

    x: tuple
    mean_se: Dict[str, Optional[float]]
    std_se: Dict[str, Optional[float]]
    gain_pct: Optional[float]
    empty_ratio: Optional[float]


def _solve_trial(budget: LinkBudget, n: int, phases: PhaseShiftSet,
                 solvers: tuple, seed: int, cap: int, want_ratio: bool,
                 trial: int) -> Tuple[Dict[str, Optional[float]], Optional[float]]:
    """Amplitudes |h| per solver (and the empty ratio) for one trial."""
    real = sample_realization(budget, n, (seed, trial))
    need_sweep = "sweep" in solvers or want_ratio
    sweep_res = sweep_optimize(real, phases) if need_sweep else None
    amps: Dict[str, Optional[float]] = {}
    for solver in solvers:
        if solver == "sweep":
            amps[solver] = sweep_res.amplitude
        elif solver == "cpp":
            amps[solver] = cpp_optimize(real, phases).amplitude
        elif solver == "cpp_always_on":
            amps[solver] = cpp_optimize(real, phases, always_on=True).amplitude
        elif solver == "exhaustive":
            if (phases.k + 1) ** real.n <= cap:
                amps[solver] = exhaustive_optimize(real, phases, cap).amplitude
            else:
                amps[solver] = None
        elif solver == "continuous_ub":
            amps[solver] = continuous_upper_bound(real)
    ratio = None
    if want_ratio:
        regions = empty_regions(real, phases, sweep_res.amplitude)
        ratio = measured_empty_ratio(regions).measured_ratio
    return amps, ratio


def _point_trials(budget, n, phases, solvers, seed, trials, cap, want_ratio,
                  jobs) -> Tuple[Dict[str, list], List[Optional[float]]]:
    worker = partial(_solve_trial, budget, n, phases, tuple(solvers), seed,
                     cap, want_ratio)
    if jobs > 1:
        chunk = max(1, trials // (jobs * 4))
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(worker, range(trials), chunksize=chunk))
    else:
        results = [worker(t) for t in range(trials)]
    amps = {s: [r[0][s] for r in results] for s in solvers}
    ratios = [r[1] for r in results]
    return amps, ratios


def run_scenario(scenario: Scenario, jobs: int = 1) -> List[ResultRow]:
    """Run every axis point of a curve scenario.

    Trials are deterministic per (scenario seed, trial index), shared
    across axis points, and aggregated in trial order, so the result is
    independent of `jobs`.
    """
    scenario.validate()
    if scenario.mode != "curve":
        raise ValueError("run_scenario handles curve scenarios; "
                         "use regions_dump for regions mode")
    rows = []
    cached_amps = None  # the channel does not depend on the SNR budget
    for x in scenario.values:
        budget, n, phases = scenario._point(x)
        if scenario.axis == "snr_budget_db" and cached_amps is not None:
            amps, ratios = cached_amps
        else:
            amps, ratios = _point_trials(
                budget, n, phases, scenario.solvers, scenario.seed,
                scenario.trials, scenario.exhaustive_cap,
                scenario.empty_ratio, jobs)
            if scenario.axis == "snr_budget_db":
                cached_amps = (amps, ratios)

        snr_scale = 10.0 ** (budget.snr_budget_db / 10.0)
        mean_se: Dict[str, Optional[float]] = {}
        std_se: Dict[str, Optional[float]] = {}
        for solver in scenario.solvers:
            vals = amps[solver]
            if any(a is None for a in vals):
                mean_se[solver] = None
                std_se[solver] = None
                continue
            se = np.log2(1.0 + snr_scale * np.asarray(vals) ** 2)
            mean_se[solver] = float(se.mean())
            std_se[solver] = float(se.std())
        gain = None
        if mean_se.get("sweep") is not None and mean_se.get("cpp") is not None:
            gain = performance_gain(mean_se["sweep"], mean_se["cpp"])
        ratio = None
        if scenario.empty_ratio:
            ratio = float(np.mean(ratios))
        rows.append(ResultRow(
            x=x if isinstance(x, tuple) else (x,),
            mean_se=mean_se, std_se=std_se, gain_pct=gain, empty_ratio=ratio))
    return rows


def regions_dump(scenario: Scenario):
    """Regions of a single seeded realization (list of EmptyRegion)."""
    scenario.validate()
    if scenario.mode != "regions":
        raise ValueError("scenario is not in regions mode")
    real = sample_realization(scenario.budget, scenario.n_elements,
                              (scenario.seed, 0))
    h_star = sweep_optimize(real, scenario.phases).amplitude
    return empty_regions(real, scenario.phases, h_star)


def _fmt(value: Optional[float]) -> str:
    return "" if value is None else repr(float(value))


def write_rows_csv(scenario: Scenario, rows: Sequence[ResultRow], fh) -> None:
    """Write the aggregated rows as CSV with a scenario-dependent header."""
    two_d = scenario.axis == "phase_gap_pair"
    header = ["x", "x2"] if two_d else ["x"]
    solvers = [s for s in SOLVERS if s in scenario.solvers]
    for s in solvers:
        header += [f"mean_se_{s}", f"std_se_{s}"]
    with_gain = "sweep" in solvers and "cpp" in solvers
    if with_gain:
        header.append("gain_pct")
    if scenario.empty_ratio:
        header.append("empty_ratio")
    fh.write(",".join(header) + "\n")
    for row in rows:
        cells = [_fmt(c) for c in row.x]
        for s in solvers:
            cells += [_fmt(row.mean_se[s]), _fmt(row.std_se[s])]
        if with_gain:
            cells.append(_fmt(row.gain_pct))
        if scenario.empty_ratio:
            cells.append(_fmt(row.empty_ratio))
        fh.write(",".join(cells) + "\n")


def _git_describe() -> Optional[str]:
    try:
        out = subprocess.run(["git", "describe", "--always", "--dirty"],
                             capture_output=True, text=True, timeout=5)
    except (OSError, subprocess.TimeoutExpired):
        return None
    if out.returncode != 0:
        return None
    return out.stdout.strip() or None


def write_meta_json(scenario: Scenario, fh, jobs: int = 1) -> None:
    """Sidecar metadata: the scenario, seed, git describe, timestamp."""
    from . import __version__

    json.dump({
        "scenario": scenario.to_json(),
        "seed": scenario.seed,
        "git_describe": _git_describe(),
        "generated_at": datetime.now(timezone.utc).isoformat(),
        "package_version": __version__,
        "jobs": jobs,
    }, fh, indent=2)
    fh.write("\n")


def _base_budget(snr_budget_db: float = 100.0,
                 gain_direct_db: float = -140.0) -> LinkBudget:
    return LinkBudget(gain_tx_ris_db=-80.0, gain_ris_rx_db=-60.0,
                      gain_direct_db=gain_direct_db,
                      snr_budget_db=snr_budget_db, bandwidth_hz=1.0)


#: The two-phase set used by the capacity and gain studies.
TWO_PHASE_SET = PhaseShiftSet((_PI / 6.0, 5.0 * _PI / 6.0))


def builtin_scenarios() -> List[Scenario]:
    """Desk-scale presets mirroring the simulation study's figures."""
    pi = _PI
    gap_grid = [k * pi / 12.0 for k in range(1, 24)]
    pair_grid = tuple((a * pi / 6.0, b * pi / 6.0)
                      for a in range(1, 11) for b in range(1, 12 - a))
    return [
        Scenario(name="fig9", budget=_base_budget(), n_elements=0,
                 phases=TWO_PHASE_SET, axis="n_elements",
                 values=(1, 2, 3, 4, 5, 6, 7, 8, 12, 16, 24, 32, 48, 64),
                 trials=1000, seed=1009,
                 solvers=("sweep", "cpp", "exhaustive"),
                 exhaustive_cap=3 ** 8),
        Scenario(name="fig10", budget=_base_budget(), n_elements=50,
                 phases=TWO_PHASE_SET, axis="gain_direct_db",
                 values=tuple(range(-140, -99, 5)),
                 trials=1000, seed=1010, solvers=("sweep", "cpp")),
        Scenario(name="fig11", budget=_base_budget(), n_elements=50,
                 phases=TWO_PHASE_SET, axis="snr_budget_db",
                 values=tuple(range(100, 131, 2)),
                 trials=1000, seed=1011, solvers=("sweep", "cpp")),
        Scenario(name="fig12", budget=_base_budget(), n_elements=50,
                 phases=None, axis="phase_gap", values=tuple(gap_grid),
                 trials=1000, seed=1012, solvers=("sweep", "cpp")),
        Scenario(name="fig13", budget=_base_budget(), n_elements=50,
                 phases=None, axis="phase_gap_pair", values=pair_grid,
                 trials=1000, seed=1013, solvers=("sweep", "cpp")),
        Scenario(name="fig14", budget=_base_budget(), n_elements=50,
                 phases=TWO_PHASE_SET, axis="n_elements", values=(),
                 trials=1, seed=1014, solvers=("sweep",), mode="regions"),
        Scenario(name="fig15_k2", budget=_base_budget(), n_elements=0,
                 phases=PhaseShiftSet.uniform(2), axis="n_elements",
                 values=(25, 50, 100, 150, 200), trials=1000, seed=1015,
                 solvers=("sweep",), empty_ratio=True),
        Scenario(name="fig15_k3", budget=_base_budget(), n_elements=0,
                 phases=PhaseShiftSet.uniform(3), axis="n_elements",
                 values=(25, 50, 100, 150, 200), trials=1000, seed=1015,
                 solvers=("sweep",), empty_ratio=True),
    ]


def get_builtin(name: str) -> List[Scenario]:
    """Presets under a name; "fig15" expands to both uniform sets.

    Raises:
        KeyError: if the name matches no preset.
    """
    presets = {s.name: s for s in builtin_scenarios()}
    if name in presets:
        return [presets[name]]
    if name == "fig15":
        return [presets["fig15_k2"], presets["fig15_k3"]]
    raise KeyError(f"unknown preset {name!r}; "
                   f"available: {', '.join(list(presets) + ['fig15'])}")
