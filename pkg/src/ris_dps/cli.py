"""Command-line experiment runner.

Subcommands:
    run      execute a scenario (JSON file or builtin preset) into CSV + meta
    solve    solve one saved realization with a chosen solver
    regions  dump the empty regions of one saved realization as CSV
"""

import argparse
import json
import math
import os
import re
import sys
from typing import List, Optional

from .analysis import empty_regions, write_regions_csv
from .channel import ChannelRealization, LinkBudget, PhaseShiftSet
from .experiments import (Scenario, get_builtin, regions_dump, run_scenario,
                          write_meta_json, write_rows_csv)
from .optimizer import (continuous_upper_bound, cpp_optimize,
                        exhaustive_optimize, sweep_optimize)

_PHASE_TOKEN = re.compile(r"^(\d+(?:\.\d+)?)?\s*pi(?:\s*/\s*(\d+(?:\.\d+)?))?$")


def parse_phases(text: str) -> PhaseShiftSet:
    """Parse a comma-separated phase list; items are radians or pi fractions.

    Accepts plain floats and tokens like "pi/6", "5pi/6", "1.5pi".
    """
    values = []
    for raw in text.split(","):
        token = raw.strip().lower()
        if not token:
            continue
        m = _PHASE_TOKEN.match(token)
        if m:
            num = float(m.group(1)) if m.group(1) else 1.0
            den = float(m.group(2)) if m.group(2) else 1.0
            values.append(num * math.pi / den)
        else:
            try:
                values.append(float(token))
            except ValueError:
                raise ValueError(f"cannot parse phase {raw.strip()!r}")
    return PhaseShiftSet(values)


def _load_realization(path: str) -> ChannelRealization:
    return ChannelRealization.load(path)


def _resolve_scenarios(name_or_path: str) -> List[Scenario]:
    if os.path.exists(name_or_path):
        with open(name_or_path) as fh:
            return [Scenario.from_json(json.load(fh))]
    return get_builtin(name_or_path)


def _cmd_run(args) -> int:
    scenarios = _resolve_scenarios(args.scenario)
    os.makedirs(args.out, exist_ok=True)
    for scenario in scenarios:
        if args.seed is not None:
            scenario.seed = args.seed
        if args.fast:
            scenario.trials = min(scenario.trials, 100)
        if args.trials is not None:
            scenario.trials = args.trials
        scenario.validate()
        csv_path = os.path.join(args.out, f"{scenario.name}.csv")
        meta_path = os.path.join(args.out, f"{scenario.name}.meta.json")
        print(f"running {scenario.name} "
              f"({scenario.trials} trials, seed {scenario.seed})",
              file=sys.stderr)
        if scenario.mode == "regions":
            regions = regions_dump(scenario)
            with open(csv_path, "w") as fh:
                write_regions_csv(regions, fh)
        else:
            rows = run_scenario(scenario, jobs=args.jobs)
            with open(csv_path, "w") as fh:
                write_rows_csv(scenario, rows, fh)
        with open(meta_path, "w") as fh:
            write_meta_json(scenario, fh, jobs=args.jobs)
        print(f"wrote {csv_path}", file=sys.stderr)
    return 0


def _cmd_solve(args) -> int:
    real = _load_realization(args.input)
    phases = parse_phases(args.phases)
    if args.solver == "sweep":
        result = sweep_optimize(real, phases)
    elif args.solver == "cpp":
        result = cpp_optimize(real, phases)
    elif args.solver == "cpp_always_on":
        result = cpp_optimize(real, phases, always_on=True)
    else:
        result = exhaustive_optimize(real, phases)
    budget = None
    if args.snr_budget_db is not None:
        budget = LinkBudget(0.0, 0.0, 0.0, args.snr_budget_db,
                            args.bandwidth_hz)
    doc = result.to_json(budget)
    doc["solver"] = args.solver
    out = json.dumps(doc, indent=2) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return 0


def _cmd_regions(args) -> int:
    real = _load_realization(args.input)
    phases = parse_phases(args.phases)
    if args.use_upper_bound:
        h_amp = continuous_upper_bound(real)
    else:
        h_amp = sweep_optimize(real, phases).amplitude
    regions = empty_regions(real, phases, h_amp)
    if args.out:
        with open(args.out, "w") as fh:
            write_regions_csv(regions, fh)
    else:
        write_regions_csv(regions, sys.stdout)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ris-dps",
        description="Optimal RIS configuration with arbitrary discrete "
                    "phase shifts: experiment runner and one-shot solvers.")
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run a scenario file or preset")
    run_p.add_argument("--scenario", required=True,
                       help="scenario JSON file or preset name (fig9..fig15)")
    run_p.add_argument("--out", required=True, help="output directory")
    run_p.add_argument("--seed", type=int, default=None,
                       help="override the scenario seed")
    run_p.add_argument("--trials", type=int, default=None,
                       help="override the trial count")
    run_p.add_argument("--fast", action="store_true",
                       help="cap trials at 100 for quick runs")
    run_p.add_argument("--jobs", type=int, default=1,
                       help="worker processes for the trial loop")
    run_p.set_defaults(func=_cmd_run)

    solve_p = sub.add_parser("solve", help="solve one saved realization")
    solve_p.add_argument("--input", required=True,
                         help="realization JSON file")
    solve_p.add_argument("--phases", required=True,
                         help="comma-separated phases, e.g. 'pi/6,5pi/6'")
    solve_p.add_argument("--solver", required=True,
                         choices=("sweep", "cpp", "cpp_always_on",
                                  "exhaustive"))
    solve_p.add_argument("--snr-budget-db", type=float, default=None,
                         help="include capacity at this SNR budget")
    solve_p.add_argument("--bandwidth-hz", type=float, default=1.0)
    solve_p.add_argument("--out", default=None,
                         help="write JSON here instead of stdout")
    solve_p.set_defaults(func=_cmd_solve)

    regions_p = sub.add_parser("regions",
                               help="empty regions of one realization")
    regions_p.add_argument("--input", required=True)
    regions_p.add_argument("--phases", required=True)
    regions_p.add_argument("--use-upper-bound", action="store_true",
                           help="size regions from the continuous upper "
                                "bound instead of the sweep optimum")
    regions_p.add_argument("--out", default=None,
                           help="write CSV here instead of stdout")
    regions_p.set_defaults(func=_cmd_regions)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, KeyError, OSError) as exc:
        print(f"ris-dps: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
