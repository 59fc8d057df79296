"""Command-line front end.

Two subcommands: `run` simulates one scenario and writes a trajectory CSV, a
summary JSON and optionally an SVG plot; `batch` repeats a scenario with
consecutive seeds for both controllers and writes per-run and aggregate
CSVs.  Scenario files are described in the README; a handful of flags
override the file without editing it.
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import replace
from pathlib import Path

from .config import parse_config
from .errors import ConfigInvalid, TooFewWaypoints, UtPursuitError
from .geometry import Circle, StraightLine
from .output import emit_csv, emit_summary_json, emit_svg, format_float
from .roads import RoadModel
from .sim import BatchStats, Controller, RunSummary, Scenario, run, run_batch
from .uncertainty import Covariance3
from .vehicle import NoiseModel
from .waypoints import load_waypoints

logger = logging.getLogger(__name__)

_BATCH_RUNS_HEADER = "controller,run_index,seed,convergence_time,mean_abs_lateral_error,max_abs_delta,fault_count"
_BATCH_AGG_HEADER = (
    "controller,n_runs,n_converged,median_convergence_time,mean_convergence_time,"
    "mean_abs_lateral_error,mean_fault_count"
)


def _parse_road_spec(spec: str) -> RoadModel:
    kind, _, rest = spec.partition(":")
    try:
        if kind == "line":
            m, c = (float(v) for v in rest.split(","))
            return StraightLine(m, c)
        if kind == "circle":
            cx, cy, r = (float(v) for v in rest.split(","))
            return Circle(cx, cy, r)
        if kind == "waypoints":
            return load_waypoints(rest)
    except (ValueError, OSError, TooFewWaypoints) as exc:
        raise ConfigInvalid(f"--road {spec!r}: {exc}") from None
    raise ConfigInvalid(f"--road {spec!r}: expected line:m,c | circle:cx,cy,r | waypoints:file")


def _apply_overrides(scenario: Scenario, args: argparse.Namespace) -> Scenario:
    if args.road is not None:
        scenario = replace(scenario, road=_parse_road_spec(args.road))
    if args.steps is not None:
        scenario = replace(scenario, steps=args.steps)
    if args.controller is not None:
        scenario = replace(scenario, controller=Controller(args.controller))
    if args.noise == "off" and scenario.noise is not None:
        zero = Covariance3(0.0, 0.0, 0.0)
        scenario = replace(scenario, noise=replace(scenario.noise, cov=zero))
    elif args.noise == "on" and scenario.noise is None:
        raise ConfigInvalid("--noise on: the config has no [noise] section to enable")
    if args.seed is not None:
        if scenario.noise is None:
            logger.warning("--seed has no effect: the scenario has no noise model")
        else:
            scenario = replace(scenario, noise=replace(scenario.noise, rng_seed=args.seed))
    return scenario


def _cmd_run(args: argparse.Namespace) -> int:
    scenario = _apply_overrides(parse_config(args.config), args)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    records, summary = run(scenario)
    seed = scenario.noise.rng_seed if scenario.noise is not None else 0
    stem = f"{Path(args.config).stem}_{scenario.controller.value}_{seed}"
    csv_path = out_dir / f"{stem}_trajectory.csv"
    emit_csv(records, str(csv_path))
    json_path = out_dir / f"{stem}_summary.json"
    emit_summary_json(summary, scenario, str(json_path))
    written = [csv_path, json_path]
    if args.svg:
        svg_path = out_dir / f"{stem}.svg"
        emit_svg(records, scenario.road, str(svg_path))
        written.append(svg_path)
    conv = "none" if summary.convergence_time is None else f"{format_float(summary.convergence_time)} s"
    print(
        f"{scenario.controller.value}: {len(records)} steps, convergence {conv}, "
        f"mean |lateral error| {format_float(summary.mean_abs_lateral_error)} m, "
        f"{summary.fault_count} faults"
    )
    for p in written:
        print(f"wrote {p}")
    return 0


def _runs_rows(controller: Controller, summaries: list[RunSummary]) -> list[str]:
    rows = []
    for i, s in enumerate(summaries):
        conv = "" if s.convergence_time is None else format_float(s.convergence_time)
        rows.append(
            f"{controller.value},{i},{s.seed},{conv},"
            f"{format_float(s.mean_abs_lateral_error)},{format_float(s.max_abs_delta)},{s.fault_count}"
        )
    return rows


def _agg_row(stats: BatchStats) -> str:
    mean_conv = "" if stats.mean_convergence_time is None else format_float(stats.mean_convergence_time)
    return (
        f"{stats.controller},{stats.n_runs},{stats.n_converged},"
        f"{format_float(stats.median_convergence_time)},{mean_conv},"
        f"{format_float(stats.mean_abs_lateral_error)},{format_float(stats.mean_fault_count)}"
    )


def _cmd_batch(args: argparse.Namespace) -> int:
    scenario = _apply_overrides(parse_config(args.config), args)
    if scenario.noise is None:
        raise ConfigInvalid("batch needs a scenario with a [noise] section")
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    runs_rows = [_BATCH_RUNS_HEADER]
    agg_rows = [_BATCH_AGG_HEADER]
    for controller in (Controller.PP, Controller.UTPP):
        scen = replace(scenario, controller=controller)
        summaries, stats = run_batch(scen, args.runs, args.base_seed)
        runs_rows.extend(_runs_rows(controller, summaries))
        agg_rows.append(_agg_row(stats))
        print(
            f"{controller.value}: {stats.n_converged}/{stats.n_runs} converged, "
            f"median convergence {format_float(stats.median_convergence_time)} s"
        )
    stem = Path(args.config).stem
    for name, rows in ((f"{stem}_batch_runs.csv", runs_rows), (f"{stem}_batch_aggregate.csv", agg_rows)):
        path = out_dir / name
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("\n".join(rows) + "\n")
        print(f"wrote {path}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="utpursuit",
        description="Pure-pursuit path tracking under pose uncertainty.",
    )
    parser.add_argument("--verbose", action="store_true", help="enable debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", required=True, help="scenario file")
        p.add_argument("--out-dir", required=True, help="directory for the output files")
        p.add_argument("--road", help="override the road: line:m,c | circle:cx,cy,r | waypoints:file")
        p.add_argument("--controller", choices=["pp", "utpp"], help="override the controller")
        p.add_argument("--seed", type=int, help="override the noise seed")
        p.add_argument("--steps", type=int, help="override the number of steps")
        p.add_argument("--noise", choices=["on", "off"], help="force noise on or zero it out")

    p_run = sub.add_parser("run", help="simulate one scenario")
    common(p_run)
    p_run.add_argument("--svg", action="store_true", help="also write the SVG plot")

    p_batch = sub.add_parser("batch", help="run seeded batches for both controllers")
    common(p_batch)
    p_batch.add_argument("--runs", type=int, default=100, help="runs per controller (default 100)")
    p_batch.add_argument("--base-seed", type=int, default=0, help="seed of run 0 (default 0)")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        if args.command == "run":
            return _cmd_run(args)
        return _cmd_batch(args)
    except UtPursuitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
