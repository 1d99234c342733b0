"""Command-line front end.

    aquawake run <scenario.yaml> [--seed N] [--out DIR]
    aquawake sweep <scenario.yaml> --param NAME --values V1,V2,... [--trials N] [--out DIR]
    aquawake preset-path <name>

Exit codes: 0 success, 1 usage error, 2 scenario/validation error. Output
CSVs carry a schema_version column and are written atomically, so a failed
run never leaves truncated files behind. AQUAWAKE_OUT_DIR sets the default
output directory.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
from dataclasses import replace
from importlib import resources
from pathlib import Path

from .errors import ConfigurationError
from .scenario_io import load_scenario
from .sim import SWEEPABLE_PARAMETERS, ScenarioResult, run_scenario, sweep

SCHEMA_VERSION = "1"
OUT_DIR_ENV = "AQUAWAKE_OUT_DIR"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage problems; this CLI reserves 2 for validation
    def error(self, message: str):
        raise _UsageError(message)


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(float(value))  # normalizes numpy scalars too
    return str(value)


def _write_csv(path: Path, header: list[str], rows: list[list]) -> None:
    tmp = path.with_suffix(path.suffix + ".tmp")
    with open(tmp, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])
    os.replace(tmp, path)


def _out_dir(arg: str | None) -> Path:
    if arg:
        return Path(arg)
    return Path(os.environ.get(OUT_DIR_ENV, "aquawake-out"))


def preset_path(name: str) -> Path:
    """Filesystem path of a bundled scenario preset."""
    ref = resources.files("aquawake").joinpath("presets", f"{name}.scenario")
    with resources.as_file(ref) as p:
        path = Path(p)
    if not path.exists():
        available = ", ".join(
            sorted(
                p.name[: -len(".scenario")]
                for p in (resources.files("aquawake") / "presets").iterdir()
                if p.name.endswith(".scenario")
            )
        )
        raise ConfigurationError(f"unknown preset {name!r}; available: {available}")
    return path


def _write_run_outputs(result: ScenarioResult, out: Path) -> None:
    out.mkdir(parents=True, exist_ok=True)
    _write_csv(
        out / "result.csv",
        [
            "schema_version", "seed", "woke", "decoded_uuid", "time_to_wake_s",
            "peak_v_cap_v", "harvested_energy_j", "consumed_energy_j",
            "rail_up_time_s", "first_sync_time_s", "decision_time_s",
        ],
        [[
            SCHEMA_VERSION, result.seed, result.woke, result.decoded_uuid,
            result.time_to_wake, result.peak_v_cap, result.harvested_energy,
            result.consumed_energy, result.rail_up_time, result.first_sync_time,
            result.decision_time,
        ]],
    )
    _write_csv(
        out / "vcap_trace.csv",
        ["schema_version", "time_s", "v_cap_v", "mode"],
        [
            [SCHEMA_VERSION, float(t), float(v), m]
            for t, v, m in zip(result.vcap_times, result.vcap_values, result.mode_values)
        ],
    )
    _write_csv(
        out / "comparator_edges.csv",
        ["schema_version", "time_s", "level"],
        [
            [SCHEMA_VERSION, float(t), bool(lv)]
            for t, lv in zip(result.edge_trace.edge_times, result.edge_trace.edge_levels)
        ],
    )


def _cmd_run(args) -> int:
    scenario = load_scenario(args.scenario)
    if args.seed is not None:
        scenario = replace(scenario, sim=replace(scenario.sim, seed=args.seed))
    result = run_scenario(scenario)
    _write_run_outputs(result, _out_dir(args.out))
    ttw = "none" if result.time_to_wake is None else f"{result.time_to_wake:.6f}s"
    print(f"woke={result.woke} time_to_wake={ttw} peak_v_cap={result.peak_v_cap:.4f}V")
    return EXIT_OK


def _cmd_sweep(args) -> int:
    scenario = load_scenario(args.scenario)
    if args.seed is not None:
        scenario = replace(scenario, sim=replace(scenario.sim, seed=args.seed))
    try:
        values = [float(v) for v in args.values.split(",") if v.strip()]
    except ValueError as exc:
        raise _UsageError(f"--values must be a comma-separated number list: {exc}") from exc
    result = sweep(scenario, args.param, values, trials=args.trials)

    header = [
        "schema_version", "row_type", "parameter", "value", "trial", "seed",
        "woke", "decoded_uuid", "time_to_wake_s", "peak_v_cap_v",
        "harvested_energy_j", "consumed_energy_j",
        "trials", "wake_success_rate", "mean_peak_v_cap_v", "mean_time_to_wake_s",
    ]
    rows = []
    for r in result.rows:
        rows.append([
            SCHEMA_VERSION, "trial", r["parameter"], r["value"], r["trial"], r["seed"],
            r["woke"], r["decoded_uuid"], r["time_to_wake"], r["peak_v_cap"],
            r["harvested_energy"], r["consumed_energy"], None, None, None, None,
        ])
    for a in result.aggregates:
        rows.append([
            SCHEMA_VERSION, "aggregate", a["parameter"], a["value"], None, None,
            None, None, None, None, None, None,
            a["trials"], a["wake_success_rate"], a["mean_peak_v_cap"],
            a["mean_time_to_wake"],
        ])
    out = _out_dir(args.out)
    out.mkdir(parents=True, exist_ok=True)
    _write_csv(out / "sweep.csv", header, rows)
    for a in result.aggregates:
        print(
            f"{args.param}={a['value']}: wake_success_rate="
            f"{a['wake_success_rate']:.2f} over {a['trials']} trials"
        )
    return EXIT_OK


def _cmd_preset_path(args) -> int:
    print(preset_path(args.name))
    return EXIT_OK


def _build_parser() -> _Parser:
    parser = _Parser(prog="aquawake", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="simulate one scenario file")
    p_run.add_argument("scenario", help="scenario YAML path")
    p_run.add_argument("--seed", type=int, default=None, help="override the scenario seed")
    p_run.add_argument("--out", default=None, help=f"output dir (default ${OUT_DIR_ENV} or ./aquawake-out)")
    p_run.set_defaults(func=_cmd_run)

    p_sweep = sub.add_parser("sweep", help="run a parameter sweep with seeded trials")
    p_sweep.add_argument("scenario", help="base scenario YAML path")
    p_sweep.add_argument("--param", required=True, help=f"one of: {', '.join(SWEEPABLE_PARAMETERS)}")
    p_sweep.add_argument("--values", required=True, help="comma-separated values")
    p_sweep.add_argument("--trials", type=int, default=1, help="seeded trials per value")
    p_sweep.add_argument("--seed", type=int, default=None, help="override the base seed")
    p_sweep.add_argument("--out", default=None, help=f"output dir (default ${OUT_DIR_ENV} or ./aquawake-out)")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_preset = sub.add_parser("preset-path", help="print the path of a bundled preset")
    p_preset.add_argument("name", help="preset name, e.g. paper_fig5")
    p_preset.set_defaults(func=_cmd_preset_path)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ConfigurationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
