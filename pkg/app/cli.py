"""Command-line entry point.

Subcommands: plan, grid, locate, simulate, bench, count, serve. Results go to
stdout (or ``--out``) as JSON or CSV; logs go to stderr.

Exit status: 0 on success, 1 on usage errors, 2 on runtime errors.
"""

import argparse
import csv
import io
import json
import sys
from collections.abc import Callable, Iterable, Sequence
from pathlib import Path
from typing import Any, NoReturn

import structlog

from app.bench.schemas import BenchReportDocument, OpCountsDocument
from app.bench.services import BenchService, counts_for_array
from app.core.config import settings
from app.core.constants import CAMPAIGN_RT60_RANGE, DEFAULT_ROOM_DIMS_M, MAX_GRID_LEVEL
from app.core.exceptions import AppError, ValidationError
from app.core.log_config import bind_run_context, setup_logging
from app.geometry.schemas import GridResponse
from app.geometry.services import (
    build_doa_grid,
    build_tdoa_table,
    delay_bounds,
    dump_tdoa,
    enumerate_pairs,
    load_array,
)
from app.localization.schemas import LocateRow
from app.localization.services import LocalizationSetup, PipelineConfig, locate_wav
from app.merging.schemas import PlanResponse
from app.merging.services import MergePlanService, plan_to_document, validation_to_document
from app.simulation.schemas import SimReportDocument
from app.simulation.services import CampaignService

logger = structlog.get_logger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_RUNTIME = 2


class UsageError(Exception):
    pass


class CliParser(argparse.ArgumentParser):
    """ArgumentParser that reports usage errors as exceptions instead of exiting 2."""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


# =============================================================================
# Output helpers
# =============================================================================


def _csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def _json(document: Any) -> str:
    return json.dumps(document, indent=2) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
        logger.info("output_written", path=out)
    else:
        sys.stdout.write(text)


def _pipeline_config(args: argparse.Namespace) -> PipelineConfig:
    return PipelineConfig.from_settings(
        fs=getattr(args, "fs", None),
        c=getattr(args, "c", None),
        n=getattr(args, "n", None),
        hop=getattr(args, "hop", None),
        k=getattr(args, "k", None),
        block=getattr(args, "block", None),
        grid_level=getattr(args, "grid_level", None),
        window=getattr(args, "window", None),
        epsilon=getattr(args, "epsilon", None),
        threads=getattr(args, "threads", None),
    )


# =============================================================================
# Subcommands
# =============================================================================


def cmd_plan(args: argparse.Namespace) -> str:
    array = load_array(args.array)
    pairs = enumerate_pairs(array)
    plan = MergePlanService.build_merge_plan(pairs, args.epsilon)
    document = plan_to_document(plan)

    if args.csv:
        return _csv(
            ["group", "ref", "pair", "sign"],
            (
                (g + 1, group.ref, pair, sign)
                for g, group in enumerate(document)
                for pair, sign in group.members
            ),
        )
    config = _pipeline_config(args)
    validation = None
    if args.validate:
        table = build_tdoa_table(
            pairs, build_doa_grid(config.grid_level, True), config.fs, config.c, config.k
        )
        validation = validation_to_document(MergePlanService.validate_plan(plan, table))
    response = PlanResponse(
        array=array.name,
        pairs=len(pairs),
        groups=plan.q,
        epsilon=plan.epsilon,
        plan=document,
        bounds=delay_bounds(array, config.fs, config.c, config.k),
        validation=validation,
    )
    return _json(response.model_dump(mode="json", exclude_none=True))


def cmd_grid(args: argparse.Namespace) -> str:
    config = _pipeline_config(args)
    grid = build_doa_grid(config.grid_level, not args.full_sphere)
    array = load_array(args.array)
    bounds = delay_bounds(array, config.fs, config.c, config.k)

    if args.dump_tdoa:
        pairs = enumerate_pairs(array)
        table = build_tdoa_table(pairs, grid, config.fs, config.c, config.k)
        dump_tdoa(table, pairs, Path(args.dump_tdoa))

    angles = grid.azimuth_elevation_deg()
    if args.csv:
        return _csv(
            ["index", "x", "y", "z", "azimuth_deg", "elevation_deg"],
            (
                (i, *grid.dirs[i].tolist(), *angles[i].tolist())
                for i in range(len(grid))
            ),
        )
    response = GridResponse(
        level=grid.level,
        hemisphere=grid.hemisphere,
        count=len(grid),
        dirs=grid.dirs.tolist() if args.show_dirs else None,
        azimuth_elevation_deg=angles.tolist() if args.show_dirs else None,
        bounds=bounds,
    )
    return _json(response.model_dump(mode="json", exclude_none=True))


def cmd_locate(args: argparse.Namespace) -> str:
    config = _pipeline_config(args)
    setup = LocalizationSetup.build(load_array(args.array), config)
    results = locate_wav(args.wav, setup, args.method)
    rows = [LocateRow.from_result(i, result) for i, result in enumerate(results)]

    if args.json:
        return _json([row.model_dump() for row in rows])
    return _csv(
        list(LocateRow.model_fields),
        ([getattr(row, name) for name in LocateRow.model_fields] for row in rows),
    )


def cmd_simulate(args: argparse.Namespace) -> str:
    config = _pipeline_config(args)
    report = CampaignService.run_campaign(
        load_array(args.array),
        args.method,
        args.trials,
        args.seed,
        config=config,
        dims=tuple(args.room) if args.room else DEFAULT_ROOM_DIMS_M,
        rt60_range=(args.rt60_min, args.rt60_max),
        max_order=args.max_order,
        absorption=args.absorption,
        duration=args.duration,
        workers=args.workers,
        dump_dir=Path(args.dump_wav) if args.dump_wav else None,
    )
    document = SimReportDocument.from_report(report)

    if args.csv:
        return _csv(
            ["trial", "rt60", "method", "index", "energy", "error_deg", "block"],
            (
                (
                    record.trial,
                    f"{record.rt60:.4f}",
                    method,
                    outcome.index,
                    outcome.energy,
                    f"{outcome.error_deg:.4f}",
                    outcome.block,
                )
                for record in document.records
                for method, outcome in record.outcomes.items()
            ),
        )
    return _json(document.model_dump(mode="json"))


def cmd_bench(args: argparse.Namespace) -> str:
    report = BenchService.run_bench(
        load_array(args.array),
        args.method,
        repetitions=args.repetitions,
        config=_pipeline_config(args),
        warmup=args.warmup,
        seed=args.seed,
    )
    document = BenchReportDocument.from_report(report)
    return document.to_csv() if args.csv else _json(document.model_dump(mode="json"))


def cmd_count(args: argparse.Namespace) -> str:
    config = _pipeline_config(args)
    array = load_array(args.array)
    counts = counts_for_array(array, config.n, config.grid_level, config.epsilon)
    document = OpCountsDocument.from_counts(counts, array.name)
    return document.to_csv() if args.csv else _json(document.model_dump(mode="json"))


def cmd_serve(args: argparse.Namespace) -> str:
    import uvicorn

    uvicorn.run("app.main:app", host=args.host, port=args.port, log_config=None)
    return ""


# =============================================================================
# Parser
# =============================================================================


def _common_options() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--config", help="JSON file of option values (flags override it)")
    parent.add_argument("--log-level", default=None, help="Log level (default: settings)")
    return parent


def _output_options() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    fmt = parent.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON output")
    fmt.add_argument("--csv", action="store_true", help="CSV output")
    parent.add_argument("--out", help="Write the result to this file instead of stdout")
    return parent


def _array_options() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument(
        "--array",
        default=settings.DEFAULT_ARRAY,
        help="Preset name or geometry JSON file (default: %(default)s)",
    )
    return parent


def _pipeline_options() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--fs", type=int, help="Sample rate in Hz")
    parent.add_argument("--c", type=float, help="Speed of sound in m/s")
    parent.add_argument("--n", type=int, help="STFT frame size (power of two)")
    parent.add_argument("--hop", type=int, help="STFT hop in samples (default N/2)")
    parent.add_argument("--k", type=int, help="Interpolation factor (1, 2, 4 or 8)")
    parent.add_argument("--block", type=int, help="Frames per localization block")
    parent.add_argument(
        "--grid-level",
        type=int,
        choices=range(MAX_GRID_LEVEL + 1),
        metavar="LEVEL",
        help="Icosahedral grid subdivision level",
    )
    parent.add_argument("--window", help="STFT window name")
    parent.add_argument("--epsilon", type=float, help="Merge tolerance")
    parent.add_argument("--threads", type=int, help="Threads for the direction scan")
    return parent


def build_parser() -> tuple[CliParser, dict[str, CliParser]]:
    parser = CliParser(prog="doa", description="SRP-PHAT / SMP-PHAT DoA toolkit")
    subparsers = parser.add_subparsers(dest="command", parser_class=CliParser)
    common, output = _common_options(), _output_options()
    array, pipeline = _array_options(), _pipeline_options()
    commands: dict[str, CliParser] = {}

    plan = subparsers.add_parser(
        "plan", parents=[common, output, array, pipeline], help="Print the merge plan"
    )
    plan.add_argument("--validate", action="store_true", help="Check the plan on the TDoA table")
    plan.set_defaults(handler=cmd_plan)
    commands["plan"] = plan

    grid = subparsers.add_parser(
        "grid", parents=[common, output, array, pipeline], help="Print the DoA grid"
    )
    grid.add_argument("--full-sphere", action="store_true", help="Keep the lower hemisphere")
    grid.add_argument("--show-dirs", action="store_true", help="Include direction vectors")
    grid.add_argument("--dump-tdoa", help="Export the TDoA table (.json, .npy or .npz)")
    grid.set_defaults(handler=cmd_grid)
    commands["grid"] = grid

    locate = subparsers.add_parser(
        "locate", parents=[common, output, array, pipeline], help="Localize a WAV file"
    )
    locate.add_argument("--wav", required=True, help="Multichannel WAV file")
    locate.add_argument("--method", choices=["srp", "smp"], default="smp")
    locate.set_defaults(handler=cmd_locate)
    commands["locate"] = locate

    simulate = subparsers.add_parser(
        "simulate", parents=[common, output, array, pipeline], help="Run an MAE campaign"
    )
    simulate.add_argument("--method", choices=["srp", "smp", "both"], default="both")
    simulate.add_argument("--trials", type=int, default=100)
    simulate.add_argument("--seed", type=int, default=42)
    simulate.add_argument("--duration", type=float, help="Seconds of noise per trial")
    simulate.add_argument("--room", type=float, nargs=3, metavar=("X", "Y", "Z"))
    simulate.add_argument("--rt60-min", type=float, default=CAMPAIGN_RT60_RANGE[0])
    simulate.add_argument("--rt60-max", type=float, default=CAMPAIGN_RT60_RANGE[1])
    simulate.add_argument("--max-order", type=int, help="Image reflection order per axis")
    simulate.add_argument("--absorption", type=float, help="Override the Sabine absorption")
    simulate.add_argument("--workers", type=int, default=1, help="Worker processes")
    simulate.add_argument("--dump-wav", help="Directory for trial WAV files")
    simulate.set_defaults(handler=cmd_simulate)
    commands["simulate"] = simulate

    bench = subparsers.add_parser(
        "bench", parents=[common, output, array, pipeline], help="Time SRP and SMP blocks"
    )
    bench.add_argument("--method", choices=["srp", "smp", "both"], default="both")
    bench.add_argument("--repetitions", type=int, help="Timed repetitions (default: settings)")
    bench.add_argument("--warmup", type=int, help="Untimed warm-up iterations")
    bench.add_argument("--seed", type=int, default=0)
    bench.set_defaults(handler=cmd_bench)
    commands["bench"] = bench

    count = subparsers.add_parser(
        "count", parents=[common, output, array, pipeline], help="Analytic operation counts"
    )
    count.set_defaults(handler=cmd_count)
    commands["count"] = count

    serve = subparsers.add_parser("serve", parents=[common], help="Run the HTTP API")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    serve.set_defaults(handler=cmd_serve)
    commands["serve"] = serve

    return parser, commands


def _config_arguments(path: str, subparser: CliParser) -> list[str]:
    """Turn a JSON object of option values into flags for the subcommand.

    The flags are placed before the command-line ones, so explicit flags win
    and argparse applies the same type and choice checks to both.
    """
    try:
        document = json.loads(Path(path).read_text())
    except FileNotFoundError as e:
        raise ValidationError(f"Config file not found: {path}", field="config") from e
    except json.JSONDecodeError as e:
        raise ValidationError(f"Config file {path} is not valid JSON: {e}", field="config") from e
    if not isinstance(document, dict):
        raise ValidationError("Config file must hold a JSON object", field="config")

    actions = {
        action.dest: action
        for action in subparser._actions
        if action.option_strings and action.dest not in ("help", "config")
    }
    values = {key.lstrip("-").replace("-", "_"): value for key, value in document.items()}
    unknown = sorted(set(values) - set(actions))
    if unknown:
        raise ValidationError(f"Unknown options in config file: {unknown}", field="config")

    arguments: list[str] = []
    for dest, value in values.items():
        action = actions[dest]
        flag = action.option_strings[-1]
        if action.nargs == 0:
            if value is True:
                arguments.append(flag)
            elif value is not False:
                raise ValidationError(f"Option '{dest}' takes true or false", field="config")
        elif isinstance(value, list):
            arguments.extend([flag, *(str(item) for item in value)])
        else:
            arguments.extend([flag, str(value)])
    return arguments


def cli_dispatch(argv: Sequence[str] | None = None) -> int:
    """Parse ``argv`` and run one subcommand; returns the exit status."""
    argv = list(sys.argv[1:] if argv is None else argv)
    parser, commands = build_parser()
    if not argv:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE

    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        print(e, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as e:
        return int(e.code or 0)
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE

    setup_logging(stream=sys.stderr, level=args.log_level)
    try:
        if args.config:
            position = argv.index(args.command) + 1
            extra = _config_arguments(args.config, commands[args.command])
            args = parser.parse_args([*argv[:position], *extra, *argv[position:]])
            if args.log_level:
                setup_logging(stream=sys.stderr, level=args.log_level)
        bind_run_context(
            command=args.command,
            array=getattr(args, "array", None),
            method=getattr(args, "method", None),
        )
        handler: Callable[[argparse.Namespace], str] = args.handler
        output = handler(args)
        if output:
            _emit(output, getattr(args, "out", None))
    except UsageError as e:
        print(e, file=sys.stderr)
        return EXIT_USAGE
    except AppError as e:
        logger.error("cli_error", code=e.error_code, message=e.message, details=e.details)
        print(f"error: {e.message}", file=sys.stderr)
        return EXIT_RUNTIME
    except OSError as e:
        logger.error("cli_io_error", error=str(e))
        print(f"error: {e}", file=sys.stderr)
        return EXIT_RUNTIME

    return EXIT_OK


def main() -> None:
    raise SystemExit(cli_dispatch())
