import argparse
import sys
from typing import List, Optional, Sequence

import numpy as np
from loguru import logger

from heatvalve.exceptions import (
    ConfigError,
    HeatValveError,
    OutputError,
    SweepFailureError,
)
from heatvalve.logging import configure_json_logging, configure_pretty_logging
from heatvalve.models.method import GeneratorMethod, parse_method_spec
from heatvalve.models.records import ComparisonTable, HeatFlowRecord
from heatvalve.models.sweep import SweepConfig
from heatvalve.settings import HeatValveSettings
from heatvalve.sweep.compare import compare_methods
from heatvalve.sweep.config_loader import apply_overrides, resolve_config
from heatvalve.sweep.csv_io import write_csv, write_records
from heatvalve.sweep.flux_point import evaluate_flux_point
from heatvalve.sweep.runner import run_sweep
from heatvalve.sweep.validation import DEFAULT_VALIDATION_POINTS, run_validation

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_NUMERICAL = 2
EXIT_OUTPUT = 3


def _add_config_flags(parser: argparse.ArgumentParser, method_flag: bool = True) -> None:
    parser.add_argument(
        "--config",
        required=True,
        help="TOML config file or the name of a bundled preset (fig2_psa, ...)",
    )
    if method_flag:
        parser.add_argument("--method", help="NAME[:PARAM], e.g. psa:100 or unified:auto")
    parser.add_argument("--points", type=int, help="number of flux points")
    parser.add_argument("--out", help="CSV output path (stdout when omitted)")
    parser.add_argument(
        "--no-lamb-shift", action="store_true", help="drop the Lamb-shift Hamiltonian"
    )
    parser.add_argument("--parallel", type=int, help="flux points evaluated concurrently")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="heatvalve",
        description="Heat flow through a resonator-qubit-resonator quantum heat valve.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    sweep = commands.add_parser("sweep", help="heat currents over the flux grid for one method")
    _add_config_flags(sweep)

    compare = commands.add_parser("compare", help="several methods on one flux grid")
    _add_config_flags(compare, method_flag=False)
    compare.add_argument(
        "--method",
        action="append",
        dest="methods",
        required=True,
        help="repeat for every method to compare",
    )

    single = commands.add_parser("single", help="one flux point with full diagnostics")
    _add_config_flags(single)
    single.add_argument("--phi", type=float, default=0.5, help="flux in units of Φ₀")

    validate = commands.add_parser("validate", help="run the invariant suite on a config")
    _add_config_flags(validate, method_flag=False)
    validate.set_defaults(points=DEFAULT_VALIDATION_POINTS)
    return parser


def _configure_logging(settings: HeatValveSettings) -> None:
    if settings.log_format == "json":
        configure_json_logging(settings.log_level)
    else:
        configure_pretty_logging(settings.log_level)


def _load(args: argparse.Namespace, settings: HeatValveSettings) -> SweepConfig:
    parallel = args.parallel
    if parallel is None and settings.default_parallelism > 1:
        parallel = settings.default_parallelism
    return apply_overrides(
        resolve_config(args.config),
        method=getattr(args, "method", None),
        points=args.points if args.command != "validate" else None,
        out=args.out,
        no_lamb_shift=args.no_lamb_shift,
        parallel=parallel,
    )


def _emit(records: Sequence[HeatFlowRecord], config: SweepConfig) -> None:
    if config.output.path:
        write_csv(records, config.output.path, config.output.overwrite)
    else:
        write_records(records, sys.stdout)


def _sweep(config: SweepConfig) -> int:
    try:
        records = run_sweep(config)
    except SweepFailureError as e:
        _emit(e.records, config)
        raise
    _emit(records, config)
    return EXIT_OK


def _compare(config: SweepConfig, methods: List[GeneratorMethod]) -> int:
    table: ComparisonTable = compare_methods(config, methods)
    records = [row.records[label] for row in table.rows for label in table.methods]
    _emit(records, config)
    for label in table.methods:
        sys.stderr.write(f"{label}: {table.total_seconds(label):.3f} s\n")
    sys.stderr.write(
        f"max relative deviation: P_L {table.max_relative_deviation('L'):.3e}, "
        f"P_R {table.max_relative_deviation('R'):.3e}\n"
    )
    return EXIT_OK


def _single(config: SweepConfig, phi: float) -> int:
    evaluation = evaluate_flux_point(config, phi)
    result = evaluation.methods[0]
    out = sys.stdout
    out.write(f"phi = {evaluation.phi:.17g}\n")
    out.write(f"omega_q = {evaluation.omega_q:.17g}\n")
    out.write(f"energies = {np.array2string(evaluation.basis.energies, precision=10)}\n")
    for item in evaluation.bath_terms:
        omegas = np.array([t.omega for t in item.terms])
        out.write(f"bath {item.bath.side.value}: {len(omegas)} Bohr frequencies\n")
        out.write(f"  {np.array2string(omegas, precision=10)}\n")
    if result.assembly is not None:
        for side, generator in result.assembly.baths.items():
            out.write(
                f"bath {side.value}: {generator.pairs.size} retained pairs, "
                f"tau_R = {generator.pairs.tau_R:.6g}\n"
            )
    if result.state is not None:
        diagnostics = result.state.diagnostics
        out.write(f"residual = {result.state.residual:.3e}\n")
        out.write(f"min_eig = {diagnostics.min_eigenvalue:.3e} ({diagnostics.grade.value})\n")
    write_records([result.record], out)
    return EXIT_NUMERICAL if result.record.failed else EXIT_OK


def _validate(config: SweepConfig, points: int) -> int:
    report = run_validation(config, points)
    for check in report.checks:
        status = "pass" if check.passed else "FAIL"
        line = f"{status}  {check.name}  defect={check.defect:.3e}  bound={check.bound:.3e}"
        if not check.passed and check.detail:
            line += f"  ({check.detail})"
        sys.stdout.write(line + "\n")
    return EXIT_OK if report.passed else EXIT_NUMERICAL


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        # usage errors count as configuration errors; 2 is reserved for numerical failure
        return EXIT_OK if e.code in (0, None) else EXIT_CONFIG

    settings = HeatValveSettings()
    _configure_logging(settings)

    try:
        config = _load(args, settings)
        if args.command == "sweep":
            return _sweep(config)
        elif args.command == "compare":
            methods = []
            for spec in args.methods:
                try:
                    methods.append(parse_method_spec(spec))
                except ValueError as e:
                    raise ConfigError(str(e), key="method") from e
            if len(methods) < 2:
                raise ConfigError("compare needs at least two --method flags", key="method")
            return _compare(config, methods)
        elif args.command == "single":
            return _single(config, args.phi)
        else:
            return _validate(config, args.points)
    except ConfigError as e:
        logger.error(f"config error: {e}")
        return EXIT_CONFIG
    except OutputError as e:
        logger.error(f"output error: {e}")
        return EXIT_OUTPUT
    except HeatValveError as e:
        logger.error(str(e))
        return EXIT_NUMERICAL
