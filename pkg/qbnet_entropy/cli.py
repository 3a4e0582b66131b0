"""Command-line front end.

Sub-commands:

    qbnet-entropy check --ids mi_nonneg,cmi_nonneg --trials 10 --seed 7
    qbnet-entropy entropy bell.json "S(a)" "S(a,b)" "S(a:b)"
    qbnet-entropy holevo-demo --preset zero-plus --samples 32
    qbnet-entropy rum --n 6

Reports go to stdout (or `--out`), logs to stderr. Exit codes: 0 when every
claim behaves as expected, 1 when a claim fails, 2 for bad flags or
unreadable input, 3 when an input file violates density-matrix invariants.
"""

import argparse
import logging
import sys
from collections.abc import Sequence
from enum import IntEnum

from qbnet_entropy.batch import run_checks
from qbnet_entropy.config import ALL_IDS, LogFormat, OutputFormat, RunConfig, default_seed
from qbnet_entropy.context import resolve_adapter, run_scope, set_adapter
from qbnet_entropy.entropy import Ensemble, Quantity, quantum_entropy
from qbnet_entropy.errors import ConfigError, InvariantError, QbnetError
from qbnet_entropy.fields import RunContextField
from qbnet_entropy.formatters import JsonContextFormatter, SimpleContextFormatter
from qbnet_entropy.holevo import PRESETS, holevo_demo
from qbnet_entropy.report import (
    check_document,
    check_table,
    entropy_document,
    entropy_table,
    holevo_document,
    holevo_table,
    render,
    rum_document,
    rum_table,
    write_output,
)
from qbnet_entropy.rum import RumSystem, rum_check_suite
from qbnet_entropy.serialization import ensemble_from_json, load_document, state_from_json
from qbnet_entropy.tensor_core import LabeledState, relabel
from qbnet_entropy.validation import check_ensemble, check_state

logger = logging.getLogger(__name__)

PROG = "qbnet-entropy"
DEFAULT_HOLEVO_SAMPLES = 16
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")
CONTEXT_ADAPTERS = ("contextvars", "context_logging")


class ExitCode(IntEnum):
    """Process exit status."""

    PASS = 0
    CLAIM_FAILURE = 1
    CONFIG = 2
    DATA_INVARIANT = 3


def _comma_list(text: str) -> list[str]:
    items = [item.strip() for item in text.split(",") if item.strip()]
    if not items:
        msg = f"expected a comma-separated list, got {text!r}"
        raise argparse.ArgumentTypeError(msg)
    return items


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(item) for item in _comma_list(text))
    except ValueError as e:
        msg = f"expected comma-separated integers, got {text!r}"
        raise argparse.ArgumentTypeError(msg) from e


def _add_output_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format",
        dest="output_format",
        type=OutputFormat,
        choices=list(OutputFormat),
        default=OutputFormat.JSON,
        help="report rendering (default: json)",
    )
    parser.add_argument("--out", default=None, help="write the report here instead of stdout")
    parser.add_argument(
        "--log-format",
        type=LogFormat,
        choices=list(LogFormat),
        default=LogFormat.SIMPLE,
        help="log record rendering on stderr (default: simple)",
    )
    parser.add_argument(
        "--log-level",
        type=str.upper,
        choices=LOG_LEVELS,
        default="WARNING",
        help="root log level (default: WARNING)",
    )
    parser.add_argument(
        "--context-adapter",
        choices=CONTEXT_ADAPTERS,
        default="contextvars",
        help="run-context storage (default: contextvars)",
    )


def _add_seed_flag(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--seed",
        type=int,
        default=None,
        help="base seed (default: $QBNET_SEED, else 0)",
    )


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with the check, entropy, holevo-demo and rum sub-commands."""
    parser = argparse.ArgumentParser(
        prog=PROG,
        description="Verify entropy inequalities on classical and quantum Bayesian networks.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    check = commands.add_parser("check", help="run seeded batches of inequality checks")
    check.add_argument(
        "--ids",
        type=_comma_list,
        action="append",
        default=None,
        help=f"inequality ids, comma-separated or repeated (default: {ALL_IDS})",
    )
    check.add_argument("--trials", type=int, default=1, help="instances per id (default: 1)")
    check.add_argument(
        "--dims",
        type=_int_list,
        default=(2,),
        help="per-subsystem dimensions, the last one repeats (default: 2)",
    )
    check.add_argument("--workers", type=int, default=1, help="threads for trials (default: 1)")
    _add_seed_flag(check)
    _add_output_flags(check)
    check.set_defaults(handler=_run_check)

    entropy = commands.add_parser("entropy", help="entropic quantities of a serialized state")
    entropy.add_argument("state", help="state JSON file")
    entropy.add_argument(
        "quantities",
        nargs="*",
        help='quantities such as "S(a)" or "S(a:b|e)" (default: entropy of the whole state)',
    )
    entropy.add_argument(
        "--partition",
        type=_comma_list,
        default=None,
        help="new labels for the subsystems of the file, in order",
    )
    _add_output_flags(entropy)
    entropy.set_defaults(handler=_run_entropy)

    holevo = commands.add_parser("holevo-demo", help="Holevo bound on a preset or file ensemble")
    source = holevo.add_mutually_exclusive_group()
    source.add_argument("--preset", choices=sorted(PRESETS), default=None)
    source.add_argument("--file", default=None, help="ensemble JSON file")
    holevo.add_argument(
        "--samples",
        type=int,
        default=DEFAULT_HOLEVO_SAMPLES,
        help=f"random projective measurements (default: {DEFAULT_HOLEVO_SAMPLES})",
    )
    _add_seed_flag(holevo)
    _add_output_flags(holevo)
    holevo.set_defaults(handler=_run_holevo_demo)

    rum = commands.add_parser("rum", help="exhaustive suite on the roots-of-unity model")
    rum.add_argument("--n", type=int, required=True, help="number of parties, 1 to 16")
    _add_output_flags(rum)
    rum.set_defaults(handler=_run_rum)

    return parser


def configure_logging(log_format: LogFormat, log_level: str) -> None:
    """Send log records to stderr through a run-context formatter.

    Replaces the handler installed by an earlier call and leaves other root
    handlers alone.
    """
    root = logging.getLogger()
    for existing in [h for h in root.handlers if h.get_name() == PROG]:
        root.removeHandler(existing)
    handler = logging.StreamHandler(sys.stderr)
    handler.set_name(PROG)
    formatter: logging.Formatter = (
        JsonContextFormatter() if log_format is LogFormat.JSON else SimpleContextFormatter()
    )
    handler.setFormatter(formatter)
    root.addHandler(handler)
    root.setLevel(log_level)


def _exit_for(*, passed: bool) -> ExitCode:
    return ExitCode.PASS if passed else ExitCode.CLAIM_FAILURE


def cmd_check(config: RunConfig) -> ExitCode:
    """Run the selected batches and the counterexample suite, then write the report.

    Raises:
        ConfigError: If the configuration is invalid or names an unknown id.
    """
    result = run_checks(config)
    text = render(check_document(result, config), check_table(result), config.output_format)
    write_output(text, config.out)
    return _exit_for(passed=result.passed)


def _load_state(path: str, partition: Sequence[str] | None) -> LabeledState:
    state = state_from_json(load_document(path))
    if partition is not None:
        if len(partition) != len(state.labels):
            msg = (
                f"--partition names {len(partition)} subsystems, "
                f"{path} has {len(state.labels)}: {list(state.labels)}"
            )
            raise ConfigError(msg)
        state = relabel(state, dict(zip(state.labels, partition, strict=True)))
    check_state(state, raise_on_violation=True)
    return state


def cmd_entropy(
    path: str,
    quantities: Sequence[str],
    partition: Sequence[str] | None = None,
    *,
    output_format: OutputFormat = OutputFormat.JSON,
    out: str | None = None,
) -> ExitCode:
    """Evaluate quantities on the state stored in `path`.

    Raises:
        FormatError: If the file cannot be decoded.
        InvariantError: If the file is not a density matrix.
        QbnetError: If a quantity cannot be parsed or names an unknown label.
    """
    state = _load_state(path, partition)
    parsed = [Quantity.parse(q) for q in quantities] or [Quantity("S", state.labels)]
    values = [(str(q), quantum_entropy(q, state)) for q in parsed]
    write_output(render(entropy_document(values), entropy_table(values), output_format), out)
    return ExitCode.PASS


def _load_ensemble(preset: str | None, path: str | None) -> tuple[Ensemble, str]:
    if path is not None:
        ensemble = ensemble_from_json(load_document(path))
        check_ensemble(ensemble, raise_on_violation=True)
        return ensemble, path
    name = preset or "zero-plus"
    return PRESETS[name](), name


def cmd_holevo_demo(  # noqa: PLR0913
    preset: str | None = None,
    path: str | None = None,
    *,
    samples: int = DEFAULT_HOLEVO_SAMPLES,
    seed: int = 0,
    output_format: OutputFormat = OutputFormat.JSON,
    out: str | None = None,
) -> ExitCode:
    """Compare Hol with the best sampled accessible information.

    Uses the "zero-plus" preset when neither a preset nor a file is given.

    Raises:
        ConfigError: If samples < 1 or the seed is negative.
        FormatError: If the ensemble file cannot be decoded.
        InvariantError: If the file holds an invalid ensemble.
    """
    if samples < 1:
        msg = f"samples must be >= 1, got {samples}"
        raise ConfigError(msg)
    if seed < 0:
        msg = f"seed must be non-negative, got {seed}"
        raise ConfigError(msg)
    ensemble, source = _load_ensemble(preset, path)
    report = holevo_demo(ensemble, samples, seed)
    doc = holevo_document(report, source, seed)
    write_output(render(doc, holevo_table(report, source), output_format), out)
    return _exit_for(passed=report.holds)


def cmd_rum(
    n: int,
    *,
    output_format: OutputFormat = OutputFormat.JSON,
    out: str | None = None,
) -> ExitCode:
    """Run the roots-of-unity suite for `n` parties.

    Raises:
        RumError: If n is outside 1..16.
    """
    system = RumSystem(n)
    verdicts = rum_check_suite(system)
    doc = rum_document(system, verdicts)
    write_output(render(doc, rum_table(system, verdicts), output_format), out)
    return _exit_for(passed=doc["passed"])


def _run_check(args: argparse.Namespace) -> ExitCode:
    ids = tuple(i for group in args.ids for i in group) if args.ids else (ALL_IDS,)
    config = RunConfig(
        command="check",
        ids=ids,
        trials=args.trials,
        dims=args.dims,
        seed=default_seed() if args.seed is None else args.seed,
        output_format=args.output_format,
        out=args.out,
        workers=args.workers,
        log_format=args.log_format,
        log_level=args.log_level,
    )
    return cmd_check(config)


def _run_entropy(args: argparse.Namespace) -> ExitCode:
    return cmd_entropy(
        args.state,
        args.quantities,
        args.partition,
        output_format=args.output_format,
        out=args.out,
    )


def _run_holevo_demo(args: argparse.Namespace) -> ExitCode:
    return cmd_holevo_demo(
        args.preset,
        args.file,
        samples=args.samples,
        seed=default_seed() if args.seed is None else args.seed,
        output_format=args.output_format,
        out=args.out,
    )


def _run_rum(args: argparse.Namespace) -> ExitCode:
    return cmd_rum(args.n, output_format=args.output_format, out=args.out)


def _fail(message: str, code: ExitCode) -> int:
    sys.stderr.write(f"{PROG}: error: {message}\n")
    return code


def main(argv: Sequence[str] | None = None) -> int:
    """Parse the arguments, run the sub-command and map errors to exit codes.

    Args:
        argv: Arguments without the program name; None reads `sys.argv`.

    Returns:
        An `ExitCode` value.
    """
    args = build_parser().parse_args(argv)
    configure_logging(args.log_format, args.log_level)
    try:
        set_adapter(resolve_adapter(args.context_adapter))
    except ImportError as e:
        return _fail(str(e), ExitCode.CONFIG)
    try:
        with run_scope({RunContextField.COMMAND: args.command}):
            return int(args.handler(args))
    except InvariantError as e:
        return _fail(f"{e} (max deviation {e.deviation:.3g})", ExitCode.DATA_INVARIANT)
    except QbnetError as e:
        logger.debug("%s failed", args.command, exc_info=True)
        return _fail(str(e), ExitCode.CONFIG)
