"""
Command-Line Helpers
Shared session flags, config construction from settings, and JSON output
"""

import argparse
import json
import logging
from typing import Any, Optional, Tuple

from config.settings import settings
from core.session import Session
from models.schemas import RunReport, SessionConfig, Verdict

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

# handler result: JSON text for stdout and the exit code
CommandResult = Tuple[str, int]


class UsageError(Exception):
    """Bad flags or arguments; exit code 2."""


def add_session_options(parser: argparse.ArgumentParser, default_mode: Optional[str] = None) -> None:
    """
    Flags every subcommand accepts.

    Args:
        parser: Subcommand parser
        default_mode: Backend when --mode is absent; settings.MODE if None
    """
    parser.add_argument("--r", type=int, default=settings.RANK, help="rank of the torus")
    parser.add_argument("--mode", choices=("probe", "exact"), default=default_mode or settings.MODE)
    parser.add_argument("--seed", type=int, default=settings.SEED)
    parser.add_argument("--prime", type=int, default=settings.PROBE_PRIME, help="probe prime")
    parser.add_argument("--repetitions", type=int, default=settings.PROBE_REPETITIONS, help="independent probe points")
    parser.add_argument("--max-size", type=int, default=settings.MAX_STATE_SIZE, help="largest r-partition size")
    parser.add_argument("--radius", type=int, default=settings.BIDEGREE_RADIUS, help="range of current coefficients")
    parser.add_argument("--eps-order", type=int, default=settings.EPS_ORDER)
    parser.add_argument("--workers", type=int, default=settings.WORKERS)
    parser.add_argument("--json-indent", type=int, default=settings.JSON_INDENT)
    parser.add_argument("--verbose", action="store_true", help="log at INFO on stderr")


def build_config(args: argparse.Namespace, **overrides: Any) -> SessionConfig:
    """
    SessionConfig from settings, overridden by the parsed flags.

    Raises:
        UsageError: a flag is out of range
    """
    values = dict(
        rank=args.r,
        mode=args.mode,
        probe_prime=args.prime,
        probe_repetitions=args.repetitions,
        seed=args.seed,
        max_state_size=args.max_size,
        bidegree_radius=args.radius,
        series_order=settings.SERIES_ORDER,
        eps_order=args.eps_order,
        truncation_margin=settings.TRUNCATION_MARGIN,
        workers=args.workers,
    )
    values.update(overrides)
    try:
        return SessionConfig(**values)
    except ValueError as e:
        raise UsageError(str(e)) from None


def session_for(config: SessionConfig, **options: Any) -> Session:
    return Session.build(
        config.rank,
        mode=config.mode.value,
        seed=config.seed,
        prime=config.probe_prime,
        repetitions=config.probe_repetitions,
        eps_order=config.eps_order,
        **options,
    )


def dump(payload: Any, args: argparse.Namespace) -> str:
    """Sorted-key JSON; indent 0 means compact."""
    return json.dumps(payload, indent=args.json_indent or None, sort_keys=True)


def report_result(report: RunReport, args: argparse.Namespace) -> CommandResult:
    code = EXIT_OK if report.verdict == Verdict.PASS else EXIT_FAILURE
    return report.to_json(args.json_indent), code
