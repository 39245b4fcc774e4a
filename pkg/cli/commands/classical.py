"""
Classical Command
Runs the additive suites and the eps-bridge checks
"""

import argparse
import logging

from cli.common import CommandResult, UsageError, add_session_options, build_config, report_result
from services.shared import suite_orchestrator
from suites.registry import CLASSICAL_SUITES

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("classical", help="cohomological limit suites")
    parser.add_argument("--suite", choices=sorted(CLASSICAL_SUITES), action="append", required=True)
    add_session_options(parser)
    parser.set_defaults(handler=handle)


def handle(args: argparse.Namespace) -> CommandResult:
    if "limit" in args.suite and args.eps_order < args.r + 1:
        raise UsageError(f"--eps-order must be at least r + 1 = {args.r + 1}")
    config = build_config(args)
    names = [CLASSICAL_SUITES[s] for s in args.suite]
    return report_result(suite_orchestrator.run(config, names), args)
