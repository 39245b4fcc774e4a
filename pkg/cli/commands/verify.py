"""
Verify Command
Runs relation suites on the fixed-point module, the shuffle algebra and the Ext operators
"""

import argparse
import logging

from cli.common import CommandResult, UsageError, add_session_options, build_config, report_result
from services.shared import suite_orchestrator
from suites.registry import VERIFY_SUITES, resolve

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("verify", help="run verification suites")
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--suite", action="append", help="suite name, repeatable")
    group.add_argument("--all", action="store_true", help="every verify suite")
    parser.add_argument("--quiver-length", type=int, default=1, help="Ext operators in the Nekrasov trace")
    add_session_options(parser)
    parser.set_defaults(handler=handle)


def handle(args: argparse.Namespace) -> CommandResult:
    """
    Run the requested suites.

    Args:
        args: Parsed flags

    Returns:
        (RunReport JSON, 0 if every suite passed else 1)
    """
    if args.all:
        names = list(VERIFY_SUITES)
    else:
        names = []
        for text in args.suite:
            try:
                name = resolve(text)
            except ValueError as e:
                raise UsageError(str(e)) from None
            if name not in VERIFY_SUITES:
                raise UsageError(f"{text} is not a verify suite")
            names.append(name)

    config = build_config(args, quiver_length=args.quiver_length)
    logger.info(f"verify: {[n.value for n in names]}")
    return report_result(suite_orchestrator.run(config, names), args)
