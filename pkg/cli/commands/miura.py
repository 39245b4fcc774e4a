"""
Miura Command
Runs the free-field suites on the colored Fock space
"""

import argparse
import logging

from cli.common import CommandResult, add_session_options, build_config, report_result
from services.shared import suite_orchestrator
from suites.registry import MIURA_SUITES

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("miura", help="free-field realization suites")
    parser.add_argument("--suite", choices=sorted(MIURA_SUITES), action="append", required=True)
    parser.add_argument("--max-degree", type=int, default=None, help="largest Fock degree, overrides --max-size")
    add_session_options(parser)
    parser.set_defaults(handler=handle)


def handle(args: argparse.Namespace) -> CommandResult:
    overrides = {} if args.max_degree is None else {"max_state_size": args.max_degree}
    config = build_config(args, **overrides)
    names = [MIURA_SUITES[s] for s in args.suite]
    return report_result(suite_orchestrator.run(config, names), args)
