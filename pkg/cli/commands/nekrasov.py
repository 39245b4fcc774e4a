"""
Nekrasov Command
Tabulates the cyclic quiver partition function by size vector
"""

import argparse
import logging
from fractions import Fraction
from typing import Dict, List

from cli.common import EXIT_FAILURE, EXIT_OK, CommandResult, UsageError, add_session_options, build_config, dump, session_for
from core.extnek.nekrasov import nekrasov_table
from models.schemas import NekrasovTable

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("nekrasov", help="cyclic quiver partition function")
    parser.add_argument("--quiver-length", type=int, default=1)
    parser.add_argument("--max-instanton", type=int, required=True, help="largest |lam_a| per node")
    parser.add_argument("--specialize", action="append", default=[], metavar="NAME=RATIONAL",
                        help="set a generator to a rational number, exact mode only")
    add_session_options(parser, default_mode="exact")
    parser.set_defaults(handler=handle)


def parse_specialization(items: List[str]) -> Dict[str, Fraction]:
    """
    ["q1=1/2", "m=3"] -> {"q1": Fraction(1, 2), "m": Fraction(3)}

    Raises:
        UsageError: malformed item
    """
    out: Dict[str, Fraction] = {}
    for item in items:
        name, sep, value = item.partition("=")
        if not sep or not name.strip():
            raise UsageError(f"--specialize expects NAME=RATIONAL, got {item!r}")
        try:
            out[name.strip()] = Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"not a rational number: {value!r}") from None
    return out


def handle(args: argparse.Namespace) -> CommandResult:
    if args.max_instanton < 0 or args.quiver_length < 1:
        raise UsageError("--max-instanton must be >= 0 and --quiver-length >= 1")
    config = build_config(args, quiver_length=args.quiver_length)
    specialization = parse_specialization(args.specialize)
    if specialization and config.mode.value != "exact":
        raise UsageError("--specialize needs --mode exact")

    session = session_for(config, tori=config.quiver_length, masses=config.quiver_length)
    unknown = [name for name in specialization if name not in session.generators]
    if unknown:
        raise UsageError(f"unknown generators: {', '.join(unknown)}")

    terms = nekrasov_table(session, config.quiver_length, args.max_instanton, config.workers, specialization)
    table = NekrasovTable(
        rank=config.rank,
        quiver_length=config.quiver_length,
        max_instanton=args.max_instanton,
        config_hash=config.config_hash(),
        specialization={name: str(value) for name, value in specialization.items()},
        terms=terms,
    )
    code = EXIT_OK if all(t.trace_agrees for t in terms) else EXIT_FAILURE
    return dump(table.model_dump(mode="json"), args), code
