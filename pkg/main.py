"""
qwalgebra - Deformed W-Algebras of gl_r on Instanton K-Theory
Command-Line Entry Point

Parses the subcommand, configures logging, runs the handler and prints its
JSON on stdout. Exit codes: 0 on full pass, 1 on a failure or a
computational error, 2 on a usage error.
"""

import argparse
import json
import logging
import sys
from typing import List, Optional

from cli.commands import classical, ext, miura, nekrasov, shuffle, verify, wmatrix
from cli.common import EXIT_FAILURE, EXIT_USAGE, UsageError
from config.settings import settings
from core.exceptions import AlgebraError
from utils.logger import setup_logger

COMMANDS = (verify, wmatrix, nekrasov, ext, shuffle, miura, classical)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qwalgebra",
        description="Deformed W-algebra of gl_r acting on the K-theory of instanton moduli",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        command.register(subparsers)
    return parser


def configure_logging(verbose: bool) -> logging.Logger:
    """Root logger on stderr so stdout stays machine-readable."""
    level = "INFO" if verbose else settings.LOG_LEVEL
    root = setup_logger("", level=level, stream=sys.stderr)
    root.setLevel(level)
    for handler in root.handlers:
        handler.setLevel(level)
    return logging.getLogger(__name__)


def run(argv: Optional[List[str]] = None) -> int:
    """
    Run one subcommand.

    Args:
        argv: Arguments without the program name; sys.argv[1:] if None

    Returns:
        Exit code
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    logger = configure_logging(getattr(args, "verbose", False))
    logger.info(f"qwalgebra {args.command} starting")

    try:
        text, code = args.handler(args)
    except UsageError as e:
        print(f"{parser.prog} {args.command}: error: {str(e)}", file=sys.stderr)
        return EXIT_USAGE
    except AlgebraError as e:
        logger.error(f"{args.command} failed: {e.__class__.__name__}: {str(e)}")
        print(json.dumps({"error": e.__class__.__name__, "message": str(e), "command": args.command}, sort_keys=True))
        return EXIT_FAILURE

    print(text)
    logger.info(f"qwalgebra {args.command} finished with exit code {code}")
    return code


if __name__ == "__main__":
    sys.exit(run())
