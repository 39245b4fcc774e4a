"""
Ext Command
Prints a single matrix coefficient <lam|A_m|lam'>
"""

import argparse
import logging

from cli.common import EXIT_FAILURE, EXIT_OK, CommandResult, UsageError, add_session_options, build_config, dump, session_for
from core.extnek.ext import a_matrix_by_character, a_matrix_factor
from core.scalars.monomials import Monomial
from core.shapes.partitions import RPartition

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("ext", help="one coefficient of the Ext operator")
    parser.add_argument("--lambda", dest="lam", required=True, help="r-partition of the target torus, e.g. '2,1|1'")
    parser.add_argument("--lambda-prime", dest="lam_p", required=True, help="r-partition of the source torus")
    add_session_options(parser, default_mode="exact")
    parser.set_defaults(handler=handle)


def handle(args: argparse.Namespace) -> CommandResult:
    config = build_config(args)
    try:
        lam = RPartition.parse(args.lam, config.rank)
        lam_p = RPartition.parse(args.lam_p, config.rank)
    except ValueError as e:
        raise UsageError(str(e)) from None

    session = session_for(config, primed=True, masses=1)
    mass = Monomial.gen("m")
    value = session.fp(a_matrix_factor(lam, lam_p, mass))
    agrees = session.backend.equal(value, session.fp(a_matrix_by_character(lam, lam_p, mass)))
    if not agrees:
        logger.warning(f"character route disagrees at {lam} {lam_p}")

    payload = {
        "lambda": lam.to_json(),
        "lambda_prime": lam_p.to_json(),
        "mass": "m",
        "value": session.canonical(value),
        "character_agrees": agrees,
        "config_hash": config.config_hash(),
    }
    return dump(payload, args), EXIT_OK if agrees else EXIT_FAILURE
