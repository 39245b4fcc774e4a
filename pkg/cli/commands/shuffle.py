"""
Shuffle Command
Builds shuffle elements, evaluates the slope functionals on them and runs the shuffle suites
"""

import argparse
import logging
from math import gcd
from typing import Any, Dict

from cli.common import EXIT_OK, CommandResult, UsageError, add_session_options, build_config, dump, report_result, session_for
from core.exceptions import TrueSingularity
from core.shuffle.elements import build, z_names, zvar
from core.shuffle.functionals import phi_expected, phi_functional, phi_x, phi_x_expected
from core.shuffle.rational import SymRational, wheel_check
from models.schemas import SuiteName
from services.shared import suite_orchestrator

logger = logging.getLogger(__name__)

SHUFFLE_SUITES = {
    "wheel": SuiteName.WHEEL,
    "phi": SuiteName.PHI,
    "phi-x": SuiteName.PHI_X,
    "hq": SuiteName.HQ,
    "broken-path": SuiteName.BROKEN_PATH,
}


def register(subparsers) -> None:
    parser = subparsers.add_parser("shuffle", help="shuffle algebra elements and suites")
    actions = parser.add_subparsers(dest="action", required=True)

    for action, text in (("build", "Sym-presentation of an element"), ("eval", "slope functionals of an element")):
        sub = actions.add_parser(action, help=text)
        sub.add_argument("--family", choices=("P", "H", "E", "Q", "T"), required=True)
        sub.add_argument("--first", type=int, required=True, help="k for P/H/E/Q, d for T")
        sub.add_argument("--second", type=int, required=True, help="d for P/H/E/Q, k for T")
        add_session_options(sub, default_mode="exact")
        sub.set_defaults(handler=handle_build if action == "build" else handle_eval)

    check = actions.add_parser("check", help="run a shuffle suite")
    check.add_argument("--suite", choices=sorted(SHUFFLE_SUITES), required=True)
    add_session_options(check)
    check.set_defaults(handler=handle_check)


def _element(args: argparse.Namespace) -> SymRational:
    try:
        return SymRational.from_presentation(build(args.family, args.first, args.second))
    except ValueError as e:
        raise UsageError(str(e)) from None


def handle_build(args: argparse.Namespace) -> CommandResult:
    """rho at the generic point and the wheel verdict."""
    element = _element(args)
    presentation = build(args.family, args.first, args.second)
    config = build_config(args)
    session = session_for(config, extra=z_names(element.k))
    rho = presentation.rho_value(session.backend, [zvar(i) for i in range(1, element.k + 1)])
    payload = {
        "element": element.label,
        "variables": element.k,
        "degree": presentation.degree,
        "rho": session.canonical(rho),
        "wheel": wheel_check(element, session.backend),
    }
    return dump(payload, args), EXIT_OK


def handle_eval(args: argparse.Namespace) -> CommandResult:
    """phi (on the ray through (k, d)) and phi_x, each next to its closed form where one is known."""
    element = _element(args)
    config = build_config(args)
    session = session_for(config, extra=("x",))
    k = element.k
    payload: Dict[str, Any] = {"element": element.label, "config_hash": config.config_hash()}

    if args.family != "T":
        n = gcd(k, args.second)
        try:
            payload["phi"] = session.canonical(phi_functional(element, session.backend, n, k // n, args.second // n))
        except ValueError as e:
            payload["phi"] = None
            payload["phi_error"] = str(e)
        payload["phi_expected"] = session.canonical(session.fp(phi_expected(args.family, n)))

    try:
        payload["phi_x"] = session.canonical(phi_x(element, session.backend))
    except TrueSingularity as e:
        payload["phi_x"] = None
        payload["phi_x_error"] = str(e)
    if args.family == "P":
        payload["phi_x_expected"] = session.canonical(session.fp(phi_x_expected(k, args.second)))
    return dump(payload, args), EXIT_OK


def handle_check(args: argparse.Namespace) -> CommandResult:
    config = build_config(args)
    return report_result(suite_orchestrator.run(config, [SHUFFLE_SUITES[args.suite]]), args)
