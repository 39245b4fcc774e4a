"""
W-Matrix Command
Emits a block of W_{d,k} in the fixed-point basis
"""

import argparse
import logging

from cli.common import EXIT_OK, CommandResult, UsageError, add_session_options, build_config, dump, session_for
from core.repk.actions import FixedPointModule
from core.shapes.partitions import enumerate_rpartitions
from models.schemas import MatrixBlock, MatrixEntry

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("wmatrix", help="matrix block of W_{d,k}")
    parser.add_argument("--d", type=int, required=True, help="degree shift")
    parser.add_argument("--k", type=int, required=True, help="current index")
    parser.add_argument("--size-from", type=int, default=0, help="smallest column size")
    parser.add_argument("--size-to", type=int, required=True, help="largest column size")
    add_session_options(parser, default_mode="exact")
    parser.set_defaults(handler=handle)


def handle(args: argparse.Namespace) -> CommandResult:
    """Nonzero <mu|W_{d,k}|lam> for size-from <= |lam| <= size-to, |mu| = |lam| - d."""
    if args.k < 0 or args.size_from < 0 or args.size_to < args.size_from:
        raise UsageError(f"bad window: k={args.k}, sizes {args.size_from}..{args.size_to}")
    config = build_config(args)
    session = session_for(config)
    module = FixedPointModule(session)
    op = module.w_op(args.d, args.k)

    entries = []
    for n in range(args.size_from, args.size_to + 1):
        for lam in enumerate_rpartitions(config.rank, n):
            for mu, value in sorted(op.column(lam).items(), key=lambda kv: (kv[0].size, repr(kv[0]))):
                if session.is_zero(value):
                    continue
                entries.append(MatrixEntry(row=mu.to_json(), column=lam.to_json(), value=session.canonical(value)))

    logger.info(f"W[{args.d},{args.k}]: {len(entries)} nonzero entries")
    block = MatrixBlock(operator=f"W[{args.d},{args.k}]", config_hash=config.config_hash(), entries=entries)
    return dump(block.model_dump(mode="json"), args), EXIT_OK
