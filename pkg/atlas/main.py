"""
The ``atlas`` command line.

Exit codes: 0 when every checked claim holds, 1 when a claim fails, 2 for usage
errors.
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Sequence

from pydantic_core import to_json

from atlas import __version__
from atlas.commands import COMMANDS
from atlas.core.config import settings
from atlas.core.exceptions import AtlasError
from atlas.core.logging import configure_logging
from atlas.models import AlgebraName, JacobiMode
from atlas.services.figures import FIGURE_NAMES

logger = logging.getLogger(__name__)

EXCEPTIONAL = [name.value for name in AlgebraName.exceptional()]
GRADED = [name.value for name in AlgebraName.graded()]
HURWITZ = [1, 2, 4, 8]


def _seed(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError(f"seed must be an unsigned 64-bit integer, got {text}")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _hurwitz(text: str) -> int:
    value = int(text)
    if value not in HURWITZ:
        raise argparse.ArgumentTypeError(f"n must be one of 1, 2, 4, 8, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the JSON document instead of text")
    common.add_argument("--seed", type=_seed, default=settings.SEED, help="seed of every sampled check")
    common.add_argument("--samples", type=_positive, default=None, help="samples per sampled check")
    common.add_argument(
        "--log-level",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        type=str.upper,
        default=None,
        help="log level on stderr",
    )

    parser = argparse.ArgumentParser(
        prog="atlas",
        description="Exact-arithmetic atlas of the exceptional Lie algebras.",
    )
    parser.add_argument("--version", action="version", version=f"atlas {__version__}")
    commands = parser.add_subparsers(dest="command", required=True, metavar="command")

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        return commands.add_parser(name, parents=[common], help=help_text, description=help_text)

    sub = add("roots", "list the roots of an exceptional algebra")
    sub.add_argument("name", choices=EXCEPTIONAL)
    sub.add_argument("--count", action="store_true", help="print only the number of roots")

    sub = add("verify", "check the root system axioms on every pair")
    sub.add_argument("name", choices=EXCEPTIONAL)

    sub = add("decompose", "split the roots into outer a2, three Jordan pairs and g0")
    sub.add_argument("name", choices=GRADED)
    sub.add_argument("--nested", action="store_true", help="print the nested decomposition tree")

    sub = add("planes", "check the planes carrying the Jordan pairs")
    sub.add_argument("name", choices=GRADED)

    sub = add("table3", "quantum numbers of the e6 Jordan pair")
    sub.add_argument("--conjugate", action="store_true", help="the nine Jbar roots instead")

    sub = add("embed", "eta-basis embeddings and recognitions inside e8")
    sub.add_argument("target", choices=["a5-in-e6", "d6-in-e7", "e6-in-e8", "e7-in-e8"])

    add("label-e8", "particle labels of the e8 roots")

    sub = add("figure", "SVG root diagram")
    sub.add_argument("name", choices=FIGURE_NAMES)
    sub.add_argument("--svg", metavar="PATH", help="write to PATH instead of standard output")

    add("octonion-check", "Hurwitz, Zorn and derivation checks")

    for name, help_text in (("jordan-check", "Jordan algebra and pair axioms"), ("tkk", "three-graded TKK algebras")):
        sub = add(name, help_text)
        sub.add_argument("n", type=_hurwitz, nargs="*", default=[], help="sizes of J3^n (default 1 2 4 8)")
        sub.add_argument("--n", dest="n_option", type=_hurwitz, action="append", help=argparse.SUPPRESS)

    sub = add("tits", "build tits(H, J) and check Jacobi")
    sub.add_argument("h", type=int, choices=HURWITZ)
    sub.add_argument("j", type=int, choices=HURWITZ)
    sub.add_argument("--mode", choices=[m.value for m in JacobiMode], default=None)
    sub.add_argument("--structure", action="store_true", help="print the structure constants")

    sub = add("magic-square", "the sixteen Tits algebras")
    sub.add_argument(
        "--verify",
        "--mode",
        dest="mode",
        choices=[m.value for m in JacobiMode],
        default=None,
        help="add a Jacobi check",
    )

    sub = add("chain", "dimension bookkeeping of the e8 chain")
    sub.add_argument("--grading", action="store_true", help="also grade tits(8,8) by the Zorn rotation")

    sub = add("run-all", "check every claim")
    sub.add_argument("--filter", default=None, help="only claims whose id starts with this prefix")
    sub.add_argument("--perturb", default=None, help=argparse.SUPPRESS)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if hasattr(args, "n_option"):
        args.n = [*args.n, *(args.n_option or [])] or list(HURWITZ)

    configure_logging(args.log_level)
    try:
        result = COMMANDS[args.command](args)
    except AtlasError as exc:
        logger.debug("command %s failed", args.command, exc_info=True)
        print(f"atlas: error: {exc.detail}", file=sys.stderr)
        return exc.exit_code

    if args.json:
        sys.stdout.write(to_json(result.payload, indent=2).decode("utf-8") + "\n")
    else:
        sys.stdout.write(result.text + "\n")
    if result.exit_code:
        logger.warning("%s finished with failures", args.command)
    return result.exit_code


if __name__ == "__main__":
    raise SystemExit(main())
