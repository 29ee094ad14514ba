"""Command-line entry point: ``linkless <command> ...``.

Exit codes: 0 for success (and NIL verdicts), 10 when ``il-check`` finds the graph IL,
2 for malformed input, 1 when a computation or verification fails.
"""

from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Callable, Sequence
from pathlib import Path

from linkless.family import petersen_family
from linkless.graph import Graph, complement, contract_edge, from_edge_list, from_graph6, to_edge_list
from linkless.harness import HarnessConfig, hunt_bicomplementary_nil, verify_paper
from linkless.linkedness import Side, Verdict, is_il, kuratowski_witness, pair_verdict
from linkless.minors import find_minor, format_certificate, parse_certificate, validate_model
from linkless.utils import (
    DEFAULT_CORE_BUDGET,
    DEFAULT_HUNT_BUDGET,
    DEFAULT_HUNT_RESTARTS,
    DEFAULT_SEED,
    DEFAULT_TRIALS,
    EXIT_FAILED,
    EXIT_IL,
    EXIT_NIL,
    EXIT_USAGE,
    CapacityExceededError,
    CertificateFormatError,
    EdgeListParseError,
    Graph6ParseError,
    LinklessError,
    NotAnEdgeError,
    OutOfRangeError,
    PreconditionFailedError,
)

__all__ = ["build_parser", "main", "read_graph"]

logger = logging.getLogger(__name__)

INPUT_ERRORS = (
    CapacityExceededError,
    CertificateFormatError,
    EdgeListParseError,
    Graph6ParseError,
    NotAnEdgeError,
    OutOfRangeError,
    PreconditionFailedError,
)

SIDE_TEXT = {Side.G: "G", Side.CG: "cG", Side.BOTH: "G and cG", Side.NEITHER: "neither G nor cG"}


def _read_text(source: str) -> str:
    if source == "-":
        return sys.stdin.read()
    path = Path(source)
    if path.is_file():
        try:
            return path.read_text(encoding="ascii")
        except UnicodeDecodeError as error:
            msg = f"Non-ASCII byte {error.object[error.start]:#04x} in {source}"
            raise Graph6ParseError(msg, error.start) from error
    return source


def read_graph(source: str) -> Graph:
    """A graph6 string, a ``.g6`` file, an edge-list file, or ``-`` for stdin."""
    text = _read_text(source)
    lines = [line.strip() for line in text.splitlines() if line.strip()]
    if not lines:
        raise Graph6ParseError("Empty graph input", 0)
    header = lines[0].split()
    if len(header) == 2 and all(token.isdigit() for token in header):
        return from_edge_list(text)
    return from_graph6(lines[0])


def _il_check(args: argparse.Namespace) -> int:
    certificate = is_il(read_graph(args.graph))
    if certificate.verdict == Verdict.IL and certificate.witness is not None:
        print(f"IL (witness: {certificate.pattern_name})")
        print(format_certificate(certificate.witness), end="")
        return EXIT_IL
    print(f"NIL (no minor among: {', '.join(certificate.exhausted)})")
    return EXIT_NIL


def _planar(args: argparse.Namespace) -> int:
    witness = kuratowski_witness(read_graph(args.graph))
    if witness is None:
        print("planar")
    else:
        name, model = witness
        print(f"nonplanar (witness: {name})")
        print(format_certificate(model), end="")
    return EXIT_NIL


def _complement(args: argparse.Namespace) -> int:
    print(complement(read_graph(args.graph)))
    return EXIT_NIL


def _contract(args: argparse.Namespace) -> int:
    print(contract_edge(read_graph(args.graph), (args.u, args.v)))
    return EXIT_NIL


def _minor(args: argparse.Namespace) -> int:
    model = find_minor(read_graph(args.host), read_graph(args.pattern))
    if model is None:
        print("not a minor")
    else:
        print("minor")
        print(format_certificate(model), end="")
    return EXIT_NIL


def _family(_: argparse.Namespace) -> int:
    for member in petersen_family():
        print(f"{member.name} {member.graph}")
    return EXIT_NIL


def _verify_cert(args: argparse.Namespace) -> int:
    model = parse_certificate(_read_text(args.file))
    if validate_model(model):
        print("valid")
        return EXIT_NIL
    print("invalid")
    return EXIT_FAILED


def _pair(args: argparse.Namespace) -> int:
    verdict = pair_verdict(read_graph(args.graph))
    print(f"{SIDE_TEXT[verdict.il_side]} IL via {verdict.fired_rule.value}")
    return EXIT_FAILED if verdict.il_side == Side.NEITHER else EXIT_NIL


def _verify_paper(args: argparse.Namespace) -> int:
    config = HarnessConfig(
        trials=args.trials,
        seed=args.seed,
        hunt_budget=args.budget,
        core_budget=args.core_budget,
        workers=args.workers,
    )
    report = verify_paper(config)
    print(report.format())
    return EXIT_NIL if report.passed else EXIT_FAILED


def _hunt(args: argparse.Namespace) -> int:
    result = hunt_bicomplementary_nil(args.n, args.budget, args.seed, args.restarts)
    for g in result.graphs:
        print(g)
    if result.inconclusive:
        print(f"inconclusive: nothing found in {result.iterations} iterations")
    return EXIT_NIL


def _edges(args: argparse.Namespace) -> int:
    print(to_edge_list(read_graph(args.graph)), end="")
    return EXIT_NIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="linkless", description="Exact minor tests for intrinsic linkedness.")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG logging")
    commands = parser.add_subparsers(dest="command", required=True)

    def command(name: str, handler: Callable[[argparse.Namespace], int], help_text: str) -> argparse.ArgumentParser:
        sub = commands.add_parser(name, help=help_text)
        sub.set_defaults(handler=handler)
        return sub

    command("il-check", _il_check, "decide intrinsic linkedness").add_argument("graph")
    command("planar", _planar, "decide planarity").add_argument("graph")
    command("complement", _complement, "print the complement as graph6").add_argument("graph")
    contract = command("contract", _contract, "contract the edge u-v")
    contract.add_argument("graph")
    contract.add_argument("u", type=int)
    contract.add_argument("v", type=int)
    minor = command("minor", _minor, "search for a minor model")
    minor.add_argument("host")
    minor.add_argument("pattern")
    command("family", _family, "list the Petersen family")
    command("verify-cert", _verify_cert, "validate a minor certificate file").add_argument("file")
    command("pair", _pair, "decide which of G and its complement is IL").add_argument("graph")
    command("edges", _edges, "print the edge-list form").add_argument("graph")

    paper = command("verify-paper", _verify_paper, "replay every construction and check")
    paper.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    paper.add_argument("--seed", type=int, default=DEFAULT_SEED)
    paper.add_argument("--budget", type=int, default=DEFAULT_HUNT_BUDGET, help="hunt iterations")
    paper.add_argument("--core-budget", type=int, default=DEFAULT_CORE_BUDGET, help="coplanar core moves")
    paper.add_argument("--workers", type=int, default=1)

    hunt = command("hunt", _hunt, "search for graphs with both sides NIL")
    hunt.add_argument("n", type=int)
    hunt.add_argument("--budget", type=int, default=DEFAULT_HUNT_BUDGET)
    hunt.add_argument("--seed", type=int, default=DEFAULT_SEED)
    hunt.add_argument("--restarts", type=int, default=DEFAULT_HUNT_RESTARTS)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as error:
        return EXIT_USAGE if error.code else EXIT_NIL
    level = {0: logging.WARNING, 1: logging.INFO}.get(args.verbose, logging.DEBUG)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.handler(args)
    except INPUT_ERRORS as error:
        print(f"error: {error}", file=sys.stderr)
        return EXIT_USAGE
    except LinklessError as error:
        logger.debug("Command %s failed", args.command, exc_info=True)
        print(f"error: {error}", file=sys.stderr)
        return EXIT_FAILED
