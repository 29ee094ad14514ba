from __future__ import annotations

from collections.abc import Iterator
from typing import ParamSpec

__all__ = [
    "APEX_DEGREE",
    "CORE_VERTICES",
    "DEFAULT_CORE_BUDGET",
    "DEFAULT_CORE_RESTARTS",
    "DEFAULT_HUNT_BUDGET",
    "DEFAULT_HUNT_RESTARTS",
    "DEFAULT_SEED",
    "DEFAULT_TRIALS",
    "EXIT_FAILED",
    "EXIT_IL",
    "EXIT_NIL",
    "EXIT_USAGE",
    "FAMILY_EDGE_COUNT",
    "GRAPH6_MAX_SMALL_N",
    "GRAPH6_OFFSET",
    "MAX_BRUTE_FORCE_ISO_VERTICES",
    "MAX_IL_VERTICES",
    "MAX_ISO_VERTICES",
    "MAX_ORACLE_VERTICES",
    "MAX_VERTICES",
    "PALEY_ORDER",
    "QUADRATIC_RESIDUES_13",
    "THEOREM_ORDER",
    "CapacityExceededError",
    "CertificateFormatError",
    "ConstructionFalsifiedError",
    "CoreRejectedError",
    "EdgeListParseError",
    "EmptySetError",
    "Graph6ParseError",
    "InvalidModelError",
    "InvariantError",
    "LinklessError",
    "NoCertificateError",
    "NotATriangleError",
    "NotAnEdgeError",
    "NotDegreeThreeError",
    "OutOfRangeError",
    "PreconditionFailedError",
    "SearchExhaustedError",
    "TheoremViolatedError",
    "UnknownMemberError",
    "bit",
    "check_quadratic_residues",
    "full_mask",
    "iter_bits",
    "lowest_bit",
    "mask_of",
]

MAX_VERTICES = 32
MAX_ISO_VERTICES = 13
MAX_IL_VERTICES = 13
MAX_ORACLE_VERTICES = 8
MAX_BRUTE_FORCE_ISO_VERTICES = 8
GRAPH6_MAX_SMALL_N = 62
GRAPH6_OFFSET = 63

FAMILY_EDGE_COUNT = 15
APEX_DEGREE = 10
CORE_VERTICES = 8
PALEY_ORDER = 13
THEOREM_ORDER = 13

QUADRATIC_RESIDUES_13 = frozenset({1, 3, 4, 9, 10, 12})

DEFAULT_SEED = 7
DEFAULT_TRIALS = 1000
DEFAULT_HUNT_BUDGET = 400
DEFAULT_HUNT_RESTARTS = 8
DEFAULT_CORE_BUDGET = 2000
DEFAULT_CORE_RESTARTS = 40

EXIT_NIL = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_IL = 10

P = ParamSpec("P")


class LinklessError(ValueError):
    """Base class for every error raised by this package."""


class OutOfRangeError(LinklessError):
    pass


class NotAnEdgeError(LinklessError):
    pass


class EmptySetError(LinklessError):
    pass


class CapacityExceededError(LinklessError):
    pass


class InvariantError(LinklessError):
    pass


class Graph6ParseError(LinklessError):
    def __init__(self, message: str, offset: int) -> None:
        super().__init__(f"{message} (at byte offset {offset})")
        self.offset = offset


class EdgeListParseError(LinklessError):
    def __init__(self, message: str, line: int) -> None:
        super().__init__(f"{message} (at line {line})")
        self.line = line


class NotATriangleError(LinklessError):
    pass


class NotDegreeThreeError(LinklessError):
    pass


class InvalidModelError(LinklessError):
    pass


class CertificateFormatError(LinklessError):
    pass


class NoCertificateError(LinklessError):
    pass


class SearchExhaustedError(LinklessError):
    pass


class CoreRejectedError(LinklessError):
    pass


class ConstructionFalsifiedError(LinklessError):
    pass


class PreconditionFailedError(LinklessError):
    pass


class UnknownMemberError(LinklessError, KeyError):
    """A Petersen family member name that does not exist."""


class TheoremViolatedError(LinklessError):
    def __init__(self, message: str, graph6: str) -> None:
        super().__init__(f"{message}: {graph6}")
        self.graph6 = graph6


def bit(v: int) -> int:
    return 1 << v


def full_mask(n: int) -> int:
    return (1 << n) - 1


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def lowest_bit(mask: int) -> int:
    """Index of the lowest set bit; ``mask`` must be nonzero."""
    return (mask & -mask).bit_length() - 1


def mask_of(vertices: Iterator[int] | list[int] | set[int] | frozenset[int] | tuple[int, ...]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def check_quadratic_residues(modulus: int = PALEY_ORDER) -> frozenset[int]:
    """Recompute the nonzero squares modulo ``modulus``."""
    return frozenset((x * x) % modulus for x in range(1, modulus))
