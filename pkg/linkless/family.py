from __future__ import annotations

import logging
import threading
from collections import deque
from itertools import combinations
from typing import NamedTuple

import numpy as np

from linkless.graph import (
    Graph,
    complete,
    complete_bipartite,
    cone,
    degree,
    delete_edge,
    delete_vertex,
    from_edges,
    petersen_graph,
    union_vertex,
)
from linkless.iso import are_isomorphic, canonical_form
from linkless.utils import (
    MAX_VERTICES,
    CapacityExceededError,
    NotATriangleError,
    NotDegreeThreeError,
    UnknownMemberError,
    bit,
    iter_bits,
)

__all__ = [
    "FAMILY_NAMES",
    "FamilyMember",
    "delta_y",
    "delta_y_closure",
    "family_member",
    "petersen_family",
    "y_delta",
]

logger = logging.getLogger(__name__)

FAMILY_NAMES = ("K6", "G7", "K331", "G8", "K44_minus_e", "G9", "PETERSEN")


class FamilyMember(NamedTuple):
    name: str
    graph: Graph
    canonical: str


def delta_y(g: Graph, triangle: tuple[int, int, int]) -> Graph:
    """Replace the triangle by a new vertex joined to its three corners."""
    a, b, c = triangle
    if len({a, b, c}) != 3 or not (g.has_edge(a, b) and g.has_edge(b, c) and g.has_edge(a, c)):
        msg = f"{triangle} is not a triangle"
        raise NotATriangleError(msg)
    if g.n >= MAX_VERTICES:
        msg = f"delta_y needs a free vertex slot, graph already has {g.n} vertices"
        raise CapacityExceededError(msg)
    stripped = delete_edge(delete_edge(delete_edge(g, (a, b)), (b, c)), (a, c))
    return union_vertex(stripped, (a, b, c), "y")


def y_delta(g: Graph, center: int) -> Graph:
    """Remove a degree-3 vertex and join its neighbours pairwise (existing edges stay single)."""
    if degree(g, center) != 3:
        msg = f"Vertex {center} has degree {degree(g, center)}, not 3"
        raise NotDegreeThreeError(msg)
    rows = list(g.adj)
    for u, v in combinations(iter_bits(g.adj[center]), 2):
        rows[u] |= bit(v)
        rows[v] |= bit(u)
    return delete_vertex(Graph(g.n, tuple(rows), g.labels), center)


def _moves(g: Graph) -> list[Graph]:
    """Every edge-preserving ΔY and YΔ image of ``g``."""
    images = []
    for a in range(g.n):
        for b in iter_bits(g.adj[a] >> (a + 1) << (a + 1)):
            for c in iter_bits(g.adj[a] & g.adj[b] >> (b + 1) << (b + 1)):
                images.append(delta_y(g, (a, b, c)))
    for v in range(g.n):
        if g.adj[v].bit_count() != 3:
            continue
        corners = list(iter_bits(g.adj[v]))
        if any(g.has_edge(x, y) for x, y in combinations(corners, 2)):
            continue
        images.append(y_delta(g, v))
    return images


def delta_y_closure(seeds: list[Graph], rng: np.random.Generator | None = None) -> dict[str, Graph]:
    """Closure of ``seeds`` under edge-preserving ΔY/YΔ moves, keyed by canonical string.

    With ``rng`` the work queue is processed in a random order.
    """
    found: dict[str, Graph] = {}
    queue: deque[Graph] = deque()
    for seed in seeds:
        key = canonical_form(seed).graph6
        if key not in found:
            found[key] = seed
            queue.append(seed)
    while queue:
        if rng is not None:
            queue.rotate(-int(rng.integers(len(queue))))
        g = queue.popleft()
        for image in _moves(g):
            key = canonical_form(image).graph6
            if key not in found:
                logger.debug("New closure member on %d vertices: %s", image.n, key)
                found[key] = image
                queue.append(image)
    return found


def _name(g: Graph) -> str:
    landmarks = {
        "K6": complete(6),
        "K331": cone(complete_bipartite(3, 3)),
        "K44_minus_e": delete_edge(complete_bipartite(4, 4), (0, 4)),
        "PETERSEN": petersen_graph(),
    }
    for name, landmark in landmarks.items():
        if are_isomorphic(g, landmark):
            return name
    return f"G{g.n}"


_lock = threading.Lock()
_family: tuple[FamilyMember, ...] | None = None


def petersen_family() -> tuple[FamilyMember, ...]:
    """The Petersen family: the ΔY/YΔ class of K6, smallest members first."""
    global _family  # noqa: PLW0603
    with _lock:
        if _family is None:
            closure = delta_y_closure([complete(6)])
            members = [
                FamilyMember(_name(g), from_edges(g.n, g.edges()), key)
                for key, g in sorted(closure.items(), key=lambda item: (item[1].n, item[0]))
            ]
            order = {name: i for i, name in enumerate(FAMILY_NAMES)}
            members.sort(key=lambda member: (member.graph.n, order.get(member.name, len(order)), member.canonical))
            logger.info("Petersen family generated: %s", ", ".join(m.name for m in members))
            _family = tuple(members)
        return _family


def family_member(name: str) -> FamilyMember:
    """Look up a member by name.

    Args:
        name: One of ``FAMILY_NAMES``.

    Raises:
        UnknownMemberError: If no member carries that name.
    """
    for member in petersen_family():
        if member.name == name:
            return member
    msg = f"No Petersen family member named {name!r}"
    raise UnknownMemberError(msg)
