"""Canonical labelling and isomorphism testing for small graphs.

Vertices are partitioned by iterated colour refinement; the search then individualises
vertices of the first non-singleton cell and refines again until the partition is
discrete. Each discrete partition is a labelling, and the canonical string is the
smallest graph6 encoding among them. Cells whose vertices are pairwise twins are
explored through a single representative, since any choice gives the same encoding.
"""

from __future__ import annotations

from itertools import permutations
from typing import NamedTuple

from linkless.decorators import vertex_limit
from linkless.graph import Graph, degree_sequence, edge_count, permute, to_graph6
from linkless.utils import MAX_BRUTE_FORCE_ISO_VERTICES, MAX_ISO_VERTICES, CapacityExceededError, bit

__all__ = ["CanonicalForm", "are_isomorphic", "brute_force_canonical", "canonical_form"]


class CanonicalForm(NamedTuple):
    graph6: str
    perm: tuple[int, ...]


def _refine(g: Graph, colours: list[int]) -> list[int]:
    """Colour refinement to a stable partition; colour values are label-invariant."""
    current = colours
    while True:
        count = max(current) + 1
        signatures = []
        for v in range(g.n):
            tally = [0] * count
            row = g.adj[v]
            for u in range(g.n):
                if row & bit(u):
                    tally[current[u]] += 1
            signatures.append((current[v], tuple(tally)))
        ranking = {signature: rank for rank, signature in enumerate(sorted(set(signatures)))}
        refined = [ranking[signature] for signature in signatures]
        if max(refined) == max(current):
            return refined
        current = refined


def _individualise(colours: list[int], v: int) -> list[int]:
    keyed = [(c, 0 if u == v else 1) if c == colours[v] else (c, 0) for u, c in enumerate(colours)]
    ranking = {key: rank for rank, key in enumerate(sorted(set(keyed)))}
    return [ranking[key] for key in keyed]


def _are_twins(g: Graph, cell: list[int]) -> bool:
    """True if every two vertices of ``cell`` have the same neighbours outside the pair."""
    first = cell[0]
    for other in cell[1:]:
        pair = bit(first) | bit(other)
        if (g.adj[first] & ~pair) != (g.adj[other] & ~pair):
            return False
    return True


def _search(g: Graph, colours: list[int], best: list[CanonicalForm]) -> None:
    cells: dict[int, list[int]] = {}
    for v, c in enumerate(colours):
        cells.setdefault(c, []).append(v)
    target = next((cells[c] for c in sorted(cells) if len(cells[c]) > 1), None)
    if target is None:
        perm = tuple(colours)
        candidate = to_graph6(permute(g, perm))
        if not best or candidate < best[0].graph6:
            best[:] = [CanonicalForm(candidate, perm)]
        return
    choices = target[:1] if _are_twins(g, target) else target
    for v in choices:
        _search(g, _refine(g, _individualise(colours, v)), best)


def brute_force_canonical(g: Graph) -> CanonicalForm:
    """Smallest graph6 encoding over all ``n!`` labellings."""
    if g.n > MAX_BRUTE_FORCE_ISO_VERTICES:
        msg = f"Brute-force canonical form supports at most {MAX_BRUTE_FORCE_ISO_VERTICES} vertices"
        raise CapacityExceededError(msg)
    return min(
        (CanonicalForm(to_graph6(permute(g, perm)), perm) for perm in permutations(range(g.n))),
        key=lambda form: form.graph6,
    )


@vertex_limit(MAX_ISO_VERTICES)
def canonical_form(g: Graph) -> CanonicalForm:
    """Canonical graph6 string of ``g`` and the relabelling that produces it.

    Colour refinement splits the vertices, and the smallest graph6 string over the
    individualisation tree is kept.

    Args:
        g: Graph on at most 13 vertices.

    Returns:
        ``graph6`` equal for exactly the graphs isomorphic to ``g``, and ``perm`` with
        ``to_graph6(permute(g, perm)) == graph6``.

    Raises:
        CapacityExceededError: If ``g`` has more than 13 vertices.
    """
    best: list[CanonicalForm] = []
    _search(g, _refine(g, [0] * g.n), best)
    return best[0]


def are_isomorphic(a: Graph, b: Graph) -> bool:
    if a.n != b.n or edge_count(a) != edge_count(b) or degree_sequence(a) != degree_sequence(b):
        return False
    return canonical_form(a).graph6 == canonical_form(b).graph6
