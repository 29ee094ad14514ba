"""Exact minor containment with branch-set certificates.

A pattern ``P`` is a minor of a host ``H`` iff ``H`` holds pairwise disjoint connected
vertex sets, one per vertex of ``P``, with a host edge between the sets of every pattern
edge. :func:`find_minor` searches for such sets and is complete: ``None`` means no model
exists. :func:`brute_force_has_minor` is an independent exhaustive oracle for tiny hosts.
"""

from __future__ import annotations

from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from linkless.graph import (
    Graph,
    contract_edges_tracked,
    delete_edge,
    edge_count,
    from_graph6,
    induced,
    permute,
    to_graph6,
)
from linkless.utils import (
    MAX_ORACLE_VERTICES,
    CapacityExceededError,
    CertificateFormatError,
    InvalidModelError,
    bit,
    iter_bits,
    lowest_bit,
    mask_of,
)

__all__ = [
    "MinorModel",
    "brute_force_has_minor",
    "find_minor",
    "format_certificate",
    "parse_certificate",
    "replay_model",
    "validate_model",
]


@dataclass(frozen=True)
class MinorModel:
    """Branch sets (host vertex bitmasks) witnessing ``pattern`` as a minor of ``host``."""

    pattern: Graph
    host: Graph
    branch_sets: tuple[int, ...]

    def branch_lists(self) -> list[list[int]]:
        return [list(iter_bits(mask)) for mask in self.branch_sets]


def _neighbours_of(adj: Sequence[int], mask: int) -> int:
    union = 0
    for v in iter_bits(mask):
        union |= adj[v]
    return union


def _is_connected(adj: Sequence[int], mask: int) -> bool:
    if not mask:
        return False
    reached = seen = 1 << lowest_bit(mask)
    while seen:
        grown = _neighbours_of(adj, seen) & mask & ~reached
        reached |= grown
        seen = grown
    return reached == mask


def _components(adj: Sequence[int], mask: int) -> list[int]:
    parts = []
    while mask:
        reached = seen = mask & -mask
        while seen:
            grown = _neighbours_of(adj, seen) & mask & ~reached
            reached |= grown
            seen = grown
        parts.append(reached)
        mask &= ~reached
    return parts


def _connected_sets(adj: Sequence[int], root: int, allowed: int, max_size: int) -> Iterator[tuple[int, int]]:
    """Yield every connected set containing ``root`` inside ``allowed | root``, with its neighbourhood.

    Sets come out smallest-first along each branch; each set is produced exactly once.
    """

    def grow(current: int, reach: int, frontier: int, banned: int, size: int) -> Iterator[tuple[int, int]]:
        yield current, reach
        if size == max_size:
            return
        while frontier:
            low = frontier & -frontier
            frontier ^= low
            v = low.bit_length() - 1
            grown = current | low
            yield from grow(grown, reach | adj[v], (frontier | (adj[v] & allowed)) & ~banned & ~grown, banned, size + 1)
            banned |= low

    start = bit(root)
    yield from grow(start, adj[root], adj[root] & allowed, 0, 1)


def _twin_classes(pattern: Graph) -> list[int]:
    """Class id per pattern vertex; vertices with equal neighbourhoods outside their pair share an id."""
    ids = [-1] * pattern.n
    for v in range(pattern.n):
        if ids[v] >= 0:
            continue
        ids[v] = v
        for u in range(v + 1, pattern.n):
            pair = bit(u) | bit(v)
            if ids[u] < 0 and pattern.adj[u] & ~pair == pattern.adj[v] & ~pair:
                ids[u] = v
    return ids


def _placement_order(pattern: Graph) -> list[int]:
    """Highest degree first, then always the vertex with most already placed neighbours."""
    degrees = [row.bit_count() for row in pattern.adj]
    order: list[int] = []
    placed = 0
    while len(order) < pattern.n:
        best = max(
            (v for v in range(pattern.n) if not placed & bit(v)),
            key=lambda v: ((pattern.adj[v] & placed).bit_count(), degrees[v], -v),
        )
        order.append(best)
        placed |= bit(best)
    return order


@dataclass(frozen=True)
class _Plan:
    order: list[int]
    twins: list[int]
    # pattern-vertex components of the still unplaced vertices after each step
    pending: list[list[int]]


def _plan(pattern: Graph) -> _Plan:
    order = _placement_order(pattern)
    pending = []
    unplaced = pattern.vertex_mask
    for v in order:
        unplaced &= ~bit(v)
        pending.append(_components(pattern.adj, unplaced))
    return _Plan(order, _twin_classes(pattern), pending)


class _Search:
    def __init__(self, host: Graph, pattern: Graph) -> None:
        self.host = host
        self.pattern = pattern
        self.plan = _plan(pattern)
        self.sets = [0] * pattern.n
        self.pattern_edges = edge_count(pattern)
        self.host_edges = edge_count(host)

    def _uncovered_edges(self, placed: int) -> int:
        covered = sum((self.pattern.adj[v] & placed).bit_count() for v in iter_bits(placed)) // 2
        return self.pattern_edges - covered

    def _host_edges_touching(self, free: int) -> int:
        used = self.host.vertex_mask & ~free
        inside = sum((self.host.adj[v] & used).bit_count() for v in iter_bits(used)) // 2
        return self.host_edges - inside

    def _feasible(self, step: int, placed: int, free: int) -> bool:
        """Every group of connected unplaced pattern vertices must fit inside one free host component."""
        if self._host_edges_touching(free) < self._uncovered_edges(placed):
            return False
        regions = [(part, _neighbours_of(self.host.adj, part)) for part in _components(self.host.adj, free)]
        for group in self.plan.pending[step]:
            needed = group.bit_count()
            demands = [self.sets[j] for q in iter_bits(group) for j in iter_bits(self.pattern.adj[q] & placed)]
            if not any(
                part.bit_count() >= needed and all(reach & demand for demand in demands) for part, reach in regions
            ):
                return False
        return True

    def _root_window(self, x: int, placed: int) -> tuple[int, int]:
        low, high = -1, self.host.n
        for y in iter_bits(placed):
            if self.plan.twins[y] == self.plan.twins[x]:
                root = lowest_bit(self.sets[y])
                if y < x:
                    low = max(low, root)
                else:
                    high = min(high, root)
        return low, high

    def run(self, step: int = 0, placed: int = 0, used: int = 0) -> bool:
        if step == self.pattern.n:
            return True
        x = self.plan.order[step]
        free = self.host.vertex_mask & ~used
        max_size = free.bit_count() - (self.pattern.n - step - 1)
        if max_size < 1:
            return False
        required = [self.sets[j] for j in iter_bits(self.pattern.adj[x] & placed)]
        low, high = self._root_window(x, placed)
        now_placed = placed | bit(x)
        for root in iter_bits(free):
            if root <= low:
                continue
            if root >= high:
                break
            allowed = free & ~((bit(root) << 1) - 1)
            for candidate, reach in _connected_sets(self.host.adj, root, allowed, max_size):
                if not all(reach & other for other in required):
                    continue
                self.sets[x] = candidate
                rest = free & ~candidate
                if self._feasible(step, now_placed, rest) and self.run(step + 1, now_placed, used | candidate):
                    return True
        self.sets[x] = 0
        return False


def find_minor(host: Graph, pattern: Graph) -> MinorModel | None:
    """Return a model of ``pattern`` in ``host``, or ``None`` if ``pattern`` is not a minor.

    Args:
        host: Graph searched for branch sets.
        pattern: Graph whose vertices the branch sets stand for.

    Returns:
        A model whose ``branch_sets[i]`` is the host vertex mask for pattern vertex ``i``.
        ``None`` is definitive: the search is exhaustive.
    """
    if pattern.n > host.n or edge_count(pattern) > edge_count(host):
        return None
    search = _Search(host, pattern)
    if not search.run():
        return None
    return MinorModel(pattern, host, tuple(search.sets))


def validate_model(m: MinorModel) -> bool:
    """Re-check the three branch-set conditions independently of the search."""
    host, pattern = m.host, m.pattern
    if len(m.branch_sets) != pattern.n:
        return False
    seen = 0
    for mask in m.branch_sets:
        if mask <= 0 or mask & ~host.vertex_mask or mask & seen:
            return False
        if not _is_connected(host.adj, mask):
            return False
        seen |= mask
    return all(
        _neighbours_of(host.adj, m.branch_sets[a]) & m.branch_sets[b] for a, b in pattern.edges()
    )


def _spanning_tree(adj: Sequence[int], mask: int) -> list[tuple[int, int]]:
    root = lowest_bit(mask)
    tree = []
    reached = bit(root)
    queue = [root]
    while queue:
        v = queue.pop(0)
        for u in iter_bits(adj[v] & mask & ~reached):
            reached |= bit(u)
            tree.append((v, u))
            queue.append(u)
    return tree


def replay_model(m: MinorModel, prune: bool = False) -> Graph:
    """Turn a model into the minor by deletions and contractions.

    Host vertices outside every branch set are deleted and each branch set is contracted
    along a spanning tree. Vertex ``i`` of the result is the contracted branch set ``i``,
    so ``pattern`` is a spanning subgraph of the result. With ``prune`` the surplus edges
    are deleted as well and the result equals ``pattern``.
    """
    if not validate_model(m):
        raise InvalidModelError("Branch sets do not form a valid minor model")
    kept = sorted(v for mask in m.branch_sets for v in iter_bits(mask))
    position = {v: i for i, v in enumerate(kept)}
    trimmed = induced(m.host, kept)
    tree_edges = [
        (position[a], position[b]) for mask in m.branch_sets for a, b in _spanning_tree(m.host.adj, mask)
    ]
    contracted, where = contract_edges_tracked(trimmed, tree_edges)
    slots = [where[position[lowest_bit(mask)]] for mask in m.branch_sets]
    result = permute(contracted, [slots.index(i) for i in range(contracted.n)])
    if prune:
        for a, b in result.edges():
            if not m.pattern.has_edge(a, b):
                result = delete_edge(result, (a, b))
    return result


def format_certificate(m: MinorModel) -> str:
    lines = [to_graph6(m.pattern), to_graph6(m.host), *(" ".join(map(str, part)) for part in m.branch_lists())]
    return "\n".join(lines) + "\n"


def parse_certificate(text: str) -> MinorModel:
    """Read the pattern line, the host line and one branch-set line per pattern vertex.

    Raises:
        CertificateFormatError: If a line is missing or a branch set is not a list of integers.
        Graph6ParseError: If the pattern or host line is not valid graph6.
    """
    lines = [line.strip() for line in text.splitlines() if line.strip()]
    if len(lines) < 3:
        raise CertificateFormatError("A certificate needs a pattern, a host and at least one branch set")
    pattern, host = from_graph6(lines[0]), from_graph6(lines[1])
    if len(lines) - 2 != pattern.n:
        msg = f"Expected {pattern.n} branch sets, found {len(lines) - 2}"
        raise CertificateFormatError(msg)
    try:
        branch_sets = tuple(mask_of([int(token) for token in line.split()]) for line in lines[2:])
    except ValueError as error:
        raise CertificateFormatError(f"Malformed branch set line: {error}") from error
    return MinorModel(pattern, host, branch_sets)


@lru_cache(maxsize=None)
def _label_masks(n: int, k: int) -> np.ndarray:
    """Branch-set masks of every assignment of ``n`` host vertices to ``k`` labels or "unused".

    Only assignments that use every label are kept. Shape ``(rows, k)``.
    """
    masks = np.zeros((1, k), dtype=np.int64)
    for v in range(n):
        options = [masks]
        for label in range(k):
            extended = masks.copy()
            extended[:, label] |= 1 << v
            options.append(extended)
        masks = np.concatenate(options)
        missing = (masks == 0).sum(axis=1)
        masks = masks[missing <= n - v - 1]
    return masks


def brute_force_has_minor(host: Graph, pattern: Graph) -> bool:
    """Exhaustive oracle: try every assignment of host vertices to pattern vertices or unused."""
    if host.n > MAX_ORACLE_VERTICES:
        msg = f"The brute-force oracle supports at most {MAX_ORACLE_VERTICES} host vertices, got {host.n}"
        raise CapacityExceededError(msg)
    if pattern.n > host.n:
        return False
    subsets = np.arange(1 << host.n)
    connected = np.array([_is_connected(host.adj, int(s)) for s in subsets])
    reach = np.array([_neighbours_of(host.adj, int(s)) for s in subsets], dtype=np.int64)
    masks = _label_masks(host.n, pattern.n)
    ok = connected[masks].all(axis=1)
    for a, b in pattern.edges():
        ok &= (reach[masks[:, a]] & masks[:, b]) != 0
    return bool(ok.any())
