from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from linkless.decorators import validated
from linkless.utils import (
    GRAPH6_MAX_SMALL_N,
    GRAPH6_OFFSET,
    MAX_VERTICES,
    CapacityExceededError,
    EdgeListParseError,
    EmptySetError,
    Graph6ParseError,
    InvariantError,
    NotAnEdgeError,
    OutOfRangeError,
    bit,
    full_mask,
    iter_bits,
)

__all__ = [
    "Edge",
    "Graph",
    "SrgParams",
    "common_neighbours",
    "complement",
    "complete",
    "complete_bipartite",
    "complete_multipartite",
    "cone",
    "contract_edge",
    "contract_edges",
    "contract_edges_tracked",
    "contraction_map",
    "cycle",
    "degree",
    "degree_sequence",
    "delete_edge",
    "delete_vertex",
    "edge",
    "edge_count",
    "empty",
    "from_edge_list",
    "from_edges",
    "from_graph6",
    "induced",
    "is_subgraph",
    "max_degree",
    "min_degree",
    "neighborhood",
    "path",
    "permute",
    "petersen_graph",
    "random_graph",
    "srg_params",
    "star",
    "to_edge_list",
    "to_graph6",
    "to_numpy",
    "union_vertex",
]


class Edge(NamedTuple):
    u: int
    v: int


class SrgParams(NamedTuple):
    n: int
    k: int
    lam: int
    mu: int


def edge(u: int, v: int) -> Edge:
    """Build an :class:`Edge` with ``u < v``."""
    if u == v:
        msg = f"An edge needs two distinct endpoints, got {u} twice"
        raise NotAnEdgeError(msg)
    return Edge(u, v) if u < v else Edge(v, u)


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph on at most 32 vertices.

    ``adj[v]`` is a bitset of the neighbours of ``v``. ``labels`` names the vertices for
    certificate output and follows them through deletions and contractions; it takes no
    part in equality.
    """

    n: int
    adj: tuple[int, ...]
    labels: tuple[str, ...] | None = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        if not 1 <= self.n <= MAX_VERTICES:
            msg = f"Vertex count must be in [1, {MAX_VERTICES}], got {self.n}"
            raise CapacityExceededError(msg)
        if len(self.adj) != self.n:
            msg = f"Expected {self.n} adjacency rows, got {len(self.adj)}"
            raise InvariantError(msg)
        if self.labels is not None and len(self.labels) != self.n:
            msg = f"Expected {self.n} labels, got {len(self.labels)}"
            raise InvariantError(msg)

    def check(self) -> None:
        """Raise :class:`InvariantError` unless the adjacency rows describe a simple graph."""
        outside = ~full_mask(self.n)
        for v, row in enumerate(self.adj):
            if row & outside:
                msg = f"Row {v} has bits beyond vertex {self.n - 1}"
                raise InvariantError(msg)
            if row & bit(v):
                msg = f"Vertex {v} has a loop"
                raise InvariantError(msg)
            for u in iter_bits(row):
                if not self.adj[u] & bit(v):
                    msg = f"Edge {v}->{u} is not symmetric"
                    raise InvariantError(msg)

    @property
    def vertex_mask(self) -> int:
        return full_mask(self.n)

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self.n and 0 <= v < self.n and bool(self.adj[u] & bit(v))

    def edges(self) -> list[Edge]:
        return [Edge(u, v) for u in range(self.n) for v in iter_bits(self.adj[u] >> (u + 1) << (u + 1))]

    def __str__(self) -> str:
        return to_graph6(self)


def _labels(g: Graph) -> list[str]:
    return list(g.labels) if g.labels is not None else [str(v) for v in range(g.n)]


def _check_vertex(g: Graph, v: int) -> None:
    if not 0 <= v < g.n:
        msg = f"Vertex {v} out of range for a graph on {g.n} vertices"
        raise OutOfRangeError(msg)


def _relabel(g: Graph, mapping: Sequence[int], new_n: int) -> tuple[int, ...]:
    """Push the edges of ``g`` through ``mapping`` (-1 drops a vertex); merged endpoints lose the edge."""
    rows = [0] * new_n
    for u, v in g.edges():
        a, b = mapping[u], mapping[v]
        if a < 0 or b < 0 or a == b:
            continue
        rows[a] |= bit(b)
        rows[b] |= bit(a)
    return tuple(rows)


def _backfill_map(n: int, removed: int, target: int) -> list[int]:
    """Vertex ``removed`` goes to ``target`` and the last vertex takes the slot of ``removed``."""
    mapping = list(range(n))
    mapping[removed] = target
    if removed != n - 1:
        mapping[n - 1] = removed
    return mapping


@validated
def from_edges(n: int, edges: Iterable[tuple[int, int]], labels: Sequence[str] | None = None) -> Graph:
    rows = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            msg = f"Edge ({u}, {v}) out of range for {n} vertices"
            raise OutOfRangeError(msg)
        if u == v:
            msg = f"Loop at vertex {u}"
            raise NotAnEdgeError(msg)
        rows[u] |= bit(v)
        rows[v] |= bit(u)
    return Graph(n, tuple(rows), tuple(labels) if labels is not None else None)


def complete(n: int) -> Graph:
    everything = full_mask(n)
    return Graph(n, tuple(everything ^ bit(v) for v in range(n)))


def empty(n: int) -> Graph:
    return Graph(n, (0,) * n)


def cycle(n: int) -> Graph:
    return from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    return from_edges(n, [(i, i + 1) for i in range(n - 1)])


def star(leaves: int) -> Graph:
    """K_{1,leaves} with the centre at vertex 0."""
    return from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_multipartite(*parts: int) -> Graph:
    owner = [i for i, size in enumerate(parts) for _ in range(size)]
    n = len(owner)
    return from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if owner[u] != owner[v]])


def complete_bipartite(a: int, b: int) -> Graph:
    return complete_multipartite(a, b)


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return from_edges(10, outer + spokes + inner)


def random_graph(n: int, rng: np.random.Generator, p: float = 0.5) -> Graph:
    """Erdős–Rényi G(n, p); ``p = 0.5`` is the uniform distribution on labelled graphs."""
    upper = np.triu(rng.random((n, n)) < p, k=1)
    us, vs = np.nonzero(upper)
    return from_edges(n, zip(us.tolist(), vs.tolist()))


def to_numpy(g: Graph) -> np.ndarray:
    matrix = np.zeros((g.n, g.n), dtype=np.int64)
    for u, v in g.edges():
        matrix[u, v] = matrix[v, u] = 1
    return matrix


@validated
def complement(g: Graph) -> Graph:
    everything = g.vertex_mask
    return Graph(g.n, tuple(everything ^ row ^ bit(v) for v, row in enumerate(g.adj)), g.labels)


def contraction_map(n: int, e: Edge) -> list[int]:
    """Old-to-new vertex indices used by :func:`contract_edge`.

    The merged vertex keeps the slot of the smaller endpoint; the last vertex moves into
    the slot of the larger endpoint.
    """
    u, v = edge(*e)
    return _backfill_map(n, v, u)


@validated
def contract_edge(g: Graph, e: tuple[int, int]) -> Graph:
    u, v = edge(*e)
    _check_vertex(g, u)
    _check_vertex(g, v)
    if not g.has_edge(u, v):
        msg = f"({u}, {v}) is not an edge"
        raise NotAnEdgeError(msg)
    mapping = contraction_map(g.n, Edge(u, v))
    labels = _labels(g)
    new_labels = [""] * (g.n - 1)
    for old, new in enumerate(mapping):
        if old not in (u, v):
            new_labels[new] = labels[old]
    new_labels[u] = f"{labels[u]}+{labels[v]}"
    return Graph(g.n - 1, _relabel(g, mapping, g.n - 1), tuple(new_labels))


def contract_edges_tracked(g: Graph, edges: Iterable[tuple[int, int]]) -> tuple[Graph, list[int]]:
    """Contract edges named in ``g``'s indices one after another.

    Returns the minor and, for every vertex of ``g``, the vertex of the minor it ended in.
    """
    where = list(range(g.n))
    current = g
    for a, b in edges:
        e = edge(where[a], where[b])
        mapping = contraction_map(current.n, e)
        current = contract_edge(current, e)
        where = [mapping[w] for w in where]
    return current, where


def contract_edges(g: Graph, edges: Iterable[tuple[int, int]]) -> Graph:
    return contract_edges_tracked(g, edges)[0]


@validated
def delete_vertex(g: Graph, v: int) -> Graph:
    """Remove ``v``; the last vertex takes its slot."""
    _check_vertex(g, v)
    if g.n == 1:
        msg = "Cannot delete the only vertex"
        raise EmptySetError(msg)
    mapping = _backfill_map(g.n, v, -1)
    labels = _labels(g)
    new_labels = [""] * (g.n - 1)
    for old, new in enumerate(mapping):
        if new >= 0:
            new_labels[new] = labels[old]
    return Graph(g.n - 1, _relabel(g, mapping, g.n - 1), tuple(new_labels))


@validated
def delete_edge(g: Graph, e: tuple[int, int]) -> Graph:
    u, v = edge(*e)
    if not g.has_edge(u, v):
        msg = f"({u}, {v}) is not an edge"
        raise NotAnEdgeError(msg)
    rows = list(g.adj)
    rows[u] ^= bit(v)
    rows[v] ^= bit(u)
    return Graph(g.n, tuple(rows), g.labels)


@validated
def induced(g: Graph, vertices: Iterable[int]) -> Graph:
    """Subgraph induced on ``vertices``, renumbered in ascending order."""
    chosen = sorted(set(vertices))
    if not chosen:
        msg = "Cannot induce a subgraph on an empty vertex set"
        raise EmptySetError(msg)
    for v in chosen:
        _check_vertex(g, v)
    mapping = [-1] * g.n
    for new, old in enumerate(chosen):
        mapping[old] = new
    labels = _labels(g)
    return Graph(len(chosen), _relabel(g, mapping, len(chosen)), tuple(labels[v] for v in chosen))


@validated
def union_vertex(g: Graph, neighbours: Iterable[int], label: str | None = None) -> Graph:
    """Append a vertex adjacent to ``neighbours``."""
    if g.n >= MAX_VERTICES:
        msg = f"Cannot add a vertex to a graph with {g.n} vertices"
        raise CapacityExceededError(msg)
    new = g.n
    rows = [*g.adj, 0]
    for v in set(neighbours):
        _check_vertex(g, v)
        rows[v] |= bit(new)
        rows[new] |= bit(v)
    return Graph(g.n + 1, tuple(rows), (*_labels(g), label if label is not None else str(new)))


def cone(g: Graph) -> Graph:
    return union_vertex(g, range(g.n), "apex")


@validated
def permute(g: Graph, perm: Sequence[int]) -> Graph:
    """Relabel vertex ``v`` as ``perm[v]``."""
    if sorted(perm) != list(range(g.n)):
        msg = f"Not a permutation of {g.n} vertices: {list(perm)}"
        raise OutOfRangeError(msg)
    labels = _labels(g)
    new_labels = [""] * g.n
    for old, new in enumerate(perm):
        new_labels[new] = labels[old]
    return Graph(g.n, _relabel(g, perm, g.n), tuple(new_labels))


def degree(g: Graph, v: int) -> int:
    _check_vertex(g, v)
    return g.adj[v].bit_count()


def degree_sequence(g: Graph) -> list[int]:
    return sorted((row.bit_count() for row in g.adj), reverse=True)


def max_degree(g: Graph) -> int:
    return max(row.bit_count() for row in g.adj)


def min_degree(g: Graph) -> int:
    return min(row.bit_count() for row in g.adj)


def edge_count(g: Graph) -> int:
    return sum(row.bit_count() for row in g.adj) // 2


def neighborhood(g: Graph, v: int) -> Graph:
    """N(v): the subgraph induced on ``v`` and its neighbours."""
    _check_vertex(g, v)
    return induced(g, [v, *iter_bits(g.adj[v])])


def common_neighbours(g: Graph, u: int, v: int) -> int:
    return (g.adj[u] & g.adj[v]).bit_count()


def is_subgraph(a: Graph, b: Graph) -> bool:
    """True if ``a`` and ``b`` share the vertex set and every edge of ``a`` is an edge of ``b``."""
    return a.n == b.n and all(ra & ~rb == 0 for ra, rb in zip(a.adj, b.adj))


def srg_params(g: Graph) -> SrgParams | None:
    """Strongly regular parameters (n, k, lambda, mu), or ``None``.

    Complete and empty graphs are not treated as strongly regular.
    """
    if g.n < 3:
        return None
    k = g.adj[0].bit_count()
    if k in (0, g.n - 1) or any(row.bit_count() != k for row in g.adj):
        return None
    matrix = to_numpy(g)
    common = matrix @ matrix
    off_diagonal = ~np.eye(g.n, dtype=bool)
    adjacent = common[(matrix == 1) & off_diagonal]
    apart = common[(matrix == 0) & off_diagonal]
    if np.unique(adjacent).size != 1 or np.unique(apart).size != 1:
        return None
    return SrgParams(g.n, k, int(adjacent[0]), int(apart[0]))


def to_graph6(g: Graph) -> str:
    if g.n > GRAPH6_MAX_SMALL_N:
        msg = f"graph6 small form supports n <= {GRAPH6_MAX_SMALL_N}"
        raise CapacityExceededError(msg)
    bits = [1 if g.adj[i] & bit(j) else 0 for j in range(1, g.n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    chunks = [bits[i : i + 6] for i in range(0, len(bits), 6)]
    body = "".join(chr(GRAPH6_OFFSET + int("".join(map(str, chunk)), 2)) for chunk in chunks)
    return chr(GRAPH6_OFFSET + g.n) + body


def from_graph6(text: str) -> Graph:
    """Parse a graph6 string (an optional ``>>graph6<<`` header is accepted).

    Args:
        text: One graph6 line; a trailing newline is ignored.

    Returns:
        The decoded graph.

    Raises:
        Graph6ParseError: With the byte offset of the first bad byte, or of the end of the
            string when it is too short.
        CapacityExceededError: If the header names more than 32 vertices.
    """
    header = ">>graph6<<"
    base = len(header) if text.startswith(header) else 0
    data = text[base:].rstrip("\n")
    if not data:
        raise Graph6ParseError("Empty graph6 string", base)
    for i, char in enumerate(data):
        if not GRAPH6_OFFSET <= ord(char) <= 126:
            raise Graph6ParseError(f"Byte {char!r} outside the printable graph6 range", base + i)
    n = ord(data[0]) - GRAPH6_OFFSET
    if n > GRAPH6_MAX_SMALL_N:
        raise Graph6ParseError("Only the single-byte vertex count form is supported", base)
    if n == 0:
        raise Graph6ParseError("Graphs must have at least one vertex", base)
    if n > MAX_VERTICES:
        msg = f"graph6 declares {n} vertices, the limit is {MAX_VERTICES}"
        raise CapacityExceededError(msg)
    nbits = n * (n - 1) // 2
    expected = 1 + (nbits + 5) // 6
    if len(data) != expected:
        offset = base + min(len(data), expected)
        raise Graph6ParseError(f"Expected {expected} bytes for {n} vertices, got {len(data)}", offset)
    bits: list[int] = []
    for char in data[1:]:
        value = ord(char) - GRAPH6_OFFSET
        bits.extend((value >> shift) & 1 for shift in range(5, -1, -1))
    if any(bits[nbits:]):
        raise Graph6ParseError("Nonzero padding bits", base + len(data) - 1)
    pairs = ((i, j) for j in range(1, n) for i in range(j))
    return from_edges(n, [pair for pair, flag in zip(pairs, bits) if flag])


def to_edge_list(g: Graph) -> str:
    edges = g.edges()
    lines = [f"{g.n} {len(edges)}", *(f"{u} {v}" for u, v in edges)]
    return "\n".join(lines) + "\n"


def from_edge_list(text: str) -> Graph:
    """Parse ``n m`` followed by ``m`` lines ``u v`` (0-indexed)."""
    lines = [(number, line.split()) for number, line in enumerate(text.splitlines(), start=1) if line.strip()]
    if not lines:
        raise EdgeListParseError("Missing header line 'n m'", 1)
    number, header = lines[0]
    try:
        n, m = (int(token) for token in header)
    except ValueError as error:
        raise EdgeListParseError(f"Malformed header {' '.join(header)!r}", number) from error
    if len(lines) - 1 != m:
        raise EdgeListParseError(f"Header announces {m} edges, found {len(lines) - 1}", number)
    edges = []
    for number, tokens in lines[1:]:
        try:
            u, v = (int(token) for token in tokens)
        except ValueError as error:
            raise EdgeListParseError(f"Malformed edge {' '.join(tokens)!r}", number) from error
        if not (0 <= u < n and 0 <= v < n) or u == v:
            raise EdgeListParseError(f"Invalid edge ({u}, {v}) for {n} vertices", number)
        edges.append((u, v))
    return from_edges(n, edges)
