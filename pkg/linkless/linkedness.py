"""Intrinsic linkedness and planarity decided through forbidden minors.

A graph is intrinsically linked (IL) iff it has a Petersen family minor, and planar iff it
has neither a K5 nor a K3,3 minor. The graph-pair fast paths follow the counting and apex
arguments for graphs on thirteen vertices, and each one builds its certificate directly
from the structure it found.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from enum import Enum
from typing import NamedTuple

import numpy as np

from linkless.decorators import vertex_limit
from linkless.family import family_member, petersen_family
from linkless.graph import (
    Edge,
    Graph,
    complement,
    complete,
    complete_bipartite,
    cone,
    edge_count,
    from_edges,
    induced,
)
from linkless.iso import canonical_form
from linkless.minors import MinorModel, find_minor, validate_model
from linkless.utils import (
    APEX_DEGREE,
    MAX_IL_VERTICES,
    ConstructionFalsifiedError,
    bit,
    iter_bits,
    mask_of,
)

__all__ = [
    "FastPath",
    "LinkCertificate",
    "PairVerdict",
    "Side",
    "Verdict",
    "cone_nil_iff_base_planar_check",
    "edge_bound_il",
    "find_contraction_apex",
    "find_contraction_sequence",
    "is_il",
    "is_planar",
    "kuratowski_witness",
    "pair_verdict",
    "random_planar_graph",
]

logger = logging.getLogger(__name__)


class Verdict(str, Enum):
    IL = "IL"
    NIL = "NIL"


class Side(str, Enum):
    G = "G"
    CG = "CG"
    BOTH = "BOTH"
    NEITHER = "NEITHER"


class FastPath(str, Enum):
    EDGE_BOUND = "edge-bound"
    DEGREE_APEX = "degree-apex"
    CONTRACTION_APEX = "contraction-apex"
    DEGREE_NINE = "degree-nine"
    CONTRACTION_SEQUENCE = "contraction-sequence"
    FULL_SEARCH = "full-search"


class LinkCertificate(NamedTuple):
    verdict: Verdict
    witness: MinorModel | None = None
    pattern_name: str | None = None
    exhausted: tuple[str, ...] = ()


class PairVerdict(NamedTuple):
    il_side: Side
    fired_rule: FastPath
    g_certificate: LinkCertificate | None
    cg_certificate: LinkCertificate | None


_KURATOWSKI = (("K5", complete(5)), ("K33", complete_bipartite(3, 3)))
# the cone over K5 is K6 and the cone over K3,3 is K3,3,1
_CONED = {"K5": "K6", "K33": "K331"}
_OTHER = {Side.G: Side.CG, Side.CG: Side.G}


@vertex_limit(MAX_IL_VERTICES)
def kuratowski_witness(g: Graph) -> tuple[str, MinorModel] | None:
    """A K5 or K3,3 minor model, or ``None`` when ``g`` is planar.

    Args:
        g: Graph on at most 13 vertices.

    Returns:
        ``("K5", model)`` or ``("K33", model)`` for the first Kuratowski graph found.

    Raises:
        CapacityExceededError: If ``g`` has more than 13 vertices.
    """
    for name, pattern in _KURATOWSKI:
        model = find_minor(g, pattern)
        if model is not None:
            return name, model
    return None


@vertex_limit(MAX_IL_VERTICES)
def is_planar(g: Graph) -> bool:
    edges = edge_count(g)
    if g.n < 5 or edges < 9:
        return True
    if edges > 3 * g.n - 6:
        return False
    return kuratowski_witness(g) is None


def _checked(name: str, model: MinorModel) -> LinkCertificate:
    if not validate_model(model):
        msg = f"The {name} model built in {model.host} does not validate"
        raise ConstructionFalsifiedError(msg)
    return LinkCertificate(Verdict.IL, model, name)


@vertex_limit(MAX_IL_VERTICES)
def is_il(g: Graph) -> LinkCertificate:
    """Search the Petersen family patterns smallest first.

    Args:
        g: Graph on at most 13 vertices.

    Returns:
        An IL certificate carrying the first model found, or a NIL certificate listing every
        member that was searched for.

    Raises:
        CapacityExceededError: If ``g`` has more than 13 vertices.
        ConstructionFalsifiedError: If the search returned a model that does not validate.
    """
    members = petersen_family()
    for member in members:
        model = find_minor(g, member.graph)
        if model is not None:
            return _checked(member.name, model)
    return LinkCertificate(Verdict.NIL, exhausted=tuple(member.name for member in members))


def edge_bound_il(g: Graph) -> bool:
    """At least ``4n - 9`` edges on ``n >= 6`` vertices forces a K6 minor."""
    return g.n >= 6 and edge_count(g) >= 4 * g.n - 9


@vertex_limit(MAX_IL_VERTICES - 1)
def cone_nil_iff_base_planar_check(g: Graph) -> bool:
    """Consistency self-test: ``g`` is planar exactly when its cone is NIL."""
    return is_planar(g) == (is_il(cone(g)).verdict == Verdict.NIL)


def find_contraction_apex(g: Graph) -> Edge | None:
    """First edge whose contraction leaves the merged vertex with at least 10 neighbours."""
    for u, v in g.edges():
        if ((g.adj[u] | g.adj[v]) & ~(bit(u) | bit(v))).bit_count() >= APEX_DEGREE:
            return Edge(u, v)
    return None


def find_contraction_sequence(g: Graph) -> tuple[Edge, Edge] | None:
    """Two edges through a common vertex whose contraction leaves a vertex of degree 10.

    The three merged vertices stay out of their joint neighbourhood, so this needs at least
    13 vertices.

    Args:
        g: Any graph.

    Returns:
        The edges ``(u, centre)`` and ``(centre, w)``, or ``None`` when no such path exists.
    """
    if g.n < APEX_DEGREE + 3:
        return None
    for centre in range(g.n):
        ends = list(iter_bits(g.adj[centre]))
        for i, u in enumerate(ends):
            for w in ends[i + 1 :]:
                merged = bit(u) | bit(centre) | bit(w)
                if ((g.adj[u] | g.adj[centre] | g.adj[w]) & ~merged).bit_count() >= APEX_DEGREE:
                    return Edge(min(u, centre), max(u, centre)), Edge(min(centre, w), max(centre, w))
    return None


def _lift(mask: int, vertices: Sequence[int]) -> int:
    return mask_of([vertices[i] for i in iter_bits(mask)])


def _as_member(name: str, pattern: Graph, host: Graph, branch_sets: Sequence[int]) -> LinkCertificate:
    """Reorder branch sets of a ``pattern`` model so its pattern is the family member itself."""
    member = family_member(name).graph
    ours, theirs = canonical_form(pattern).perm, canonical_form(member).perm
    slot = {position: v for v, position in enumerate(theirs)}
    ordered = [0] * member.n
    for v, mask in enumerate(branch_sets):
        ordered[slot[ours[v]]] = mask
    return _checked(name, MinorModel(member, host, tuple(ordered)))


def _coned(host: Graph, witness: tuple[str, MinorModel], vertices: Sequence[int], apex: int) -> LinkCertificate:
    """Cone a Kuratowski model found on ``induced(host, vertices)`` over the branch set ``apex``."""
    name, model = witness
    branch_sets = [_lift(mask, vertices) for mask in model.branch_sets]
    return _as_member(_CONED[name], cone(model.pattern), host, [*branch_sets, apex])


def _decided(side: Side, rule: FastPath, certificate: LinkCertificate) -> PairVerdict:
    logger.debug("%s decided by %s with a %s minor", side.value, rule.value, certificate.pattern_name)
    if side == Side.G:
        return PairVerdict(side, rule, certificate, None)
    return PairVerdict(side, rule, None, certificate)


def _k6_side(side: Side, g: Graph) -> PairVerdict:
    model = find_minor(g, family_member("K6").graph)
    if model is None:
        msg = f"{g} has at least 4n - 9 edges but no K6 minor"
        raise ConstructionFalsifiedError(msg)
    return _decided(side, FastPath.EDGE_BOUND, _checked("K6", model))


def _split_by_neighbourhood(
    rule: FastPath,
    graph: Graph,
    other: Graph,
    own: Side,
    neighbourhood: int,
    apex: int,
    far_apex: int | None = None,
) -> PairVerdict:
    """Decide a pair from the graph induced on ``neighbourhood``, every vertex of which touches ``apex``.

    A nonplanar neighbourhood cones over ``apex`` to a K6 or K3,3,1 minor of ``graph``.
    Otherwise the complement of the neighbourhood, induced in ``other``, holds the witness:
    coned over ``far_apex`` when that set reaches every neighbourhood vertex in ``other``,
    searched for directly when it does not.
    """
    vertices = list(iter_bits(neighbourhood))
    witness = kuratowski_witness(induced(graph, vertices))
    if witness is not None:
        return _decided(own, rule, _coned(graph, witness, vertices, apex))
    inside = induced(other, vertices)
    if far_apex is not None:
        witness = kuratowski_witness(inside)
        if witness is None:
            msg = f"A {len(vertices)}-vertex neighbourhood in {graph} and its complement are both planar"
            raise ConstructionFalsifiedError(msg)
        return _decided(_OTHER[own], rule, _coned(other, witness, vertices, far_apex))
    certificate = is_il(inside)
    if certificate.witness is None or certificate.pattern_name is None:
        msg = f"A planar {len(vertices)}-vertex neighbourhood in {graph} has a NIL complement"
        raise ConstructionFalsifiedError(msg)
    model = certificate.witness
    lifted = MinorModel(model.pattern, other, tuple(_lift(mask, vertices) for mask in model.branch_sets))
    return _decided(_OTHER[own], rule, _checked(certificate.pattern_name, lifted))


def _sides(g: Graph, cg: Graph) -> tuple[tuple[Graph, Graph, Side], ...]:
    return (g, cg, Side.G), (cg, g, Side.CG)


def _apex_rule(g: Graph, cg: Graph) -> PairVerdict | None:
    if g.n <= APEX_DEGREE:
        return None
    for graph, other, own in _sides(g, cg):
        for v in range(graph.n):
            if graph.adj[v].bit_count() >= APEX_DEGREE:
                return _split_by_neighbourhood(FastPath.DEGREE_APEX, graph, other, own, graph.adj[v], bit(v))
    return None


def _contraction_rule(g: Graph, cg: Graph) -> PairVerdict | None:
    if g.n < APEX_DEGREE + 2:
        return None
    for graph, other, own in _sides(g, cg):
        e = find_contraction_apex(graph)
        if e is not None:
            # the complement of the contracted minor is a subgraph of the other side
            ends = bit(e.u) | bit(e.v)
            reach = (graph.adj[e.u] | graph.adj[e.v]) & ~ends
            return _split_by_neighbourhood(FastPath.CONTRACTION_APEX, graph, other, own, reach, ends)
    return None


def _degree_nine_rule(g: Graph, cg: Graph) -> PairVerdict | None:
    """A degree-9 vertex whose neighbours each have at most one neighbour further out.

    Then the neighbourhood or its complement is nonplanar. In the complement side the
    vertex together with its non-neighbours is connected and touches every neighbour, so it
    serves as the apex over the complement of the neighbourhood.
    """
    if g.n < APEX_DEGREE + 2:
        return None
    for graph, other, own in _sides(g, cg):
        for a in range(graph.n):
            near = graph.adj[a]
            if near.bit_count() != APEX_DEGREE - 1:
                continue
            far = graph.vertex_mask & ~near & ~bit(a)
            if all((graph.adj[v] & far).bit_count() <= 1 for v in iter_bits(near)):
                return _split_by_neighbourhood(FastPath.DEGREE_NINE, graph, other, own, near, bit(a), bit(a) | far)
    return None


def _sequence_rule(g: Graph, cg: Graph) -> PairVerdict | None:
    for graph, other, own in _sides(g, cg):
        path = find_contraction_sequence(graph)
        if path is not None:
            merged = mask_of([*path[0], *path[1]])
            reach = 0
            for v in iter_bits(merged):
                reach |= graph.adj[v]
            return _split_by_neighbourhood(FastPath.CONTRACTION_SEQUENCE, graph, other, own, reach & ~merged, merged)
    return None


@vertex_limit(MAX_IL_VERTICES)
def pair_verdict(g: Graph) -> PairVerdict:
    """Decide which of ``g`` and its complement is IL, trying the cheap arguments first.

    The rules run in order: the edge bound on either side, a vertex of degree at least 10,
    an edge contraction creating one, a degree-9 vertex with a tight neighbourhood, a
    two-edge contraction creating a degree-10 vertex, and finally the full search on both
    sides. A fast path names only the side it proves and leaves the other unexamined.

    Args:
        g: Graph on at most 13 vertices.

    Returns:
        The IL side, the rule that decided it, and a certificate for every side found IL.

    Raises:
        CapacityExceededError: If ``g`` has more than 13 vertices.
        ConstructionFalsifiedError: If a fast path fired but its certificate could not be built.
    """
    cg = complement(g)
    if edge_bound_il(g):
        return _k6_side(Side.G, g)
    if edge_bound_il(cg):
        return _k6_side(Side.CG, cg)
    for rule in (_apex_rule, _contraction_rule, _degree_nine_rule, _sequence_rule):
        verdict = rule(g, cg)
        if verdict is not None:
            return verdict
    g_cert, cg_cert = is_il(g), is_il(cg)
    g_il, cg_il = g_cert.verdict == Verdict.IL, cg_cert.verdict == Verdict.IL
    side = {(True, True): Side.BOTH, (True, False): Side.G, (False, True): Side.CG}.get((g_il, cg_il), Side.NEITHER)
    return PairVerdict(side, FastPath.FULL_SEARCH, g_cert, cg_cert)


def random_planar_graph(n: int, rng: np.random.Generator, keep: float | None = None) -> Graph:
    """Random triangulation grown by inserting vertices into random faces, then thinned.

    Each edge survives with probability ``keep`` (drawn uniformly from [0.5, 1] when omitted).
    """
    if n < 3:
        return from_edges(n, [(0, 1)] if n == 2 else [])
    faces = [(0, 1, 2), (0, 1, 2)]
    edges = [(0, 1), (1, 2), (0, 2)]
    for v in range(3, n):
        a, b, c = faces.pop(int(rng.integers(len(faces))))
        faces.extend([(a, b, v), (b, c, v), (a, c, v)])
        edges.extend([(a, v), (b, v), (c, v)])
    survival = rng.uniform(0.5, 1.0) if keep is None else keep
    mask = rng.random(len(edges)) < survival
    return from_edges(n, [e for e, kept in zip(edges, mask) if kept])
