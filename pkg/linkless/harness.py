"""Reconstruction and verification of the concrete objects behind the thirteen-vertex theorem."""

from __future__ import annotations

import logging
import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib.resources import files
from typing import NamedTuple

import numpy as np

from linkless.family import petersen_family
from linkless.graph import (
    Edge,
    Graph,
    complement,
    complete,
    complete_bipartite,
    contract_edges,
    edge_count,
    from_edges,
    from_graph6,
    induced,
    max_degree,
    random_graph,
    srg_params,
    union_vertex,
)
from linkless.iso import are_isomorphic, canonical_form
from linkless.linkedness import (
    FastPath,
    LinkCertificate,
    Side,
    Verdict,
    is_il,
    is_planar,
    pair_verdict,
)
from linkless.minors import MinorModel, find_minor, parse_certificate, validate_model
from linkless.utils import (
    CORE_VERTICES,
    DEFAULT_CORE_BUDGET,
    DEFAULT_CORE_RESTARTS,
    DEFAULT_HUNT_BUDGET,
    DEFAULT_HUNT_RESTARTS,
    DEFAULT_SEED,
    DEFAULT_TRIALS,
    PALEY_ORDER,
    QUADRATIC_RESIDUES_13,
    THEOREM_ORDER,
    ConstructionFalsifiedError,
    CoreRejectedError,
    InvariantError,
    LinklessError,
    NoCertificateError,
    PreconditionFailedError,
    SearchExhaustedError,
    TheoremViolatedError,
    bit,
    check_quadratic_residues,
    iter_bits,
)

__all__ = [
    "CaseK6Report",
    "Figure1Pair",
    "HarnessConfig",
    "HuntResult",
    "PaleyCertificate",
    "PaperReport",
    "SectionResult",
    "TheoremReport",
    "TrialRecord",
    "build_figure1_pair",
    "build_paley13",
    "core_edge_bounds_ok",
    "find_k7_contraction",
    "hunt_bicomplementary_nil",
    "load_golden",
    "max_degree_profile",
    "random_bounded_degree_graph",
    "sample_theorem_13",
    "search_coplanar_core_8",
    "verify_case_k6_structure",
    "verify_paper",
]

logger = logging.getLogger(__name__)

# both a core and its complement obey e <= 3n - 6 = 18 out of 28 pairs
CORE_MIN_EDGES = 10
CORE_MAX_EDGES = 18
SRG_PALEY = (13, 6, 2, 3)


def load_golden(name: str) -> str:
    """Text of a golden file shipped in ``linkless/data``."""
    return files("linkless").joinpath("data", name).read_text(encoding="ascii")


def build_paley13() -> Graph:
    if check_quadratic_residues(PALEY_ORDER) != QUADRATIC_RESIDUES_13:
        raise InvariantError("Hardcoded quadratic residues mod 13 do not match the squares")
    edges = [(i, j) for i in range(PALEY_ORDER) for j in range(i + 1, PALEY_ORDER) if (j - i) in QUADRATIC_RESIDUES_13]
    return from_edges(PALEY_ORDER, edges)


class PaleyCertificate(NamedTuple):
    graph: Graph
    contraction_edges: tuple[Edge, ...]
    resulting: Graph
    model: MinorModel


def find_k7_contraction(paley: Graph) -> PaleyCertificate:
    """Six pairwise disjoint edges whose contraction turns the 13-vertex graph into K7.

    Branch sets are built in ascending vertex order: the smallest unassigned vertex is
    either the single uncontracted vertex or paired with a larger neighbour. Each new set
    must touch all earlier ones.
    """
    if paley.n != PALEY_ORDER:
        msg = f"Expected a graph on {PALEY_ORDER} vertices, got {paley.n}"
        raise PreconditionFailedError(msg)
    sets: list[int] = []

    def touches_all(candidate: int) -> bool:
        reach = 0
        for v in iter_bits(candidate):
            reach |= paley.adj[v]
        return all(reach & other for other in sets)

    def place(unassigned: int, single_left: bool) -> bool:
        if not unassigned:
            return True
        v = (unassigned & -unassigned).bit_length() - 1
        options = [bit(v)] if single_left else []
        options += [bit(v) | bit(u) for u in iter_bits(paley.adj[v] & unassigned)]
        for option in options:
            if not touches_all(option):
                continue
            sets.append(option)
            if place(unassigned & ~option, single_left and option.bit_count() == 2):
                return True
            sets.pop()
        return False

    if not place(paley.vertex_mask, single_left=True):
        raise NoCertificateError("No six disjoint edges contract this graph to K7")
    pairs = tuple(Edge(*iter_bits(mask)) for mask in sets if mask.bit_count() == 2)
    resulting = contract_edges(paley, pairs)
    model = MinorModel(complete(7), paley, tuple(sets))
    if edge_count(resulting) != 21 or not validate_model(model):
        raise ConstructionFalsifiedError("Contracting the certificate edges did not produce K7")
    return PaleyCertificate(paley, pairs, resulting, model)


def core_edge_bounds_ok(core: Graph) -> bool:
    """Euler's bound for both the core and its complement."""
    return core.n == CORE_VERTICES and CORE_MIN_EDGES <= edge_count(core) <= CORE_MAX_EDGES


_KURATOWSKI_PATTERNS = (complete(5), complete_bipartite(3, 3))


def _kuratowski_count(g: Graph) -> int:
    return sum(find_minor(h, pattern) is not None for h in (g, complement(g)) for pattern in _KURATOWSKI_PATTERNS)


def _random_core(rng: np.random.Generator) -> Graph:
    pairs = [(u, v) for u in range(CORE_VERTICES) for v in range(u + 1, CORE_VERTICES)]
    size = int(rng.integers(CORE_MIN_EDGES, CORE_MAX_EDGES + 1))
    chosen = rng.choice(len(pairs), size=size, replace=False)
    return from_edges(CORE_VERTICES, [pairs[i] for i in sorted(chosen.tolist())])


def _swap_edge(g: Graph, rng: np.random.Generator) -> Graph:
    """Move one edge to a random non-edge; the edge count is unchanged."""
    edges = g.edges()
    gaps = complement(g).edges()
    drop = edges[int(rng.integers(len(edges)))]
    add = gaps[int(rng.integers(len(gaps)))]
    return from_edges(g.n, [e for e in edges if e != drop] + [add])


def search_coplanar_core_8(
    seed: int = DEFAULT_SEED,
    budget: int = DEFAULT_CORE_BUDGET,
    restarts: int = DEFAULT_CORE_RESTARTS,
) -> Graph:
    """An 8-vertex graph that is planar together with its complement.

    Random restarts over edge counts in [10, 18], each repaired by edge moves that do not
    increase the number of Kuratowski minors found on the two sides.
    """
    rng = np.random.default_rng(seed)
    moves = 0
    per_restart = max(1, budget // max(1, restarts))
    while moves < budget:
        current = _random_core(rng)
        penalty = _kuratowski_count(current)
        for _ in range(per_restart):
            if penalty == 0:
                logger.info("Coplanar core found after %d moves: %s", moves, current)
                return current
            if moves >= budget:
                break
            moves += 1
            candidate = _swap_edge(current, rng)
            candidate_penalty = _kuratowski_count(candidate)
            if candidate_penalty <= penalty:
                current, penalty = candidate, candidate_penalty
        if penalty == 0:
            return current
    msg = f"No coplanar 8-vertex core within {budget} moves (seed {seed})"
    raise SearchExhaustedError(msg)


class Figure1Pair(NamedTuple):
    core: Graph
    graph: Graph
    complement: Graph
    g_certificate: LinkCertificate
    cg_certificate: LinkCertificate


def build_figure1_pair(core: Graph) -> Figure1Pair:
    """Cone the core with v9 and add an isolated v10; both the result and its complement are NIL.

    Args:
        core: An 8-vertex graph that is planar together with its complement.

    Returns:
        The core, the 10-vertex graph, its complement and the NIL certificates of both.

    Raises:
        CoreRejectedError: If the core has the wrong size or a nonplanar side.
        ConstructionFalsifiedError: If either side of the result turns out IL.
    """
    if core.n != CORE_VERTICES:
        msg = f"The core needs {CORE_VERTICES} vertices, got {core.n}"
        raise CoreRejectedError(msg)
    if not (is_planar(core) and is_planar(complement(core))):
        msg = f"Core {core} or its complement is not planar"
        raise CoreRejectedError(msg)
    named = Graph(core.n, core.adj, tuple(f"v{i + 1}" for i in range(core.n)))
    g = union_vertex(union_vertex(named, range(core.n), "v9"), [], "v10")
    cg = complement(g)
    g_cert, cg_cert = is_il(g), is_il(cg)
    for side, certificate in (("G", g_cert), ("cG", cg_cert)):
        if certificate.verdict == Verdict.IL:
            msg = f"{side} of the pair built from {core} has a {certificate.pattern_name} minor"
            raise ConstructionFalsifiedError(msg)
    return Figure1Pair(core, g, cg, g_cert, cg_cert)


class CaseK6Report(NamedTuple):
    branches: tuple[str, ...]
    failures: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_case_k6_structure(g: Graph) -> CaseK6Report:
    """Check the neighbourhood structure of the 6-regular case at every vertex.

    The six neighbours span a 2-regular graph with six edges (two triangles or a 6-cycle),
    the six non-neighbours span nine edges, and eighteen edges run between the two sets,
    three from each neighbour.
    """
    params = srg_params(g)
    if g.n != PALEY_ORDER or params is None or tuple(params) != SRG_PALEY:
        msg = f"Expected a strongly regular graph with parameters {SRG_PALEY}, got {params}"
        raise PreconditionFailedError(msg)
    branches = []
    failures = []
    for v in range(g.n):
        inside = g.adj[v]
        outside = g.vertex_mask & ~inside & ~bit(v)
        near = induced(g, iter_bits(inside))
        far = induced(g, iter_bits(outside))
        across = [(g.adj[u] & outside).bit_count() for u in iter_bits(inside)]
        if edge_count(near) != 6 or any(row.bit_count() != 2 for row in near.adj):
            failures.append(f"vertex {v}: neighbourhood is not 2-regular with 6 edges")
        if edge_count(far) != 9:
            failures.append(f"vertex {v}: non-neighbours span {edge_count(far)} edges, expected 9")
        if sum(across) != 18 or any(count != 3 for count in across):
            failures.append(f"vertex {v}: crossing edges {across}, expected 3 from each neighbour")
        reach = near.adj[0]
        seen = bit(0) | reach
        while reach:
            grown = 0
            for u in iter_bits(reach):
                grown |= near.adj[u]
            reach = grown & ~seen
            seen |= grown
        branches.append("6-cycle" if seen == near.vertex_mask else "two-triangles")
    return CaseK6Report(tuple(branches), tuple(failures))


class HuntResult(NamedTuple):
    graphs: tuple[Graph, ...]
    iterations: int

    @property
    def inconclusive(self) -> bool:
        """An empty hunt says nothing about whether such graphs exist."""
        return not self.graphs


def _witness_count(g: Graph) -> int:
    members = petersen_family()
    return sum(find_minor(side, m.graph) is not None for side in (g, complement(g)) for m in members)


def _flip(g: Graph, rng: np.random.Generator) -> Graph:
    u, v = (int(x) for x in rng.choice(g.n, size=2, replace=False))
    edges = set(g.edges())
    e = Edge(min(u, v), max(u, v))
    edges.symmetric_difference_update({e})
    return from_edges(g.n, edges)


def hunt_bicomplementary_nil(
    n: int,
    budget: int = DEFAULT_HUNT_BUDGET,
    seed: int = DEFAULT_SEED,
    restarts: int = DEFAULT_HUNT_RESTARTS,
) -> HuntResult:
    """Simulated annealing over edge flips for graphs with both sides NIL.

    The penalty is the number of Petersen family members found as minors of the graph and
    of its complement. Every restart begins at a uniform random graph drawn from the seeded
    generator. Hits are deduplicated by canonical form.

    Args:
        n: Vertex count, 10 to 12.
        budget: Total number of penalty evaluations across all restarts.
        seed: Seed for the generator behind the starts, the flips and the acceptance draws.
        restarts: Number of annealing runs the budget is split over.

    Returns:
        The distinct hits in canonical order and the number of evaluations spent. An empty
        result is inconclusive.

    Raises:
        PreconditionFailedError: If ``n`` is outside 10 to 12.
    """
    if not 10 <= n <= 12:
        msg = f"The hunt runs on 10 to 12 vertices, got {n}"
        raise PreconditionFailedError(msg)
    rng = np.random.default_rng(seed)
    hits: dict[str, Graph] = {}
    iterations = 0
    per_restart = max(1, budget // max(1, restarts))
    while iterations < budget:
        current = random_graph(n, rng)
        penalty = _witness_count(current)
        iterations += 1
        for step in range(per_restart):
            if penalty == 0:
                key = canonical_form(current).graph6
                if key not in hits:
                    logger.info("Hunt hit on %d vertices: %s", n, key)
                    hits[key] = current
            if iterations >= budget:
                break
            temperature = max(0.05, 2.0 * (1 - step / per_restart))
            candidate = _flip(current, rng)
            candidate_penalty = _witness_count(candidate)
            iterations += 1
            delta = candidate_penalty - penalty
            if delta <= 0 or rng.random() < math.exp(-delta / temperature):
                current, penalty = candidate, candidate_penalty
        if penalty == 0:
            hits.setdefault(canonical_form(current).graph6, current)
    graphs = tuple(hits[key] for key in sorted(hits))
    if not graphs:
        logger.info("Hunt on %d vertices found nothing in %d iterations (inconclusive)", n, iterations)
    return HuntResult(graphs, iterations)


class TrialRecord(NamedTuple):
    trial: int
    seed: int
    graph6: str
    side: Side
    rule: FastPath

    def format(self) -> str:
        return f"seed={self.seed} trial={self.trial} g6={self.graph6} verdict={self.side.value} rule={self.rule.value}"


@dataclass
class TheoremReport:
    seed: int
    records: list[TrialRecord] = field(default_factory=list)

    @property
    def rule_counts(self) -> Counter[str]:
        return Counter(record.rule.value for record in self.records)

    @property
    def side_counts(self) -> Counter[str]:
        return Counter(record.side.value for record in self.records)

    def format(self) -> str:
        rules = ", ".join(f"{rule}: {count}" for rule, count in sorted(self.rule_counts.items()))
        return f"{len(self.records)}/{len(self.records)} trials passed (seed {self.seed}); rules fired: {rules}"


def _decide(graph6: str) -> tuple[Side, FastPath]:
    verdict = pair_verdict(from_graph6(graph6))
    return verdict.il_side, verdict.fired_rule


def sample_theorem_13(trials: int = DEFAULT_TRIALS, seed: int = DEFAULT_SEED, workers: int = 1) -> TheoremReport:
    """Check that a random 13-vertex graph or its complement is IL, ``trials`` times.

    Args:
        trials: Number of uniform random graphs to draw.
        seed: Seed of the generator the graphs are drawn from.
        workers: Processes to decide the pairs on; 1 decides them in this process.

    Returns:
        One record per trial, in draw order, with the IL side and the rule that fired.

    Raises:
        PreconditionFailedError: If ``trials`` is below 1.
        TheoremViolatedError: If some pair has neither side IL.
    """
    if trials < 1:
        msg = f"Need at least one trial, got {trials}"
        raise PreconditionFailedError(msg)
    rng = np.random.default_rng(seed)
    codes = [str(random_graph(THEOREM_ORDER, rng)) for _ in range(trials)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_decide, codes, chunksize=16))
    else:
        outcomes = [_decide(code) for code in codes]
    report = TheoremReport(seed)
    for trial, (code, (side, rule)) in enumerate(zip(codes, outcomes)):
        record = TrialRecord(trial, seed, code, side, rule)
        logger.debug(record.format())
        if side == Side.NEITHER:
            raise TheoremViolatedError("Neither the graph nor its complement is IL", code)
        report.records.append(record)
    return report


def random_bounded_degree_graph(n: int, limit: int, rng: np.random.Generator) -> Graph:
    """Random graph whose degrees never exceed ``limit``: pairs are tried in random order."""
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    degrees = [0] * n
    chosen = []
    for index in rng.permutation(len(pairs)).tolist():
        u, v = pairs[index]
        if degrees[u] < limit and degrees[v] < limit and rng.random() < 0.8:
            chosen.append((u, v))
            degrees[u] += 1
            degrees[v] += 1
    return from_edges(n, chosen)


def max_degree_profile(trials: int = DEFAULT_TRIALS, seed: int = DEFAULT_SEED) -> Counter[str]:
    """How random 13-vertex graphs spread over the maximum-degree cases of the argument."""
    rng = np.random.default_rng(seed)
    profile: Counter[str] = Counter()
    for _ in range(trials):
        k = max_degree(random_graph(THEOREM_ORDER, rng))
        profile["k<=5" if k <= 5 else ">=9" if k >= 9 else str(k)] += 1
    return profile


@dataclass(frozen=True)
class HarnessConfig:
    trials: int = DEFAULT_TRIALS
    seed: int = DEFAULT_SEED
    hunt_budget: int = DEFAULT_HUNT_BUDGET
    hunt_restarts: int = DEFAULT_HUNT_RESTARTS
    core_budget: int = DEFAULT_CORE_BUDGET
    core_restarts: int = DEFAULT_CORE_RESTARTS
    workers: int = 1


class SectionResult(NamedTuple):
    name: str
    passed: bool
    detail: str


@dataclass
class PaperReport:
    sections: list[SectionResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(section.passed for section in self.sections)

    def format(self) -> str:
        return "\n".join(
            f"{'PASS' if section.passed else 'FAIL'} {section.name}: {section.detail}" for section in self.sections
        )


def _check_paley() -> str:
    paley = build_paley13()
    golden = from_graph6(load_golden("paley13.g6").strip())
    problems = []
    if paley != golden:
        problems.append("differs from golden paley13.g6")
    if edge_count(paley) != 39 or any(row.bit_count() != 6 for row in paley.adj):
        problems.append("not 6-regular with 39 edges")
    if srg_params(paley) != SRG_PALEY:
        problems.append(f"srg parameters {srg_params(paley)}")
    if not are_isomorphic(paley, complement(paley)):
        problems.append("not self-complementary")
    if is_il(paley).verdict != Verdict.IL:
        problems.append("not IL")
    certificate = find_k7_contraction(paley)
    if not validate_model(parse_certificate(load_golden("paley_k7.cert"))):
        problems.append("golden K7 certificate does not validate")
    if problems:
        raise ConstructionFalsifiedError("; ".join(problems))
    edges = " ".join(f"{u}-{v}" for u, v in certificate.contraction_edges)
    return f"39 edges, srg(13,6,2,3), self-complementary, IL; K7 by contracting {edges}"


def _check_figure1(config: HarnessConfig) -> str:
    core = search_coplanar_core_8(config.seed, config.core_budget, config.core_restarts)
    build_figure1_pair(core)
    build_figure1_pair(from_graph6(load_golden("figure1_core.g6").strip()))
    return f"core {core} (and golden core) give a 10-vertex pair with both sides NIL"


def _check_case_k6() -> str:
    report = verify_case_k6_structure(build_paley13())
    if not report.ok:
        raise ConstructionFalsifiedError("; ".join(report.failures))
    return f"every vertex: {Counter(report.branches).most_common(1)[0][0]} neighbourhood, 9 far edges, 18 crossing"


def _check_theorem(config: HarnessConfig) -> str:
    return sample_theorem_13(config.trials, config.seed, config.workers).format()


def _check_hunt(config: HarnessConfig) -> str:
    result = hunt_bicomplementary_nil(10, config.hunt_budget, config.seed, config.hunt_restarts)
    if result.inconclusive:
        raise SearchExhaustedError("No 10-vertex graph with both sides NIL was found")
    for g in result.graphs:
        if is_il(g).verdict == Verdict.IL or is_il(complement(g)).verdict == Verdict.IL:
            msg = f"Hunt hit {g} is not NIL on both sides"
            raise ConstructionFalsifiedError(msg)
    return f"{len(result.graphs)} graph(s) on 10 vertices with both sides NIL"


def verify_paper(config: HarnessConfig | None = None) -> PaperReport:
    """Run every section check; a section that raises is recorded as failed, not propagated.

    Args:
        config: Trial counts, seeds and search budgets. Defaults to ``HarnessConfig()``.

    Returns:
        One result per section in the order paley, figure1, case-k6, theorem, hunt.
    """
    config = config or HarnessConfig()
    checks = (
        ("paley", _check_paley),
        ("figure1", lambda: _check_figure1(config)),
        ("case-k6", _check_case_k6),
        ("theorem", lambda: _check_theorem(config)),
        ("hunt", lambda: _check_hunt(config)),
    )
    report = PaperReport()
    for name, check in checks:
        logger.info("Verifying %s", name)
        try:
            report.sections.append(SectionResult(name, True, check()))
        except LinklessError as error:
            logger.exception("Section %s failed", name)
            report.sections.append(SectionResult(name, False, str(error)))
    return report
