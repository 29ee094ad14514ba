import numpy as np
import pytest

from linkless import linkedness
from linkless.family import family_member
from linkless.graph import (
    Edge,
    complement,
    complete,
    complete_bipartite,
    cone,
    cycle,
    delete_edge,
    edge_count,
    empty,
    from_edges,
    from_graph6,
    petersen_graph,
    random_graph,
    union_vertex,
)
from linkless.harness import load_golden
from linkless.linkedness import (
    FastPath,
    Side,
    Verdict,
    cone_nil_iff_base_planar_check,
    edge_bound_il,
    find_contraction_apex,
    find_contraction_sequence,
    is_il,
    is_planar,
    kuratowski_witness,
    pair_verdict,
    random_planar_graph,
)
from linkless.minors import validate_model
from linkless.utils import CapacityExceededError
from tests.utils import nx_planar


@pytest.mark.parametrize(
    "g, expected",
    [
        (complete(4), True),
        (complete(5), False),
        (complete_bipartite(3, 3), False),
        (petersen_graph(), False),
        (cycle(12), True),
        (delete_edge(complete(5), (0, 1)), True),
    ],
)
def test_is_planar_known(g, expected):
    assert is_planar(g) == expected


@pytest.mark.parametrize("n", [5, 7, 9])
def test_is_planar_matches_networkx(rng, n):
    for _ in range(15):
        g = random_graph(n, rng, p=float(rng.uniform(0.2, 0.6)))
        assert is_planar(g) == nx_planar(g)


@pytest.mark.parametrize("n", [3, 8, 12, 13])
def test_random_planar_graph_is_planar(rng, n):
    for keep in (None, 1.0):
        g = random_planar_graph(n, rng, keep)
        assert nx_planar(g)
    assert edge_count(random_planar_graph(n, rng, 1.0)) == 3 * n - 6


@pytest.mark.parametrize("g, name", [(complete(5), "K5"), (complete_bipartite(3, 3), "K33")])
def test_kuratowski_witness(g, name):
    witness = kuratowski_witness(g)
    assert witness is not None
    assert witness[0] == name
    assert validate_model(witness[1])
    assert kuratowski_witness(cycle(6)) is None


def test_k6_is_il():
    certificate = is_il(complete(6))
    assert certificate.verdict == Verdict.IL
    assert certificate.pattern_name == "K6"
    assert validate_model(certificate.witness)


@pytest.mark.parametrize("g", [delete_edge(complete(6), (0, 1)), empty(13), cycle(13), cone(cycle(8))])
def test_nil_graphs(g):
    certificate = is_il(g)
    assert certificate.verdict == Verdict.NIL
    assert certificate.witness is None
    assert len(certificate.exhausted) == 7


@pytest.mark.parametrize("n", [6, 9, 12])
def test_planar_graphs_are_nil(rng, n):
    assert is_il(random_planar_graph(n, rng)).verdict == Verdict.NIL


@pytest.mark.parametrize("n", [5, 6, 7])
def test_cone_is_nil_iff_base_is_planar(rng, n):
    for _ in range(6):
        assert cone_nil_iff_base_planar_check(random_graph(n, rng))
    assert cone_nil_iff_base_planar_check(complete(5))
    assert cone_nil_iff_base_planar_check(complete_bipartite(3, 3))


def test_apex_over_nonplanar_neighbourhood_is_il(rng):
    for _ in range(5):
        base = random_graph(9, rng, p=0.35)
        assert (is_il(cone(base)).verdict == Verdict.IL) == (not nx_planar(base))


@pytest.mark.parametrize("n", [6, 8, 10])
def test_edge_bound_forces_il(rng, n):
    assert edge_bound_il(complete(n))
    assert not edge_bound_il(cycle(n))
    tested = 0
    while tested < 3:
        g = random_graph(n, rng, p=0.9)
        if edge_bound_il(g):
            assert is_il(g).verdict == Verdict.IL
            tested += 1


def test_find_contraction_apex():
    g = from_edges(12, [(0, 1)] + [(0, v) for v in range(2, 7)] + [(1, v) for v in range(7, 12)])
    assert find_contraction_apex(g) == Edge(0, 1)
    assert find_contraction_apex(cycle(12)) is None


def test_pair_verdict_k13():
    verdict = pair_verdict(complete(13))
    assert verdict.il_side == Side.G
    assert verdict.fired_rule == FastPath.EDGE_BOUND
    assert verdict.g_certificate.verdict == Verdict.IL
    assert verdict.cg_certificate is None


def test_pair_verdict_empty_13():
    verdict = pair_verdict(empty(13))
    assert verdict.il_side == Side.CG
    assert verdict.fired_rule == FastPath.EDGE_BOUND
    assert verdict.g_certificate is None
    assert verdict.cg_certificate.verdict == Verdict.IL


def test_degree_apex_over_planar_neighbourhood_proves_complement(rng):
    g = cone(random_planar_graph(12, rng, keep=1.0))
    verdict = pair_verdict(g)
    assert verdict.il_side == Side.CG
    assert verdict.fired_rule == FastPath.DEGREE_APEX
    assert verdict.cg_certificate.verdict == Verdict.IL


def test_degree_apex_over_nonplanar_neighbourhood_proves_graph():
    k6 = [(u, v) for u in range(6) for v in range(u + 1, 6)]
    ring = [(6 + i, 6 + (i + 1) % 6) for i in range(6)]
    g = cone(from_edges(12, k6 + ring + [(0, 6), (1, 7), (2, 8)]))
    assert edge_count(g) == 36
    verdict = pair_verdict(g)
    assert verdict.il_side == Side.G
    assert verdict.fired_rule == FastPath.DEGREE_APEX
    assert verdict.g_certificate.pattern_name == "K6"


def test_pair_verdict_on_figure1_graph_finds_neither():
    core = from_graph6(load_golden("figure1_core.g6").strip())
    g = union_vertex(union_vertex(core, range(8)), [])
    verdict = pair_verdict(g)
    assert verdict.il_side == Side.NEITHER
    assert verdict.fired_rule == FastPath.FULL_SEARCH


@pytest.mark.parametrize("n", [12, 13])
def test_pair_verdict_random_graphs_never_neither(rng, n):
    for _ in range(10):
        g = random_graph(n, rng)
        verdict = pair_verdict(g)
        assert verdict.il_side != Side.NEITHER
        if verdict.il_side in (Side.G, Side.BOTH):
            assert is_il(g).verdict == Verdict.IL
        if verdict.il_side in (Side.CG, Side.BOTH):
            assert is_il(complement(g)).verdict == Verdict.IL


def test_pair_verdict_contraction_apex_on_twelve_vertices(rng):
    fired = 0
    for _ in range(40):
        g = random_graph(12, rng)
        verdict = pair_verdict(g)
        assert verdict.il_side != Side.NEITHER
        fired += verdict.fired_rule == FastPath.CONTRACTION_APEX
    assert fired > 0


def test_petersen_member_names_resolve():
    assert is_il(family_member("PETERSEN").graph).pattern_name == "PETERSEN"


def test_size_limit():
    with pytest.raises(CapacityExceededError):
        is_il(empty(14))


def _certified_sides(g, verdict):
    sides = {Side.G: (g, verdict.g_certificate), Side.CG: (complement(g), verdict.cg_certificate)}
    if verdict.il_side == Side.BOTH:
        return list(sides.values())
    return [sides[verdict.il_side]] if verdict.il_side in sides else []


def _check_fast_path_agrees(g):
    verdict = pair_verdict(g)
    assert verdict.il_side != Side.NEITHER
    for side, certificate in _certified_sides(g, verdict):
        assert certificate.verdict == Verdict.IL
        assert certificate.witness.host == side
        assert certificate.witness.pattern == family_member(certificate.pattern_name).graph
        assert validate_model(certificate.witness)
    return verdict


def test_fast_path_certificates_validate(rng):
    for n in (10, 11, 12, 13):
        for _ in range(6):
            _check_fast_path_agrees(random_graph(n, rng))


@pytest.mark.slow
def test_fast_path_certificates_validate_sweep():
    rng = np.random.default_rng(31)
    for _ in range(1000):
        verdict = _check_fast_path_agrees(random_graph(int(rng.integers(10, 14)), rng))
        if verdict.fired_rule != FastPath.FULL_SEARCH and verdict.il_side == Side.G:
            assert verdict.cg_certificate is None


def test_fast_paths_do_not_run_the_full_search_on_the_proven_side(mocker, rng):
    search = mocker.spy(linkedness, "find_minor")
    g = cone(random_planar_graph(12, rng, keep=1.0))
    verdict = pair_verdict(g)
    assert verdict.fired_rule == FastPath.DEGREE_APEX
    hosts = {call.args[0].n for call in search.call_args_list}
    assert 13 not in hosts


def test_edge_bound_certificate_is_a_k6_model():
    verdict = pair_verdict(delete_edge(complete(13), (0, 1)))
    assert verdict.fired_rule == FastPath.EDGE_BOUND
    assert verdict.g_certificate.pattern_name == "K6"
    assert validate_model(verdict.g_certificate.witness)


def _tight_degree_nine_graph(extra):
    # vertex 0 sees 1..9; 10 and 11 hang off 1 and 2, so each neighbour has at most one further neighbour
    edges = [(0, v) for v in range(1, 10)]
    edges += [(hub, v) for hub in (1, 2) for v in range(3, 10)]
    edges += [(1, 10), (2, 11), (10, 11)]
    return from_edges(12, edges + extra)


def test_find_contraction_apex_misses_a_tight_degree_nine_vertex():
    g = _tight_degree_nine_graph([(3, 4), (5, 6)])
    assert max(row.bit_count() for row in g.adj) == 9
    assert find_contraction_apex(g) is None
    assert find_contraction_apex(complement(g)) is None
    assert not edge_bound_il(g)
    assert not edge_bound_il(complement(g))


def test_degree_nine_with_planar_neighbourhood_proves_complement():
    g = _tight_degree_nine_graph([(3, 4), (5, 6)])
    verdict = pair_verdict(g)
    assert verdict.il_side == Side.CG
    assert verdict.fired_rule == FastPath.DEGREE_NINE
    assert verdict.cg_certificate.pattern_name in ("K6", "K331")
    assert validate_model(verdict.cg_certificate.witness)
    assert is_il(complement(g)).verdict == Verdict.IL


def test_degree_nine_with_nonplanar_neighbourhood_proves_graph():
    g = _tight_degree_nine_graph([(u, v) for u in range(3, 8) for v in range(u + 1, 8)])
    verdict = pair_verdict(g)
    assert verdict.il_side == Side.G
    assert verdict.fired_rule == FastPath.DEGREE_NINE
    assert verdict.g_certificate.pattern_name == "K6"
    assert validate_model(verdict.g_certificate.witness)


def _with_hub(g, rng, degree):
    hub = int(rng.integers(g.n))
    picked = rng.choice([v for v in range(g.n) if v != hub], size=degree, replace=False)
    return from_edges(g.n, [e for e in g.edges() if hub not in e] + [(hub, int(v)) for v in picked])


@pytest.mark.parametrize("n", [12, 13])
def test_max_degree_nine_is_decided_by_a_fast_path(rng, n):
    for _ in range(12):
        g = _with_hub(random_graph(n, rng, p=float(rng.uniform(0.2, 0.5))), rng, 9)
        verdict = _check_fast_path_agrees(g)
        assert verdict.fired_rule != FastPath.FULL_SEARCH


@pytest.mark.slow
def test_max_degree_nine_sweep():
    rng = np.random.default_rng(9)
    for _ in range(500):
        n = int(rng.integers(12, 14))
        g = _with_hub(random_graph(n, rng, p=float(rng.uniform(0.15, 0.6))), rng, 9)
        assert _check_fast_path_agrees(g).fired_rule != FastPath.FULL_SEARCH


def test_find_contraction_sequence():
    g = from_edges(13, [(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)] + [(1, v) for v in (6, 7, 8)] + [(2, v) for v in range(9, 13)])
    assert find_contraction_apex(g) is None
    assert find_contraction_sequence(g) == (Edge(0, 1), Edge(0, 2))
    assert find_contraction_sequence(cycle(13)) is None
    assert find_contraction_sequence(complete(12)) is None


def _check_planar_complement(g):
    assert nx_planar(g)
    assert is_il(complement(g)).verdict == Verdict.IL


def test_complement_of_planar_graph_is_il(rng):
    for n in (10, 11, 12, 13):
        _check_planar_complement(random_planar_graph(n, rng))


@pytest.mark.slow
def test_complement_of_planar_graph_is_il_sweep():
    rng = np.random.default_rng(10)
    for _ in range(500):
        _check_planar_complement(random_planar_graph(int(rng.integers(10, 14)), rng))


def test_nine_vertex_graph_or_its_complement_is_nonplanar(rng):
    for _ in range(40):
        g = random_graph(9, rng, p=float(rng.uniform(0.3, 0.7)))
        assert not (is_planar(g) and is_planar(complement(g)))


@pytest.mark.slow
def test_nine_vertex_nonplanarity_sweep():
    rng = np.random.default_rng(9)
    for _ in range(1000):
        g = random_graph(9, rng)
        assert not (is_planar(g) and is_planar(complement(g)))


@pytest.mark.slow
def test_cone_is_nil_iff_base_is_planar_sweep():
    rng = np.random.default_rng(5)
    for _ in range(500):
        assert cone_nil_iff_base_planar_check(random_graph(int(rng.integers(4, 10)), rng))


@pytest.mark.slow
def test_edge_bound_forces_il_sweep():
    rng = np.random.default_rng(6)
    tested = 0
    while tested < 500:
        n = int(rng.integers(6, 14))
        g = random_graph(n, rng, p=float(rng.uniform(0.6, 0.95)))
        if edge_bound_il(g):
            assert is_il(g).verdict == Verdict.IL
            tested += 1
