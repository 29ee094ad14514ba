import numpy as np
import pytest

from linkless.graph import (
    Graph,
    complement,
    complete,
    complete_bipartite,
    cycle,
    empty,
    from_edges,
    is_subgraph,
    path,
    petersen_graph,
    random_graph,
    star,
)
from linkless.harness import load_golden
from linkless.minors import (
    MinorModel,
    brute_force_has_minor,
    find_minor,
    format_certificate,
    parse_certificate,
    replay_model,
    validate_model,
)
from linkless.utils import CapacityExceededError, CertificateFormatError, InvalidModelError, mask_of

PATTERNS = [complete(3), complete(4), cycle(4), star(3), path(4), complete_bipartite(2, 3), complete(5)]


@pytest.mark.parametrize(
    "host, pattern, expected",
    [
        (complete(6), complete(5), True),
        (petersen_graph(), complete(5), True),
        (petersen_graph(), complete_bipartite(3, 3), True),
        (petersen_graph(), complete(6), False),
        (cycle(5), complete(3), True),
        (cycle(8), complete(4), False),
        (complete_bipartite(3, 3), complete(5), False),
        (complete(4), complete(5), False),
        (empty(6), complete(2), False),
        (star(5), star(4), True),
    ],
)
def test_find_minor_known_cases(host, pattern, expected):
    model = find_minor(host, pattern)
    assert (model is not None) == expected
    if model is not None:
        assert validate_model(model)


@pytest.mark.parametrize("pattern", PATTERNS)
@pytest.mark.parametrize("n", [5, 6, 7])
def test_find_minor_agrees_with_brute_force(rng, pattern, n):
    for _ in range(8):
        host = random_graph(n, rng, p=float(rng.uniform(0.2, 0.8)))
        assert (find_minor(host, pattern) is not None) == brute_force_has_minor(host, pattern)


@pytest.mark.parametrize("pattern", [complete(4), complete_bipartite(3, 3), complete(5), cycle(5)])
def test_replay_rebuilds_the_pattern(rng, pattern):
    for _ in range(10):
        host = random_graph(10, rng, p=0.6)
        model = find_minor(host, pattern)
        if model is None:
            continue
        minor = replay_model(model)
        assert minor.n == pattern.n
        assert is_subgraph(pattern, minor)
        assert replay_model(model, prune=True) == pattern


def _model(host: Graph, pattern: Graph, sets: list[list[int]]) -> MinorModel:
    return MinorModel(pattern, host, tuple(mask_of(part) for part in sets))


@pytest.mark.parametrize(
    "sets",
    [
        [[0], [1], [2, 3]],  # valid reference: contract 2-3 in C4
        [[0], [1], [2]],  # branch sets 2 and 0 are not adjacent
        [[0, 1], [1], [2, 3]],  # overlapping
        [[0], [1, 3], [2]],  # 1 and 3 are not adjacent
        [[0], [1], []],  # empty
        [[0], [1]],  # wrong count
    ],
)
def test_validate_model(sets):
    model = _model(cycle(4), complete(3), sets)
    assert validate_model(model) == (sets == [[0], [1], [2, 3]])


def test_replay_rejects_invalid_models():
    with pytest.raises(InvalidModelError):
        replay_model(_model(cycle(4), complete(3), [[0], [1], [2]]))


def test_certificate_roundtrip():
    model = find_minor(petersen_graph(), complete(5))
    assert model is not None
    text = format_certificate(model)
    assert text.splitlines()[0] == "D~{"
    assert parse_certificate(text) == model


@pytest.mark.parametrize(
    "text",
    [
        "",
        "D~{\nI????????\n",
        "Bw\nA_\n0\n1\n",  # three branch sets expected
        "A_\nA_\n0\nx\n",
    ],
)
def test_parse_certificate_errors(text):
    with pytest.raises(CertificateFormatError):
        parse_certificate(text)


def test_golden_paley_certificate_replays_to_k7():
    model = parse_certificate(load_golden("paley_k7.cert"))
    assert validate_model(model)
    assert model.host.n == 13
    assert replay_model(model) == complete(7)


def test_brute_force_limit():
    with pytest.raises(CapacityExceededError):
        brute_force_has_minor(empty(9), complete(3))


@pytest.mark.parametrize("pattern", [complete(4), complete(5), complete_bipartite(3, 3)])
def test_find_minor_survives_adding_an_edge(rng, pattern):
    for _ in range(15):
        host = random_graph(8, rng, p=float(rng.uniform(0.3, 0.7)))
        gaps = complement(host).edges()
        if not gaps:
            continue
        bigger = from_edges(host.n, [*host.edges(), gaps[int(rng.integers(len(gaps)))]])
        if find_minor(host, pattern) is not None:
            assert find_minor(bigger, pattern) is not None
        if find_minor(bigger, pattern) is None:
            assert find_minor(host, pattern) is None


@pytest.mark.slow
def test_find_minor_agrees_with_brute_force_sweep():
    rng = np.random.default_rng(2024)
    patterns = [complete(4), complete(5), complete_bipartite(3, 3)]
    for _ in range(10_000):
        host = random_graph(int(rng.integers(4, 8)), rng, p=float(rng.uniform(0.1, 0.9)))
        for pattern in patterns:
            assert (find_minor(host, pattern) is not None) == brute_force_has_minor(host, pattern)
