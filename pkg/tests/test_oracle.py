import random
from itertools import combinations

import pytest

from pcml import oracle
from pcml.core import GeneratorOrder, multidegrees
from pcml.errors import AlgebraError
from pcml.graphs import Graph, cycle_graph
from pcml.sampling import random_homogeneous_raw, raw_to_element


def test_graded_dimension_examples():
    assert oracle.graded_dimension(Graph(2, []), (1, 1)) == 1
    assert oracle.graded_dimension(Graph(2, [(0, 1)]), (1, 1)) == 0
    assert oracle.graded_dimension(Graph(3, []), (1, 1, 1)) == 2


def test_graded_dimension_degenerate_degrees():
    g = Graph(3, [])
    assert oracle.graded_dimension(g, (0, 0, 0)) == 0
    assert oracle.graded_dimension(g, (0, 1, 0)) == 1
    with pytest.raises(AlgebraError):
        oracle.graded_dimension(g, (1, 1))


def test_c3_slices_vanish():
    c3 = cycle_graph(3)
    for degree in range(2, 6):
        for delta in multidegrees(3, degree):
            assert oracle.graded_dimension(c3, delta) == 0


def test_ideal_member_examples():
    g = Graph(3, [(0, 1)])
    assert oracle.ideal_member([], g)
    assert oracle.ideal_member([(1, (0, 1, 2))], g)
    assert not oracle.ideal_member([(1, (2, 0, 1))], g)
    assert not oracle.ideal_member([(1, (0,))], g)
    c4 = cycle_graph(4)
    assert oracle.ideal_member([(1, (0, 2, 1))], c4)


def test_certify_examples():
    order = GeneratorOrder.ascending(3)
    rep = oracle.certify_basis(cycle_graph(3), (1, 1, 1), order)
    assert rep.ok and rep.dim == 0
    rep = oracle.certify_basis(Graph(2, []), (1, 1), GeneratorOrder.ascending(2))
    assert rep.ok and rep.count == 1 and rep.dim == 1
    rep = oracle.certify_basis(cycle_graph(5), (0, 1, 0, 1, 1), GeneratorOrder.ascending(5))
    assert rep.ok and rep.count == 1


def test_dimension_monotone_in_edges():
    rng = random.Random(9)
    for _ in range(20):
        n = rng.randint(2, 4)
        all_edges = list(combinations(range(n), 2))
        rng.shuffle(all_edges)
        cut = rng.randint(0, len(all_edges))
        smaller = Graph(n, all_edges[:cut])
        extra = all_edges[cut:]
        if not extra:
            continue
        bigger = Graph(n, all_edges[: cut + 1])
        for degree in (2, 3, 4):
            for delta in multidegrees(n, degree):
                assert oracle.graded_dimension(bigger, delta) <= oracle.graded_dimension(smaller, delta)


def test_engine_agrees_with_oracle_sample():
    rng = random.Random(13)
    order = GeneratorOrder.ascending(4)
    for _ in range(25):
        edges = [e for e in combinations(range(4), 2) if rng.random() < 0.5]
        graph = Graph(4, edges)
        for _ in range(40):
            _, raw = random_homogeneous_raw(rng, 4, rng.randint(2, 5))
            assert raw_to_element(raw, graph, order).is_zero() == oracle.ideal_member(raw, graph)


def test_expand_word_rejects_short_words():
    with pytest.raises(AlgebraError):
        oracle.expand_word((0,))
