import random
from itertools import combinations

import pytest

from pcml.core import (
    AssocPoly,
    BasisMonomial,
    Bracket,
    Gen,
    GeneratorOrder,
    LieElement,
    Scale,
    Sum,
    act,
    basis_monomial_with_start,
    basis_monomials_of_multidegree,
    bracket,
    change_order,
    element_to_raw,
    equal,
    glued_decomposition,
    glued_mdeg,
    homogeneous_components,
    is_basis_monomial,
    mdeg,
    multidegrees,
    normal_form,
    support,
    word_element,
)
from pcml.errors import AlgebraError
from pcml.graphs import Graph, cycle_graph
from pcml.sampling import random_element, random_graph


FREE3 = Graph(3, [])
ASC3 = GeneratorOrder.ascending(3)


def gens(graph, order):
    return [LieElement.generator(graph, order, i) for i in range(graph.n)]


def test_generator_order_validation():
    with pytest.raises(AlgebraError):
        GeneratorOrder([0, 0, 1])
    o = GeneratorOrder([2, 0, 1])
    assert o.rank == (1, 2, 0)


def test_self_bracket_is_zero():
    x = gens(FREE3, ASC3)
    assert bracket(x[1], x[1]).is_zero()


def test_edge_bracket_is_zero():
    c4 = cycle_graph(4)
    o = GeneratorOrder.ascending(4)
    x = gens(c4, o)
    assert bracket(x[0], x[1]).is_zero()
    assert not bracket(x[0], x[2]).is_zero()


def test_jacobi_straightening_free():
    e = word_element(FREE3, ASC3, (1, 2, 0))
    expected = word_element(FREE3, ASC3, (1, 0, 2)) - word_element(FREE3, ASC3, (2, 0, 1))
    assert e == expected


def test_cycle5_triple_products():
    c5 = cycle_graph(5)
    o = GeneratorOrder.ascending(5)
    assert word_element(c5, o, (0, 2, 1)).is_zero()
    assert not word_element(c5, o, (0, 2, 3)).is_zero()


def test_c3_is_abelian():
    c3 = cycle_graph(3)
    x = gens(c3, ASC3)
    for i, j in combinations(range(3), 2):
        assert bracket(x[i], x[j]).is_zero()


def test_metabelian_identity():
    x = gens(FREE3, ASC3)
    inner1 = bracket(x[1], x[0])
    inner2 = bracket(x[2], x[0])
    assert bracket(inner1, inner2).is_zero()


def test_normal_form_raw_expr():
    c4 = cycle_graph(4)
    o = GeneratorOrder.ascending(4)
    expr = Bracket(Gen(0), Gen(1))
    assert normal_form(expr, c4, o).is_zero()
    expr = Sum((Scale(2, Gen(0)), Bracket(Bracket(Gen(0), Gen(2)), Gen(0))))
    e = normal_form(expr, c4, o)
    assert e.linear == {0: 2} and e.derived
    with pytest.raises(AlgebraError):
        normal_form(Gen(9), c4, o)


def test_act_definition_and_symmetry():
    u = word_element(FREE3, ASC3, (1, 0))
    via_act = act(u, AssocPoly.variable(3, 2))
    via_word = word_element(FREE3, ASC3, (1, 0, 2))
    assert via_act == via_word
    f1 = AssocPoly.variable(4, 2) * AssocPoly.variable(4, 3)
    g4 = Graph(4, [])
    o4 = GeneratorOrder.ascending(4)
    u = word_element(g4, o4, (1, 0))
    assert act(u, f1) == act(act(u, AssocPoly.variable(4, 3)), AssocPoly.variable(4, 2))


def test_act_in_c4_kills_connector():
    c4 = cycle_graph(4)
    o = GeneratorOrder.ascending(4)
    u = word_element(c4, o, (2, 0))
    assert act(u, AssocPoly.variable(4, 1)).is_zero()


def test_act_rejects_linear_part():
    x = gens(FREE3, ASC3)
    with pytest.raises(AlgebraError):
        act(x[0], AssocPoly.variable(3, 1))


def test_act_additive_and_multiplicative():
    rng = random.Random(3)
    g = random_graph(rng, 4)
    o = GeneratorOrder.ascending(4)
    u = LieElement(g, o, {}, random_element(g, o, rng, max_degree=3).derived)
    f = AssocPoly(4, {(1, 0, 2, 0): 2, (0, 1, 0, 0): -1})
    h = AssocPoly(4, {(0, 0, 1, 1): 3, (0, 0, 0, 0): 1})
    assert act(u, f + h) == act(u, f) + act(u, h)
    assert act(u, f * h) == act(act(u, f), h)
    assert act(act(u, f), h) == act(act(u, h), f)


def test_mdeg_and_glued():
    m = BasisMonomial((1, 0), (1,))
    assert mdeg(m, 3) == (1, 2, 0)
    assert glued_mdeg(m, 3) == (1, 2)
    m = BasisMonomial((2, 0), (3,))
    assert mdeg(m, 4) == (1, 0, 1, 1)
    assert glued_mdeg(m, 4) == (1, 0, 2)
    m2 = BasisMonomial((3, 0), (2,))
    assert glued_mdeg(m2, 4) == (1, 0, 2)
    assert support(m) == {0, 2, 3}


def test_homogeneous_components():
    x = gens(FREE3, ASC3)
    g = x[0] + bracket(x[1], x[0])
    comps = homogeneous_components(g)
    assert [delta for delta, _ in comps] == [(1, 0, 0), (1, 1, 0)]
    assert sum((part for _, part in comps), LieElement.zero(FREE3, ASC3)) == g
    h = bracket(x[1], x[0])
    assert len(homogeneous_components(h)) == 1
    assert homogeneous_components(LieElement.zero(FREE3, ASC3)) == []


def test_glued_decomposition():
    g4 = Graph(4, [])
    o4 = GeneratorOrder.ascending(4)
    m1 = word_element(g4, o4, (2, 0, 3))
    m2 = word_element(g4, o4, (2, 0, 2))
    comps = glued_decomposition(2 * m1 + 3 * m2)
    # gluing identifies (1,0,2,0) and (1,0,1,1): one component, two slots
    assert len(comps) == 1
    assert comps[0].glued == (1, 0, 2) and comps[0].start == 2
    assert len(comps[0].element.derived) == 2
    # same glued degree but different start letters -> two components
    g = word_element(g4, o4, (2, 0, 3)) + word_element(g4, o4, (3, 0, 2))
    assert len(glued_decomposition(g)) == 2
    with pytest.raises(AlgebraError):
        glued_decomposition(LieElement.generator(g4, o4, 0))


def test_is_basis_monomial_conditions():
    assert is_basis_monomial((2, 0), (1,), FREE3, ASC3)
    c4 = cycle_graph(4)
    o4 = GeneratorOrder.ascending(4)
    assert not is_basis_monomial((2, 0), (1,), c4, o4)  # support becomes connected
    assert not is_basis_monomial((0, 2), (), FREE3, ASC3)  # head order
    assert not is_basis_monomial((2, 0), (1, 0), FREE3, ASC3)  # unsorted tail
    assert not is_basis_monomial((1, 1), (), FREE3, ASC3)


def test_equal_and_is_zero():
    x = gens(FREE3, ASC3)
    a = bracket(x[1], x[0])
    assert equal(a, a)
    assert (a - a).is_zero()
    other = LieElement.generator(Graph(3, [(0, 1)]), ASC3, 0)
    with pytest.raises(AlgebraError):
        equal(x[0], other)


def test_normal_form_idempotent():
    rng = random.Random(17)
    for _ in range(40):
        g = random_graph(rng, rng.randint(2, 5))
        o = GeneratorOrder.ascending(g.n)
        e = random_element(g, o, rng)
        again = normal_form(element_to_raw(e), g, o)
        assert again == e


def test_is_zero_agrees_across_orders():
    rng = random.Random(23)
    for _ in range(60):
        n = rng.randint(2, 5)
        g = random_graph(rng, n)
        perm = list(range(n))
        rng.shuffle(perm)
        o1, o2 = GeneratorOrder.ascending(n), GeneratorOrder(perm)
        e1 = random_element(g, o1, rng)
        e2 = change_order(e1, o2)
        assert e1.is_zero() == e2.is_zero()
        back = change_order(e2, o1)
        assert back == e1


def test_homogeneous_mdeg_is_order_independent():
    rng = random.Random(29)
    for _ in range(40):
        n = rng.randint(2, 5)
        g = random_graph(rng, n)
        perm = list(range(n))
        rng.shuffle(perm)
        o1, o2 = GeneratorOrder.ascending(n), GeneratorOrder(perm)
        letters = [rng.randrange(n) for _ in range(rng.randint(2, 4))]
        e1 = word_element(g, o1, letters)
        e2 = word_element(g, o2, letters)
        d1 = e1.mdeg_if_homogeneous()
        d2 = e2.mdeg_if_homogeneous()
        if not e1.is_zero() and not e2.is_zero():
            assert d1 == d2


def test_same_component_swap_invariance():
    rng = random.Random(31)
    done = 0
    while done < 60:
        n = rng.randint(3, 6)
        g = random_graph(rng, n)
        o = GeneratorOrder.ascending(n)
        letters = [rng.randrange(n) for _ in range(rng.randint(2, 5))]
        e = word_element(g, o, letters)
        if e.is_zero():
            continue
        from pcml.graphs import components_within

        comps = components_within(g, set(letters))
        pairs = [
            (i, j)
            for i, j in combinations(range(len(letters)), 2)
            if letters[i] != letters[j]
            and any(letters[i] in b and letters[j] in b for b in comps)
        ]
        if not pairs:
            continue
        done += 1
        i, j = rng.choice(pairs)
        swapped = letters[:]
        swapped[i], swapped[j] = swapped[j], swapped[i]
        e2 = word_element(g, o, swapped)
        # exchanging both head letters flips by anticommutativity
        if {i, j} == {0, 1}:
            e2 = -e2
        assert e == e2


def test_mdeg_additivity_of_bracket():
    rng = random.Random(37)
    for _ in range(50):
        n = rng.randint(2, 5)
        g = random_graph(rng, n)
        o = GeneratorOrder.ascending(n)
        wa = [rng.randrange(n) for _ in range(rng.randint(1, 3))]
        wb = [rng.randrange(n) for _ in range(rng.randint(1, 3))]
        a, b = word_element(g, o, wa), word_element(g, o, wb)
        c = bracket(a, b)
        if a.is_zero() or b.is_zero() or c.is_zero():
            continue
        da, db, dc = (e.mdeg_if_homogeneous() for e in (a, b, c))
        assert tuple(x + y for x, y in zip(da, db)) == dc


def test_homogeneous_sum_zero_iff_parts_zero():
    rng = random.Random(41)
    for _ in range(40):
        n = rng.randint(2, 4)
        g = random_graph(rng, n)
        o = GeneratorOrder.ascending(n)
        e = random_element(g, o, rng)
        parts = homogeneous_components(e)
        assert e.is_zero() == (not parts)
        for _, part in parts:
            assert not part.is_zero()


def test_enumeration_matches_predicate():
    rng = random.Random(43)
    for _ in range(40):
        n = rng.randint(2, 5)
        g = random_graph(rng, n)
        perm = list(range(n))
        rng.shuffle(perm)
        o = GeneratorOrder(perm)
        for degree in (2, 3, 4):
            for delta in multidegrees(n, degree):
                fast = set(basis_monomials_of_multidegree(g, o, delta))
                slow = set()
                supp = [i for i, d in enumerate(delta) if d]
                for a in supp:
                    for b in supp:
                        if a == b:
                            continue
                        tail = []
                        for i, d in enumerate(delta):
                            tail.extend([i] * (d - (i == a) - (i == b)))
                        tail.sort(key=o.rank.__getitem__)
                        if is_basis_monomial((a, b), tuple(tail), g, o):
                            slow.add(BasisMonomial((a, b), tuple(tail)))
                assert fast == slow


def test_basis_monomial_with_start():
    g4 = Graph(4, [])
    o4 = GeneratorOrder.ascending(4)
    m = basis_monomial_with_start((1, 0, 1, 1), 2, g4, o4)
    assert m == BasisMonomial((2, 0), (3,))
    assert basis_monomial_with_start((1, 0, 1, 1), 0, g4, o4) is None
    c4 = cycle_graph(4)
    assert basis_monomial_with_start((1, 1, 1, 0), 2, c4, o4) is None


def test_linear_and_derived_products():
    # products with derived parts keep only the mixed terms
    rng = random.Random(47)
    for _ in range(30):
        n = rng.randint(3, 5)
        g = random_graph(rng, n)
        o = GeneratorOrder.ascending(n)
        a = random_element(g, o, rng, max_degree=3)
        b = random_element(g, o, rng, max_degree=3)
        a_lin = LieElement(g, o, a.linear, {})
        a_der = LieElement(g, o, {}, a.derived)
        b_lin = LieElement(g, o, b.linear, {})
        b_der = LieElement(g, o, {}, b.derived)
        lhs = bracket(a, b)
        rhs = (
            bracket(a_lin, b_lin)
            - bracket(b_der, a_lin)
            + bracket(a_der, b_lin)
        )
        assert lhs == rhs
        triple = bracket(bracket(a, b), b)
        assert triple == bracket(bracket(a, b), b_lin)


def test_scalar_arithmetic():
    x = gens(FREE3, ASC3)
    e = 2 * x[0] - x[1] * 3
    assert e.linear == {0: 2, 1: -3}
    assert (e - e).is_zero()
    assert (-e) + e == LieElement.zero(FREE3, ASC3)


def test_basis_monomial_count_is_components_minus_one():
    rng = random.Random(53)
    from pcml.graphs import components_within

    for _ in range(50):
        n = rng.randint(2, 6)
        g = random_graph(rng, n)
        o = GeneratorOrder.ascending(n)
        delta = tuple(rng.randint(0, 2) for _ in range(n))
        if sum(delta) < 2:
            continue
        supp = {i for i, d in enumerate(delta) if d}
        expected = max(len(components_within(g, supp)) - 1, 0) if len(supp) > 1 else 0
        assert len(basis_monomials_of_multidegree(g, o, delta)) == expected
