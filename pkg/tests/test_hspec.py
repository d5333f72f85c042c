from itertools import product

import pytest

from qmat.detid import reduce_mod_i1
from qmat.exceptions import AlgebraError, CapExceededError
from qmat.hspec import (
    IdealPair,
    enumerate_hprimes,
    hasse_diagram,
    hprime_count,
    hprime_leq,
    p_ideal_generators,
    quotient_iso_check,
    quotient_map,
    scalar_commutator,
)
from qmat.ncalg import NCPoly, pbw_words, quantum_matrix
from qmat.scalar import LaurentScalar

q = LaurentScalar.q


@pytest.mark.parametrize(
    "m, n", [(m, n) for m in range(1, 5) for n in range(1, 5)]
)
def test_count_matches_enumeration(m, n):
    pairs = enumerate_hprimes(m, n)
    assert len(pairs) == hprime_count(m, n) == len(set(pairs))
    assert pairs[0] == IdealPair.bottom(m, n)
    assert pairs[-1].maximal


@pytest.mark.parametrize("m, n, count", [(1, 1, 2), (2, 2, 10), (2, 3, 22)])
def test_known_counts(m, n, count):
    assert hprime_count(m, n) == count


def test_full_rows_or_columns_give_the_maximal_ideal():
    assert IdealPair.of((1, 2), (), 2, 3) == IdealPair.top(2, 3)
    assert IdealPair.of((), (1, 2, 3), 2, 3).node_id == "P_M"
    with pytest.raises(AlgebraError):
        IdealPair.of((3,), (), 2, 2)


def test_node_ids_and_labels():
    pair = IdealPair.of((1,), (2,), 2, 3)
    assert pair.node_id == "P_r1_c2"
    assert pair.label == "({1},{2})"
    assert IdealPair.bottom(2, 2).label == "(□)"
    assert IdealPair.of((2,), (), 2, 2).label == "∘∘\n••"
    assert IdealPair.top(3, 3).label == "M"


def test_ideal_generators():
    pair = IdealPair.of((1,), (), 2, 2)
    algebra = quantum_matrix(2, 2)
    gens = p_ideal_generators(pair)
    assert len(gens) == 3
    assert gens[1] == NCPoly.generator(algebra, algebra.index(1, 1))
    assert len(p_ideal_generators(IdealPair.top(2, 2))) == 5


def test_commutator_table():
    s = scalar_commutator
    assert (s(1, 1, 1, 2).alpha, s(1, 1, 1, 2).beta) == (q(1), q(1))
    assert (s(1, 2, 1, 1).alpha, s(1, 2, 1, 1).beta) == (q(-1), q(-1))
    assert (s(1, 1, 2, 2).alpha, s(1, 1, 2, 2).beta) == (q(2), q(1))
    assert (s(2, 2, 1, 1).alpha, s(2, 2, 1, 1).beta) == (q(-2), q(-1))
    assert (s(1, 2, 2, 1).alpha, s(1, 2, 2, 1).beta) == (q(0), q(-1))
    assert (s(2, 1, 1, 2).alpha, s(2, 1, 1, 2).beta) == (q(0), q(1))
    assert (s(1, 1, 2, 1).alpha, s(1, 1, 2, 1).beta) == (q(1), q(0))
    assert (s(1, 3, 1, 3).alpha, s(1, 3, 1, 3).beta) == (q(0), q(0))


def test_commutator_scalars_hold_modulo_i1():
    algebra = quantum_matrix(3, 3)
    cells = list(product(range(1, 4), range(1, 4)))
    for (i, j), (s, t) in product(cells, cells):
        scalars = scalar_commutator(i, j, s, t)
        lhs = NCPoly.monomial(
            algebra, (algebra.index(i, j), algebra.index(s, t))
        )
        swapped = NCPoly.monomial(
            algebra, (algebra.index(s, t), algebra.index(i, j)), scalars.alpha
        )
        crossed = NCPoly.monomial(
            algebra, (algebra.index(i, t), algebra.index(s, j)), scalars.beta
        )
        assert reduce_mod_i1(lhs - swapped).is_zero()
        assert reduce_mod_i1(lhs - crossed).is_zero()


def test_containment_order():
    bottom = IdealPair.bottom(2, 3)
    row = IdealPair.of((1,), (), 2, 3)
    both = IdealPair.of((1,), (2,), 2, 3)
    top = IdealPair.top(2, 3)
    assert hprime_leq(bottom, row)
    assert hprime_leq(row, both)
    assert not hprime_leq(both, row)
    assert hprime_leq(both, top)
    assert not hprime_leq(top, both)
    with pytest.raises(AlgebraError):
        hprime_leq(bottom, IdealPair.bottom(2, 2))


@pytest.mark.parametrize(
    "m, n",
    [(1, 2), (2, 2), (2, 3), pytest.param(3, 3, marks=pytest.mark.slow)],
)
def test_semantic_order_agrees(m, n):
    pairs = enumerate_hprimes(m, n)
    for a, b in product(pairs, pairs):
        assert hprime_leq(a, b, semantic=True) == hprime_leq(a, b)


def _brute_force_covers(pairs):
    covers = set()
    for a, b in product(pairs, pairs):
        if a == b or not hprime_leq(a, b):
            continue
        if not any(
            c not in (a, b) and hprime_leq(a, c) and hprime_leq(c, b)
            for c in pairs
        ):
            covers.add((a.node_id, b.node_id))
    return covers


@pytest.mark.parametrize("m, n", [(2, 2), (2, 3)])
def test_hasse_diagram_is_the_cover_relation(m, n):
    diagram = hasse_diagram(m, n)
    edges = {(a.node_id, b.node_id) for a, b in diagram.edges}
    assert edges == _brute_force_covers(diagram.nodes)


def test_two_by_two_hasse_diagram():
    diagram = hasse_diagram(2, 2)
    assert len(diagram.nodes) == 10
    assert len(diagram.edges) == 16


def test_one_by_one_hasse_diagram():
    diagram = hasse_diagram(1, 1)
    assert [p.node_id for p in diagram.nodes] == ["P_0", "P_M"]
    assert diagram.to_json()["edges"] == [{"from": "P_0", "to": "P_M"}]


def test_hasse_dot():
    dot = hasse_diagram(2, 2).to_dot()
    assert dot.startswith("// H-primes 2x2")
    assert "digraph hprimes" in dot
    assert "rankdir=BT" in dot
    assert "P_0 -> P_r1" in dot


def test_hasse_cap():
    with pytest.raises(CapExceededError):
        hasse_diagram(4, 4, cap=64)


@pytest.mark.parametrize("m, n", [(1, 1), (2, 2), (2, 3), (3, 3)])
def test_quotient_presentations(m, n):
    for pair in enumerate_hprimes(m, n):
        if pair.maximal:
            continue
        report = quotient_iso_check(pair, relations=(m, n) != (3, 3))
        assert report.passed, report.to_json()
        assert report.m_prime == m - len(pair.rows)
        assert report.n_prime == n - len(pair.cols)


def test_quotient_map_example():
    pair = IdealPair.of((2,), (3,), 2, 3)
    qmap = quotient_map(pair)
    source, target = qmap.source, qmap.target
    assert (target.m, target.n) == (1, 2)
    x12 = NCPoly.generator(source, source.index(1, 2))
    x23 = NCPoly.generator(source, source.index(2, 3))
    assert qmap.g(x12) == NCPoly.generator(target, target.index(1, 2))
    assert qmap.g(x23).is_zero()
    with pytest.raises(AlgebraError):
        quotient_map(IdealPair.top(2, 3))


@pytest.mark.parametrize("m, n, d", [(2, 2, 3), (2, 3, 2)])
def test_generators_are_normal_modulo_i1(m, n, d):
    algebra = quantum_matrix(m, n)
    for k in range(algebra.ngens):
        i, j = algebra.coords(k)
        for length in range(d + 1):
            for w in pbw_words(algebra, length):
                scale = LaurentScalar.one()
                for g in w:
                    scale = scale * scalar_commutator(
                        i, j, *algebra.coords(g)
                    ).alpha
                left = NCPoly.monomial(algebra, (k,) + w)
                right = NCPoly.monomial(algebra, w + (k,), scale)
                assert reduce_mod_i1(left - right).is_zero()


@pytest.mark.parametrize("m, n", [(2, 2), (2, 3), (3, 3)])
def test_containment_is_a_partial_order(m, n):
    pairs = enumerate_hprimes(m, n)
    bottom, top = pairs[0], pairs[-1]
    for a in pairs:
        assert hprime_leq(a, a)
        assert hprime_leq(bottom, a)
        assert hprime_leq(a, top)
    for a, b in product(pairs, pairs):
        if a != b and hprime_leq(a, b):
            assert not hprime_leq(b, a)
            for c in pairs:
                if hprime_leq(b, c):
                    assert hprime_leq(a, c)
