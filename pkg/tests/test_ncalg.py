import random
from fractions import Fraction

import pytest

from qmat.exceptions import AlgebraError, ScalarError
from qmat.ncalg import (
    NCPoly,
    component_dimension,
    multiply,
    normal_form,
    pbw_words,
    quantum_affine,
    quantum_matrix,
    random_poly,
    random_word,
    specialize_poly,
    specialized_normal_form,
    tensor,
    words_of_length,
)
from qmat.scalar import LaurentScalar

q = LaurentScalar.q


def x(algebra, i, j):
    return NCPoly.generator(algebra, algebra.index(i, j))


@pytest.fixture
def m22():
    return quantum_matrix(2, 2)


def test_same_column_rule(m22):
    product = x(m22, 2, 1) * x(m22, 1, 1)
    assert product == NCPoly.monomial(
        m22, (m22.index(1, 1), m22.index(2, 1)), q(-1)
    )


def test_same_row_rule(m22):
    product = x(m22, 1, 2) * x(m22, 1, 1)
    assert product == x(m22, 1, 1) * x(m22, 1, 2) * q(-1)


def test_anti_diagonal_pair_commutes(m22):
    assert x(m22, 2, 1) * x(m22, 1, 2) == x(m22, 1, 2) * x(m22, 2, 1)


def test_diagonal_pair(m22):
    product = x(m22, 2, 2) * x(m22, 1, 1)
    expected = NCPoly(
        m22,
        {
            (m22.index(1, 1), m22.index(2, 2)): 1,
            (m22.index(1, 2), m22.index(2, 1)): -(q(1) - q(-1)),
        },
    )
    assert product == expected
    assert product.to_text() == (
        "(-q + q^-1)*X[1,2]*X[2,1] + X[1,1]*X[2,2]"
    )


@pytest.mark.parametrize(
    "d, expected", [(0, 1), (1, 4), (2, 10), (3, 20), (4, 35), (5, 56)]
)
def test_pbw_dimensions(m22, d, expected):
    assert component_dimension(m22, d) == expected
    assert len(pbw_words(m22, d)) == expected


def test_rewriting_strategies_agree():
    algebra = quantum_matrix(3, 3)
    rng = random.Random(7)
    for _ in range(60):
        word = random_word(algebra, rng.randint(2, 5), rng)
        p = NCPoly.monomial(algebra, word)
        left = normal_form(p, "leftmost")
        assert left == normal_form(p, "rightmost")
        assert left.is_canonical()


def test_multiplication_is_associative():
    algebra = quantum_matrix(2, 3)
    rng = random.Random(11)
    for _ in range(15):
        a, b, c = (random_poly(algebra, rng, max_degree=2) for _ in range(3))
        assert (a * b) * c == a * (b * c)


def test_scalars_and_sums():
    algebra = quantum_matrix(2, 2)
    p = x(algebra, 1, 1) + 2
    assert p - x(algebra, 1, 1) == NCPoly.scalar(algebra, 2)
    assert (p * 0).is_zero()
    assert NCPoly.scalar(algebra, q(2)) ** -1 == NCPoly.scalar(
        algebra, q(-2)
    )
    with pytest.raises(AlgebraError):
        p ** -1


def test_algebra_mismatch():
    with pytest.raises(AlgebraError):
        x(quantum_matrix(2, 2), 1, 1) * x(quantum_matrix(2, 3), 1, 1)


@pytest.mark.parametrize("m, n", [(0, 2), (2, 0)])
def test_empty_shapes_rejected(m, n):
    with pytest.raises(AlgebraError):
        quantum_matrix(m, n)


def test_out_of_range_generator(m22):
    with pytest.raises(AlgebraError):
        m22.index(3, 1)
    with pytest.raises(AlgebraError):
        NCPoly.monomial(m22, (4,))


def test_unknown_strategy(m22):
    with pytest.raises(AlgebraError):
        normal_form(x(m22, 1, 1), "middle")


def test_quantum_affine_and_tensor():
    plane = quantum_affine(2)
    y1, y2 = (NCPoly.generator(plane, k) for k in range(2))
    assert y2 * y1 == (y1 * y2).scale(q(-1))

    algebra = tensor(quantum_affine(2), quantum_affine(2))
    z1 = NCPoly.generator(algebra, algebra.z(1))
    y2t = NCPoly.generator(algebra, algebra.y(2))
    assert z1 * y2t == y2t * z1
    assert algebra.word_text((algebra.y(1), algebra.z(2))) == "y[1]*z[2]"
    assert algebra.word_json((algebra.y(1), algebra.z(2))) == [1, 4]


def test_non_unit_lambda_rejected():
    with pytest.raises(AlgebraError):
        quantum_affine(2, {(1, 2): q(1) + 1})


def test_to_text(m22):
    assert NCPoly.zero(m22).to_text() == "0"
    p = NCPoly(
        m22,
        {
            (): Fraction(1, 2),
            (0,): -q(1),
            (1,): q(1) + 1,
        },
    )
    assert p.to_text() == "(q + 1)*X[1,2] - q*X[1,1] + 1/2"


def test_specialized_normal_form_commutes_with_specialization():
    algebra = quantum_matrix(2, 2)
    rng = random.Random(3)
    c = Fraction(3, 2)
    for _ in range(20):
        p = random_poly(algebra, rng, max_degree=3)
        expected = specialize_poly(normal_form(p), c)
        assert specialized_normal_form(specialize_poly(p, c)) == expected


def test_specialize_at_zero_rejected(m22):
    with pytest.raises(ScalarError):
        specialize_poly(x(m22, 1, 1), 0)


def test_specialization_example(m22):
    p = x(m22, 2, 2) * x(m22, 1, 1)
    special = specialize_poly(p, 2)
    assert special.terms[(m22.index(1, 2), m22.index(2, 1))] == Fraction(
        -3, 2
    )


def test_multiply_returns_normal_form():
    algebra = quantum_matrix(2, 2)
    a = NCPoly.generator(algebra, algebra.index(1, 2))
    b = NCPoly.generator(algebra, algebra.index(1, 1))
    product = multiply(a, b)
    assert product == NCPoly.monomial(
        algebra, (algebra.index(1, 1), algebra.index(1, 2)), q(-1)
    )
    assert product.is_canonical()
    with pytest.raises(AlgebraError):
        multiply(a, NCPoly.generator(quantum_matrix(2, 3), 0))


@pytest.mark.parametrize("strategy", ["leftmost", "rightmost"])
def test_long_single_column_word(strategy):
    algebra = quantum_matrix(2, 2)
    low, high = algebra.index(1, 1), algebra.index(2, 1)
    word = (high,) * 40 + (low,) * 40
    reduced = algebra.reduce_word(word, strategy)
    assert reduced == {(low,) * 40 + (high,) * 40: q(-1600)}


SMALL_SHAPES = [
    (m, n) for m in range(1, 10) for n in range(1, 10) if m * n <= 9
]


@pytest.mark.slow
@pytest.mark.parametrize("m, n", SMALL_SHAPES)
def test_every_short_word_reaches_a_normal_form(m, n):
    algebra = quantum_matrix(m, n)
    for d in range(5):
        for word in words_of_length(algebra, d):
            p = normal_form(NCPoly.monomial(algebra, word))
            assert not p.is_zero()
            assert p.is_canonical()
            assert all(len(w) == d for w in p.words())


@pytest.mark.parametrize("m, n", [(2, 2), (2, 3), (3, 3)])
def test_products_of_nonzero_elements_are_nonzero(m, n):
    algebra = quantum_matrix(m, n)
    rng = random.Random(10 * m + n)
    for _ in range(30):
        a = normal_form(random_poly(algebra, rng, max_degree=3))
        b = normal_form(random_poly(algebra, rng, max_degree=3))
        if a.is_zero() or b.is_zero():
            continue
        assert not multiply(a, b).is_zero()
