from fractions import Fraction

import pytest

from src.algebra.errors import BudgetExceededError, FloatModeError, PreconditionError
from src.algebra.markov import (
    composite_expectation,
    cond_expectation,
    expect_down,
    gram_matrix,
    inner_product,
    markov_trace,
    orthogonal_quotient_basis,
    radical_quotient_basis,
    verify_markov_relation,
)
from src.algebra.scalars import make_domain
from src.algebra.temperley_lieb import (
    identity,
    jones_projection,
    random_element,
    tl_involution,
    tl_multiply,
)


def test_trace_values(symbolic):
    assert markov_trace(identity(4, symbolic)) == symbolic.one
    assert markov_trace(jones_projection(2, 4, symbolic)) == symbolic.lam_pow(-2)
    e13 = tl_multiply(jones_projection(1, 4, symbolic), jones_projection(3, 4, symbolic))
    assert markov_trace(e13) == symbolic.lam_pow(-4)


def test_trace_at_integer_index(index4):
    assert index4.format(markov_trace(jones_projection(1, 3, index4))) == "1/4"


def test_trace_is_tracial(symbolic, rng):
    for _ in range(5):
        x, y = random_element(3, symbolic, rng), random_element(3, symbolic, rng)
        assert markov_trace(tl_multiply(x, y)) == markov_trace(tl_multiply(y, x))


def test_conditional_expectation(symbolic):
    assert cond_expectation(identity(3, symbolic)) == identity(2, symbolic)
    assert cond_expectation(jones_projection(2, 3, symbolic)) == identity(2, symbolic).scale(symbolic.lam_pow(-2))
    assert cond_expectation(jones_projection(1, 3, symbolic)) == jones_projection(1, 2, symbolic)
    with pytest.raises(PreconditionError):
        cond_expectation(identity(1, symbolic))


def test_composite_expectation(symbolic):
    x = jones_projection(1, 2, symbolic)
    assert composite_expectation(x, 0) == x
    assert composite_expectation(x, 1) == identity(1, symbolic).scale(symbolic.lam_pow(-2))
    assert expect_down(x, 2).to_scalar() == symbolic.lam_pow(-2)
    with pytest.raises(PreconditionError):
        composite_expectation(x, 2)


def test_two_step_expectation_matches_single_closures(symbolic):
    x = tl_multiply(jones_projection(2, 3, symbolic), jones_projection(1, 3, symbolic))
    assert composite_expectation(x, 2) == cond_expectation(cond_expectation(x))


def test_markov_relation(symbolic, rng):
    for n in (1, 2, 3):
        holds, difference = verify_markov_relation(random_element(n, symbolic, rng))
        assert holds
        assert difference.is_zero()


def test_inner_product_is_hermitian(index2, rng):
    x, y = random_element(3, index2, rng), random_element(3, index2, rng)
    assert inner_product(x, y) == inner_product(y, x)
    assert inner_product(tl_involution(x), tl_involution(y)) == inner_product(y, x)


def test_gram_matrix_n2_at_index_2(index2):
    report = gram_matrix(2, index2)
    assert report.rank == 2
    assert report.positive
    assert index2.eq(report.determinant, index2.convert(Fraction(1, 4)))
    assert report.labels[0].through_strands() == 2


@pytest.mark.parametrize("n, rank", [(1, 1), (2, 2), (3, 5), (4, 14)])
def test_generic_gram_is_nondegenerate(symbolic, n, rank):
    report = gram_matrix(n, symbolic)
    assert report.rank == rank
    assert report.positive


@pytest.mark.parametrize("m, ranks", [(4, [1, 2, 4, 8]), (5, [1, 2, 5, 13])])
def test_gram_rank_at_roots_of_unity(m, ranks):
    domain = make_domain(f"index=4cos2(pi/{m})")
    for n, expected in enumerate(ranks, start=1):
        report = gram_matrix(n, domain)
        assert report.rank == expected
        assert report.positive


def test_gram_budget(symbolic):
    with pytest.raises(BudgetExceededError):
        gram_matrix(4, symbolic, max_strands=3)


def test_quotient_bases(index2, floating):
    assert len(radical_quotient_basis(3, index2)) == 4
    basis, norms = orthogonal_quotient_basis(2, index2)
    assert len(basis) == 2
    assert inner_product(basis[0], basis[1]) == index2.zero
    with pytest.raises(FloatModeError):
        radical_quotient_basis(2, floating)
    float_basis, float_norms = orthogonal_quotient_basis(0, floating)
    assert len(float_basis) == 1
