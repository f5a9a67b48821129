import pytest

from src.algebra.errors import PreconditionError, StrandMismatchError
from src.algebra.jones_words import build_p
from src.algebra.ocneanu import (
    ArrowAtLevel,
    adjointness_checks,
    arrow_inner_product,
    conjugate_arrow,
    conjugate_equation_checks,
    insert_R,
    insert_R_star,
    invariant_arrow_basis,
    planar_arrow,
    planar_pairings,
    quantum_multiplicity,
    tensor_arrows,
    tensor_associativity_checks,
)
from src.algebra.temperley_lieb import identity, jones_projection


def unit(level, domain):
    return ArrowAtLevel.unit(level, domain)


def test_tensor_of_units_is_p_word(symbolic):
    assert tensor_arrows(unit(1, symbolic), unit(1, symbolic)).value == jones_projection(1, 2, symbolic).scale(symbolic.lam)
    assert tensor_arrows(unit(2, symbolic), unit(1, symbolic)).value == build_p(0, 2, 1, 3, symbolic)


def test_tensor_with_scalar(symbolic):
    S = ArrowAtLevel(2, jones_projection(1, 2, symbolic))
    c = ArrowAtLevel.scalar(symbolic.lam, symbolic)
    assert tensor_arrows(S, c).value == S.value.scale(symbolic.lam)
    assert tensor_arrows(c, S).value == S.value.scale(symbolic.lam)


def test_insert_R_values(symbolic):
    lam = symbolic.lam
    one = ArrowAtLevel.scalar(1, symbolic)
    assert insert_R(0, 0, one).value == identity(2, symbolic).scale(lam)
    assert insert_R(1, 0, unit(1, symbolic)).value == build_p(0, 1, 2, 3, symbolic).scale(lam)
    assert insert_R(1, 1, unit(2, symbolic)).value == identity(4, symbolic).scale(lam)


def test_insert_R_star_values(symbolic):
    one = ArrowAtLevel.scalar(1, symbolic)
    twice = insert_R_star(0, 0, insert_R(0, 0, one))
    assert twice.level == 0
    assert twice.to_scalar() == symbolic.beta
    for r in (0, 1, 2):
        lowered = insert_R_star(r, r, unit(2 * r + 2, symbolic))
        assert lowered.value == identity(2 * r, symbolic).scale(symbolic.lam)


def test_insert_level_checks(symbolic):
    with pytest.raises(StrandMismatchError):
        insert_R(1, 1, unit(3, symbolic))
    with pytest.raises(StrandMismatchError):
        insert_R_star(0, 1, unit(1, symbolic))
    with pytest.raises(PreconditionError):
        insert_R(-1, 1, unit(0, symbolic))


@pytest.mark.parametrize("top", range(2, 6))
def test_conjugate_equations(symbolic, top):
    checks = conjugate_equation_checks(top, symbolic)
    assert checks
    assert all(c.equal for c in checks)


def test_conjugate_equations_at_root_of_unity(golden):
    assert all(c.equal for c in conjugate_equation_checks(4, golden))


@pytest.mark.parametrize("total", range(0, 3))
def test_insertions_are_adjoint(symbolic, total):
    assert all(c.equal for c in adjointness_checks(total, symbolic))


def test_tensor_associativity(symbolic):
    assert all(c.equal for c in tensor_associativity_checks(4, symbolic))


def test_conjugation_is_antiunitary(index2):
    S = ArrowAtLevel(3, jones_projection(1, 3, index2))
    T = tensor_arrows(unit(2, index2), unit(1, index2))
    assert arrow_inner_product(conjugate_arrow(S), conjugate_arrow(T)) == arrow_inner_product(T, S)
    assert conjugate_arrow(conjugate_arrow(T)) == T


def test_arrow_bases(index2, symbolic):
    assert invariant_arrow_basis(0, symbolic).dimension == 1
    assert invariant_arrow_basis(2, symbolic).dimension == 2
    assert invariant_arrow_basis(2, index2).dimension == 2
    assert invariant_arrow_basis(3, index2).dimension == 4


def test_planar_arrows(symbolic):
    assert planar_pairings(4) == [((0, 1), (2, 3)), ((0, 3), (1, 2))]
    assert planar_arrow(((0, 1),), symbolic) == insert_R(0, 0, ArrowAtLevel.scalar(1, symbolic))
    assert planar_arrow((), symbolic).to_scalar() == symbolic.one


@pytest.mark.parametrize("level", range(0, 4))
def test_quantum_multiplicity_equals_dimension(index2, level):
    report = quantum_multiplicity(level, index2)
    assert report.minimal
    assert index2.eq(report.m_squared, index2.convert(report.dimension ** 2))
