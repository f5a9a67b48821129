from fractions import Fraction

import pytest

from src.algebra.errors import (
    DomainMismatchError,
    DomainSpecError,
    PreconditionError,
    ScalarDivisionError,
    ScalarParseError,
)
from src.algebra.markov import gram_schmidt
from src.algebra.scalars import make_domain, scalar_arith
from src.algebra.temperley_lieb import identity


def test_perfect_square_index_is_rational(index4):
    assert index4.is_exact
    assert index4.format(index4.lam) == "2"
    assert index4.format(index4.lam_pow(-2)) == "1/4"


def test_golden_field_reduces_modulo_minimal_polynomial(golden):
    lam = golden.lam
    assert golden.eq(lam * lam, lam + golden.one)
    assert golden.numeric(lam).real == pytest.approx(1.6180339887498949)


def test_quadratic_index(index2):
    assert index2.eq(index2.beta, index2.convert(2))
    assert not index2.eq(index2.lam, index2.convert(1))


def test_root_of_unity_descriptor_for_m4():
    d = make_domain("index=4cos2(pi/4)")
    assert d.eq(d.beta, d.convert(2))
    assert d.descriptor == "index=4cos2(pi/4)"


def test_symbolic_powers_and_formatting(symbolic):
    lam = symbolic.lam
    assert symbolic.eq(lam * lam, symbolic.beta)
    assert symbolic.is_zero(lam - lam)
    assert symbolic.format(symbolic.lam_pow(-2)) == "λ^-2"


@pytest.mark.parametrize("text", ["2*λ + 1", "λ^-3 - 1/2", "lambda^2", "(λ + 1)/(λ - 1)"])
def test_parse_format_round_trip(symbolic, text):
    x = symbolic.parse(text)
    assert symbolic.parse(symbolic.format(x)) == x


def test_parse_rejects_unknown_symbols(symbolic):
    with pytest.raises(ScalarParseError):
        symbolic.parse("λ + q")


@pytest.mark.parametrize("spec", ["index=4cos2(pi/3)", "index=1", "index=1/2", "bogus", "float:index=0.5"])
def test_bad_descriptors(spec):
    with pytest.raises(DomainSpecError):
        make_domain(spec)


def test_float_domain_tolerance(floating):
    assert not floating.is_exact
    assert floating.eps == 1e-10
    assert floating.eq(floating.beta, 2.5)
    assert floating.is_zero(1e-12)
    assert not floating.is_zero(1e-6)


def test_float_tolerance_scales_with_operands(floating):
    big = 1e12
    assert floating.eq(big, big + 1e-3)
    assert not floating.eq(1e-3, 0.0)
    assert floating.magnitude([1.0, -3e5, 2j]) == 3e5
    x = identity(2, floating).scale(big)
    y = identity(2, floating).scale(big + 1e-3)
    assert (x - y).is_zero()
    assert x == y
    assert not (x - identity(2, floating).scale(big + 1e3)).is_zero()


def test_gram_schmidt_tolerance_is_relative(floating):
    s = 1e9
    with pytest.raises(PreconditionError):
        gram_schmidt([[s, 3 * s], [3 * s, 9 * s + 1e-4]], floating)
    _, norms = gram_schmidt([[s, 1e-4], [1e-4, s]], floating)
    assert norms == pytest.approx([s, s])


def test_division_by_zero(symbolic, index2):
    with pytest.raises(ScalarDivisionError):
        symbolic.div(symbolic.one, symbolic.zero)
    with pytest.raises(ScalarDivisionError):
        index2.inv(index2.zero)


def test_conversions(index2):
    assert index2.convert(Fraction(1, 4)) * index2.convert(4) == index2.one
    with pytest.raises(DomainMismatchError):
        index2.convert(0.25)


def test_scalar_arith_checks_membership(symbolic):
    assert symbolic.eq(scalar_arith(symbolic, symbolic.lam, symbolic.lam, "×"), symbolic.beta)
    with pytest.raises(DomainMismatchError):
        scalar_arith(symbolic, symbolic.lam, 1.5, "+")


def test_sign_decisions(symbolic, golden):
    assert symbolic.sign(symbolic.lam - symbolic.convert(2)) == 1
    assert symbolic.sign(symbolic.zero) == 0
    assert golden.sign(golden.lam - golden.convert(Fraction(3, 2))) == 1
    assert golden.sign(golden.lam - golden.convert(2)) == -1


def test_exact_rank(symbolic):
    lam = symbolic.lam
    assert symbolic.rank([[symbolic.one, lam], [lam, lam * lam]]) == 1
    assert symbolic.rank([[symbolic.one, lam], [lam, symbolic.one]]) == 2
