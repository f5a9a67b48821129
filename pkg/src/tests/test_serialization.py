import pytest
from pydantic import ValidationError

from src.algebra.aof import identity_F
from src.algebra.diagrams import cup_cap, identity_diagram
from src.algebra.errors import PreconditionError
from src.algebra.markov import gram_matrix
from src.algebra.spectral import SpectralAlgebra
from src.algebra.temperley_lieb import jones_projection
from src.utils.serialization import (
    WordTerm,
    element_to_model,
    gram_report_to_model,
    matrix_to_json,
    parse_element,
    parse_scalar,
    parse_spectral,
    spectral_to_model,
)


def test_parse_element_from_words(symbolic):
    x = parse_element({"n": 3, "terms": [{"word": [1, 2, 1]}]}, symbolic)
    assert x == jones_projection(1, 3, symbolic).scale(symbolic.lam_pow(-2))
    model = element_to_model(x)
    assert model.n == 3
    (term,) = model.terms
    assert term.coeff == "λ^-2"
    assert term.word == [1]
    assert term.diagram == list(cup_cap(1, 3).pairing)


def test_parse_element_from_json_text(symbolic):
    text = '{"n": 2, "terms": [{"coeff": 2, "word": []}, {"coeff": "λ", "diagram": [1, 0, 3, 2]}]}'
    x = parse_element(text, symbolic)
    assert x.coefficient(identity_diagram(2)) == symbolic.convert(2)
    assert x.coefficient(cup_cap(1, 2)) == symbolic.lam


def test_word_term_needs_content():
    with pytest.raises(ValidationError):
        WordTerm(coeff="1")


def test_scalars(index2):
    assert parse_scalar(3, index2) == index2.convert(3)
    assert parse_scalar("1/2", index2) == index2.parse("1/2")


def test_parse_spectral_uses_one_based_indices(index2):
    algebra = SpectralAlgebra(identity_F(2, index2), max_level=2)
    data = {"terms": [{"level": 1, "tl": {"n": 1, "terms": [{"word": []}]}, "vec": [{"idx": [2]}]}]}
    a = parse_spectral(data, algebra)
    assert a == algebra.basis_generator(identity_diagram(1), (1,))
    model = spectral_to_model(a)
    assert model.terms[0].vec[0].idx == [2]


def test_parse_spectral_errors(index2):
    algebra = SpectralAlgebra(identity_F(2, index2), max_level=2)
    zero_based = {"terms": [{"level": 1, "tl": {"n": 1, "terms": [{"word": []}]}, "vec": [{"idx": [0]}]}]}
    with pytest.raises(PreconditionError):
        parse_spectral(zero_based, algebra)
    mismatched = {"terms": [{"level": 2, "tl": {"n": 1, "terms": [{"word": []}]}, "vec": []}]}
    with pytest.raises(ValidationError):
        parse_spectral(mismatched, algebra)


def test_gram_report_model(index2):
    model = gram_report_to_model(gram_matrix(2, index2))
    assert model.determinant == "1/4"
    assert model.rank == 2
    assert model.dimension == 2
    assert len(model.matrix) == 2
    assert matrix_to_json(gram_matrix(1, index2).matrix, index2) == [["1"]]
