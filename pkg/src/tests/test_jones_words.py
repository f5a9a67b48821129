import pytest

from src.algebra.errors import PreconditionError
from src.algebra.jones_words import (
    PWord,
    build_f,
    build_p,
    f_letters,
    reduce_run_pair,
    run_merge_cases,
    run_pair_identity,
    verify_f_projection,
    verify_p_exchange,
    verify_p_exchange_sweep,
    verify_run_merge_sweep,
)
from src.algebra.markov import markov_trace
from src.algebra.temperley_lieb import (
    JonesWord,
    identity,
    jones_projection,
    tl_multiply,
    word_to_element,
)


def test_p_word_degenerate_cases_are_identity(symbolic):
    assert build_p(0, 0, 3, 3, symbolic) == identity(3, symbolic)
    assert build_p(2, 4, 0, 6, symbolic) == identity(6, symbolic)


def test_p_word_small_values(symbolic):
    assert build_p(0, 1, 1, 2, symbolic) == jones_projection(1, 2, symbolic).scale(symbolic.lam)
    expected = word_to_element(JonesWord(symbolic.lam_pow(2), (2, 1)), 3, symbolic)
    assert build_p(0, 2, 1, 3, symbolic) == expected
    assert PWord(1, 2, 2).letters() == (3, 2, 4, 3)


def test_p_word_product_collapses(symbolic):
    lhs = tl_multiply(build_p(0, 1, 2, 4, symbolic), build_p(0, 3, 1, 4, symbolic))
    assert lhs == build_p(0, 1, 1, 4, symbolic)


def test_p_word_preconditions(symbolic):
    with pytest.raises(PreconditionError):
        build_p(0, 2, 2, 3, symbolic)
    with pytest.raises(PreconditionError):
        PWord(-1, 1, 1)


def test_f_projection_values(symbolic):
    assert build_f(0, 0, symbolic) == identity(0, symbolic)
    f1 = build_f(1, 2, symbolic)
    assert f1 == jones_projection(1, 2, symbolic)
    assert markov_trace(f1) == symbolic.lam_pow(-2)
    assert f_letters(2) == (2, 1, 3, 2)


@pytest.mark.parametrize("r", range(0, 4))
def test_f_projection_report(symbolic, r):
    report = verify_f_projection(r, symbolic)
    assert report.holds
    assert report.trace == symbolic.lam_pow(-2 * r)


def test_f_projection_at_root_of_unity(golden):
    assert verify_f_projection(2, golden, n=5).holds


def test_run_merge_examples(symbolic):
    merged = reduce_run_pair((2, 1), (3, 1), 4, symbolic)
    expected = word_to_element(JonesWord(symbolic.lam_pow(-2), (2, 1, 3)), 4, symbolic)
    assert merged == expected
    collapsed = reduce_run_pair((1, 1), (2, 1), 3, symbolic)
    assert collapsed == jones_projection(1, 3, symbolic).scale(symbolic.lam_pow(-2))


def test_run_merge_rejects_bad_indices(symbolic):
    with pytest.raises(PreconditionError):
        run_pair_identity((3, 1), (3, 1), 5, symbolic)
    with pytest.raises(PreconditionError):
        run_pair_identity((2, 1), (4, 1), 4, symbolic)


def test_run_merge_case_enumeration():
    cases = list(run_merge_cases(3))
    assert ((1, 1), (2, 1), 3) in cases
    assert all(p <= j <= r < s for (r, j), (s, p), _ in cases)
    assert len(cases) == 1 + (1 + 3)


def test_run_merge_sweep(symbolic, index2):
    assert all(c.equal for c in verify_run_merge_sweep(5, symbolic))
    assert all(c.equal for c in verify_run_merge_sweep(4, index2))


def test_p_exchange(symbolic):
    assert verify_p_exchange(1, 1, symbolic).equal
    assert all(c.equal for c in verify_p_exchange_sweep(3, symbolic))
    with pytest.raises(PreconditionError):
        verify_p_exchange(1, 2, symbolic)
