import numpy as np
import pytest

from src.algebra.aof import (
    ConcreteOperator,
    antidiagonal_F,
    as_array,
    build_R_vector,
    canonical_F,
    concrete_e,
    concrete_representation,
    conjugate_equation,
    identity_F,
    invariant_vectors,
    j_map,
    mu_parameter,
    parse_F,
    validate_F,
    vdot,
    verify_concrete_naturality,
    verify_planar_isometry,
    verify_quasitensor,
    verify_sandwich,
)
from src.algebra.errors import FloatModeError, PreconditionError
from src.algebra.scalars import make_domain
from src.algebra.temperley_lieb import random_element, tl_involution, tl_multiply


def test_identity_F(index2):
    F = identity_F(2, index2)
    assert F.sigma == 1
    assert index2.eq(F.d, index2.convert(2))
    assert F.subfactor_ok


def test_antidiagonal_F(symbolic):
    F = parse_F("t=2", symbolic)
    assert F.sigma == 1
    assert symbolic.eq(F.d, symbolic.parse("17/4"))
    assert not F.subfactor_ok


def test_pseudoreal_F_rejected_in_subfactor_mode(symbolic):
    F = parse_F("[[0, 1], [-1, 0]]", symbolic)
    assert F.sigma == -1
    with pytest.raises(PreconditionError):
        F.require_subfactor()
    with pytest.raises(PreconditionError):
        validate_F([[0, 1], [-1, 0]], symbolic, subfactor=True)


@pytest.mark.parametrize("rows", [[[1, 1], [1, 1]], [[1, 0], [0, 2]], [[1]]])
def test_invalid_F(symbolic, rows):
    with pytest.raises(PreconditionError):
        validate_F(as_array(rows, symbolic), symbolic)


def test_unreadable_F(symbolic):
    with pytest.raises(PreconditionError):
        parse_F("not a matrix", symbolic)


def test_canonical_F(floating, index2):
    F = canonical_F(floating)
    assert F.subfactor_ok
    assert mu_parameter(F) == pytest.approx(-0.5)
    assert abs(mu_parameter(F) + 1 / mu_parameter(F)) == pytest.approx(2.5)
    assert canonical_F(make_domain("index=2")).label == "t=1"
    with pytest.raises(FloatModeError):
        canonical_F(make_domain("index=3"))


def test_R_vector_for_identity(index2):
    F = identity_F(2, index2)
    v = build_R_vector(F).vector()
    assert [index2.format(x) for x in v] == ["1", "0", "0", "1"]
    assert index2.eq(vdot(v, v, index2), index2.convert(2))


def test_R_vector_for_antidiagonal(symbolic):
    F = antidiagonal_F(2, symbolic)
    v = build_R_vector(F).vector()
    assert [symbolic.format(x) for x in v] == ["0", "1/2", "2", "0"]
    assert symbolic.eq(vdot(v, v, symbolic), F.d)


@pytest.mark.parametrize("text", ["I2", "I3", "t=3", "[[0, 1], [-1, 0]]"])
def test_conjugate_equation_is_sigma(symbolic, text):
    F = parse_F(text, symbolic)
    sigma_one = ConcreteOperator.identity(1, F).scale(F.sigma)
    assert conjugate_equation(F).equals(sigma_one)


def test_j_squares_to_sigma_power(symbolic):
    F = parse_F("[[0, 1], [-1, 0]]", symbolic)
    xi = as_array([1, 2, 3, 4, 5, 6, 7, 8], symbolic)
    back = j_map(j_map(xi, 3, F), 3, F)
    assert all(symbolic.eq(a, -b) for a, b in zip(back, xi))


def test_invariant_dimensions(index2, floating):
    F = identity_F(2, index2)
    assert invariant_vectors(0, F).dimension == 1
    assert invariant_vectors(1, F).dimension == 0
    assert invariant_vectors(2, F).dimension == 1
    assert invariant_vectors(3, F).dimension == 0
    assert invariant_vectors(4, F).dimension == 2
    generic = antidiagonal_F(0.7, floating)
    assert invariant_vectors(4, generic).dimension == 2


def test_concrete_TL_relations(index4):
    F = identity_F(2, index4)
    assert F.loop_matches
    e1, e2 = concrete_e(1, 3, F), concrete_e(2, 3, F)
    assert (e1 @ e1).equals(e1)
    assert (e1 @ e2 @ e1).equals(e1.scale(index4.inv(index4.convert(4))))
    assert (e1 @ e2 @ e1).equals(e1.scale(index4.lam_pow(-2)))
    assert e1.adjoint().equals(e1)
    with pytest.raises(PreconditionError):
        concrete_e(3, 3, F)


def test_concrete_representation_is_a_star_homomorphism(index4, rng):
    F = identity_F(2, index4)
    for _ in range(3):
        x, y = random_element(3, index4, rng), random_element(3, index4, rng)
        rx, ry = concrete_representation(x, F), concrete_representation(y, F)
        assert concrete_representation(tl_multiply(x, y), F).equals(rx @ ry)
        assert concrete_representation(tl_involution(x), F).equals(rx.adjoint())


def test_concrete_representation_needs_loop_match(index2, rng):
    F = identity_F(2, index2)
    assert F.subfactor_ok and not F.loop_matches
    with pytest.raises(PreconditionError):
        concrete_representation(random_element(2, index2, rng), F)


def test_planar_isometry(index2):
    F = identity_F(2, index2)
    for r in (2, 4):
        assert all(c.equal for c in verify_planar_isometry(r, F))


@pytest.mark.parametrize("make_F", [lambda D: identity_F(2, D), canonical_F])
def test_concrete_naturality(index2, make_F):
    checks = verify_concrete_naturality(4, make_F(index2))
    assert len(checks) == 14
    assert all(c.equal for c in checks), [c.case for c in checks if not c.equal]


def test_concrete_naturality_detects_perturbed_F(index2):
    F = antidiagonal_F(2, index2)
    assert F.sigma == 1 and not F.subfactor_ok
    failing = [c.case for c in verify_concrete_naturality(2, F) if not c.equal]
    assert "concrete R at 0 r=0 ()→((0, 1),)" in failing
    assert "concrete R* at 0 r=2 ((0, 1),)→()" in failing


def test_quasitensor_axioms(symbolic, index2):
    assert all(c.equal for c in verify_quasitensor(2, symbolic))
    assert all(c.equal for c in verify_quasitensor(2, index2, identity_F(2, index2)))


def test_dimension_sandwich(index2):
    rows = verify_sandwich(2, identity_F(2, index2))
    assert [row.level for row in rows] == [0, 1, 2]
    assert all(row.holds for row in rows)


def test_float_operators_match_exact(floating):
    F = antidiagonal_F(0.7, floating)
    R = build_R_vector(F)
    norm = vdot(R.vector(), R.vector(), floating)
    assert np.isclose(complex(norm).real, 0.49 + 1 / 0.49)
