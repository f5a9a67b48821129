import pytest

from src.algebra.diagrams import (
    PlanarDiagram,
    catalan,
    close_last_strand,
    cup_cap,
    diagram_compose,
    embed_right,
    enumerate_diagrams,
    flip,
    identity_diagram,
    is_planar_matching,
    trace_closure_loops,
)
from src.algebra.errors import LetterRangeError, PreconditionError, StrandMismatchError


@pytest.mark.parametrize("n", range(0, 8))
def test_enumeration_counts_are_catalan(n):
    diagrams = enumerate_diagrams(n)
    assert len(diagrams) == catalan(n)
    assert len(set(diagrams)) == len(diagrams)


def test_cup_cap_squares_to_one_loop():
    u = cup_cap(1, 2)
    assert u.pairing == (1, 0, 3, 2)
    assert diagram_compose(u, u) == (u, 1)


def test_identity_is_neutral():
    for d in enumerate_diagrams(3):
        assert diagram_compose(identity_diagram(3), d) == (d, 0)
        assert diagram_compose(d, identity_diagram(3)) == (d, 0)


def test_adjacent_cup_caps_close_no_loop():
    d, loops = diagram_compose(cup_cap(1, 3), cup_cap(2, 3))
    assert loops == 0
    assert d.through_strands() == 1


def test_crossing_pairing_rejected():
    assert not is_planar_matching((3, 2, 1, 0))
    with pytest.raises(PreconditionError):
        PlanarDiagram(2, (3, 2, 1, 0))


def test_letter_range():
    with pytest.raises(LetterRangeError):
        cup_cap(0, 3)
    with pytest.raises(LetterRangeError):
        cup_cap(3, 3)


def test_compose_strand_mismatch():
    with pytest.raises(StrandMismatchError):
        diagram_compose(identity_diagram(2), identity_diagram(3))


def test_flip_is_involutive():
    for d in enumerate_diagrams(4):
        assert flip(flip(d)) == d
    assert flip(cup_cap(2, 4)) == cup_cap(2, 4)


def test_closures():
    assert trace_closure_loops(identity_diagram(3)) == 3
    assert trace_closure_loops(cup_cap(1, 3)) == 2
    assert close_last_strand(identity_diagram(3)) == (identity_diagram(2), 1)
    assert close_last_strand(cup_cap(2, 3)) == (identity_diagram(2), 0)


def test_embed_right_adds_straight_strands():
    assert embed_right(cup_cap(1, 2), 4) == cup_cap(1, 4)
    with pytest.raises(PreconditionError):
        embed_right(identity_diagram(3), 2)
