import math

import numpy as np
import pytest

from src.algebra.errors import PreconditionError
from src.algebra.graphs import (
    MIN_GROWTH_LEVELS,
    PrincipalGraph,
    a_series,
    a_series_for_lambda,
    bratteli_export,
    bratteli_graph,
    dims_table,
    embedability_check,
    graph_from_json,
    graph_from_name,
    graph_to_json,
    growth_rate,
    index_of,
    path_dims,
)


def test_A_series_dimensions():
    assert path_dims(a_series(4), 5).values == [1, 1, 2, 5, 13, 34]
    assert path_dims(a_series(3), 4).values == [1, 1, 2, 4, 8]
    assert path_dims(a_series(2), 6).values == [1] * 7


def test_dims_match_root_of_unity_gram_ranks():
    # rank of the Gram matrix of TL_n at λ = 2cos(π/5), n = 1..4
    assert path_dims(a_series_for_lambda(5), 4).values[1:] == [1, 2, 5, 13]


def test_index_of_A_series():
    assert index_of(a_series(3)) == pytest.approx(2.0)
    assert index_of(a_series(4)) == pytest.approx(4 * math.cos(math.pi / 5) ** 2)
    assert path_dims(a_series(4), 3).bound_holds()


def test_growth_rate():
    assert growth_rate(path_dims(a_series(3), 4)).estimate == pytest.approx(2.0)
    assert growth_rate(path_dims(a_series(2), 6)).estimate == pytest.approx(1.0)
    report = growth_rate(path_dims(a_series(4), 32))
    assert report.estimate == pytest.approx(4 * math.cos(math.pi / 5) ** 2, rel=0.1)
    assert list(report.table.columns) == ["r", "d_r", "root", "ratio"]
    assert len(report.table) == 32


def test_growth_rate_needs_enough_levels():
    with pytest.raises(PreconditionError):
        growth_rate(path_dims(a_series(4), MIN_GROWTH_LEVELS - 1))


def test_embedability():
    dims = path_dims(a_series(4), 6)
    assert embedability_check(dims, 1).first_violation == 2
    report = embedability_check(dims, 2)
    assert report.first_violation == 5
    assert report.obstructed
    assert not embedability_check(path_dims(a_series(4), 4), 2).obstructed
    with pytest.raises(PreconditionError):
        embedability_check(dims, 0)


def test_bratteli_floors():
    diagram = bratteli_graph(a_series(3), 2)
    floors = [sorted(v for (k, v) in diagram.nodes if k == level) for level in range(3)]
    assert floors == [[0], [1], [0, 2]]
    assert diagram.nodes[(2, 0)]["count"] == 1
    dot = bratteli_export(a_series(3), 2)
    assert dot.startswith('digraph "A3"')
    assert dot.count("rank=same") == 3
    assert len(bratteli_graph(a_series(3), 0).nodes) == 1


@pytest.mark.parametrize(
    "adjacency, star",
    [
        ([[0, 1, 0], [1, 0, 1]], 0),
        ([[0, -1], [-1, 0]], 0),
        ([[0, 1], [0, 0]], 0),
        ([[0, 1, 0], [1, 0, 0], [0, 0, 0]], 0),
        ([[0, 1, 1], [1, 0, 1], [1, 1, 0]], 0),
        ([[0, 1], [1, 0]], 5),
    ],
)
def test_invalid_graphs(adjacency, star):
    with pytest.raises(PreconditionError):
        PrincipalGraph("bad", np.array(adjacency, dtype=object), star)


def test_graph_lookup_and_json():
    assert graph_from_name("A_5") == a_series(5)
    with pytest.raises(PreconditionError):
        graph_from_name("E6")
    with pytest.raises(PreconditionError):
        a_series(1)
    g = graph_from_json('{"adjacency": [[0, 1], [1, 0]], "name": "pair"}')
    assert g.name == "pair"
    assert graph_from_json(graph_to_json(a_series(4))) == a_series(4)
    with pytest.raises(PreconditionError):
        graph_from_json("{not json")
    with pytest.raises(PreconditionError):
        graph_from_json({"star": 0})


def test_dims_table():
    table = dims_table(a_series(4), 5)
    assert list(table.columns) == ["r", "d_r", "beta^r", "bound_ok"]
    assert table["d_r"].tolist() == [1, 1, 2, 5, 13, 34]
    assert table["bound_ok"].all()
