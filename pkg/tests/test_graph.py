import pytest

from feynquad.errors import Disconnected
from feynquad.graph import (
    FeynmanGraph,
    complete,
    graph_polynomial,
    parse_graph,
    remove_vertex,
    spanning_trees,
    star,
)

from .oracles import kirchhoff

PATH3 = FeynmanGraph(3, ((1, 2), (2, 3)))


def test_complete():
    assert complete(3).edges == ((1, 2), (1, 3), (2, 3))
    assert complete(1).edges == ()
    assert complete(5).edge_count == 10


def test_construction_checks():
    with pytest.raises(Disconnected):
        FeynmanGraph(3, ((1, 2),))
    with pytest.raises(ValueError):
        FeynmanGraph(2, ((1, 1),))
    with pytest.raises(ValueError):
        FeynmanGraph(2, ((1, 3),))


def test_star():
    k5 = complete(5)
    s = star(k5, 1)
    assert len(s) == 4
    assert all(1 in k5.edges[e] for e in s)
    assert star(complete(2), 1) == {0}
    assert star(PATH3, 2) == {0, 1}


def test_remove_vertex():
    assert remove_vertex(complete(5), 1) == complete(4)
    assert remove_vertex(complete(2), 2) == complete(1)
    with pytest.raises(Disconnected):
        remove_vertex(PATH3, 2)


@pytest.mark.parametrize("n", range(2, 8))
def test_remove_any_vertex_of_complete(n):
    for v in range(1, n + 1):
        assert remove_vertex(complete(n), v) == complete(n - 1)


def test_remove_vertex_relabels_in_order():
    g = FeynmanGraph(4, ((1, 2), (2, 3), (3, 4), (1, 4)))
    assert remove_vertex(g, 2) == FeynmanGraph(3, ((2, 3), (1, 3)))


def test_spanning_tree_examples():
    assert len(spanning_trees(complete(3))) == 3
    assert spanning_trees(PATH3) == [frozenset({0, 1})]
    assert len(spanning_trees(complete(4))) == 16
    assert spanning_trees(complete(1)) == [frozenset()]


@pytest.mark.parametrize("n", range(1, 7))
def test_cayley(n):
    g = complete(n)
    trees = spanning_trees(g)
    assert len(trees) == (n ** (n - 2) if n >= 2 else 1)
    assert len(trees) == kirchhoff(n, g.edges)
    assert len(set(trees)) == len(trees)


def test_spanning_trees_match_kirchhoff_on_multigraph():
    g = FeynmanGraph(3, ((1, 2), (1, 2), (2, 3), (1, 3)))
    assert len(spanning_trees(g)) == kirchhoff(3, g.edges) == 5


def test_graph_polynomial_examples():
    assert graph_polynomial(complete(3)) == {frozenset({0}): 1, frozenset({1}): 1, frozenset({2}): 1}
    assert graph_polynomial(complete(2)) == {frozenset(): 1}
    double = FeynmanGraph(2, ((1, 2), (1, 2)))
    assert graph_polynomial(double) == {frozenset({0}): 1, frozenset({1}): 1}


@pytest.mark.parametrize("n", range(2, 6))
def test_monomial_degree_is_loop_number(n):
    g = complete(n)
    for mono in graph_polynomial(g):
        assert len(mono) == g.loop_number


def test_parse_and_json():
    assert parse_graph("complete:4") == complete(4)
    assert parse_graph("1-2,1-3,2-3") == complete(3)
    g = parse_graph("1-2, 2-3")
    assert g == PATH3
    assert FeynmanGraph.from_json(g.to_json()) == g
    assert g.to_json() == {"vertices": 3, "edges": [[1, 2], [2, 3]]}
    with pytest.raises(ValueError):
        parse_graph("1_2")
