import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from feynquad import count as K
from feynquad.errors import BudgetExceeded
from feynquad.graph import FeynmanGraph, complete

from . import oracles

K3 = complete(3)
PATH3 = FeynmanGraph(3, ((1, 2), (2, 3)))
BACKENDS = ["numpy", "numba"]


def test_brute_examples():
    assert K.brute_force_count(complete(2), 2, 2).count == 160
    assert K.brute_force_count(K3, 2, 2).count == 3904
    assert K.brute_force_count(complete(1), 2, 3).count == 0


@pytest.mark.parametrize("backend", BACKENDS)
@pytest.mark.parametrize(
    "g,d,q",
    [(complete(2), 2, 2), (complete(2), 2, 3), (K3, 2, 2), (PATH3, 2, 2), (K3, 1, 5)],
)
def test_counters_match_oracle(g, d, q, backend):
    ref = oracles.feynman_quadric(g.vertex_count, g.edges, d, q)
    assert K.brute_force_count(g, d, q, backend=backend).count == ref
    assert K.fibrewise_count(g, d, q, backend=backend).count == ref


@pytest.mark.parametrize("backend", BACKENDS)
def test_fibrewise_k3_q3(backend):
    assert K.fibrewise_count(K3, 2, 3, backend=backend).count == 426465


def test_translation_reduction():
    for g, d, q in [(K3, 2, 2), (complete(2), 2, 3), (PATH3, 1, 3)]:
        full = K.brute_force_count(g, d, q).count
        pinned = K.brute_force_count(g, d, q, pin_first_w=True).count
        assert full == q**d * pinned


@pytest.mark.parametrize("threads", [1, 2, 3, 8])
def test_thread_count_does_not_change_result(threads):
    assert K.fibrewise_count(K3, 2, 3, threads=threads).count == 426465
    assert K.brute_force_count(K3, 2, 2, threads=threads).count == 3904


def test_backends_agree_on_k4():
    g = complete(4)
    a = K.fibrewise_count(g, 2, 3, backend="numpy").count
    b = K.fibrewise_count(g, 2, 3, backend="numba").count
    assert a == b
    assert a == K.brute_force_count(g, 2, 3, pin_first_w=True).count * 9


def test_signature_flip():
    for signs in ([1, -1], [-1, 1], [-1, -1]):
        got = K.signature_flip_count(K3, 2, 3, signs)
        assert got == oracles.feynman_quadric(3, K3.edges, 2, 3, signs)
    # flipping a coordinate is z_k -> -z_k, an isomorphism
    assert K.signature_flip_count(K3, 2, 3, [1, -1]) == 426465
    with pytest.raises(ValueError):
        K.signature_flip_count(K3, 2, 3, [1, 0])


def test_report_json():
    rep = K.fibrewise_count(K3, 2, 3)
    obj = json.loads(json.dumps(rep.to_json()))
    assert obj["count"] == "426465"
    assert obj["algorithm"] == K.FIBREWISE


def test_budgets():
    with pytest.raises(BudgetExceeded):
        K.brute_force_count(K3, 2, 5, budget=1000)
    with pytest.raises(BudgetExceeded):
        K.fibrewise_count(complete(4), 3, 47, budget=10**6)
    with pytest.raises(ValueError):
        K.brute_force_count(K3, 2, 4)


def test_quadric_counts():
    assert K.count_simple_quadric(2, 2) == 10
    assert K.count_projective_closure(2, 2) == 25
    assert K.count_projective_quadric(4, 2) == 9
    for d, q in [(2, 3), (3, 2), (2, 5)]:
        assert K.count_simple_quadric(d, q) == oracles.simple_quadric(d, q)
        assert K.count_projective_closure(d, q) == oracles.projective_closure(d, q)
    assert K.count_projective_quadric(6, 3) == oracles.projective_quadric(6, 3)


def test_singular_points():
    assert K.singular_point_count("simple", 2, 3) == 1
    assert K.singular_point_count(2, 2, 2) == 16
    assert K.singular_point_count(2, 2, 3) == 3**4
    with pytest.raises(ValueError):
        K.singular_point_count(1, 2, 2)


def test_configuration_space():
    assert K.count_configuration_space(1, 2, 2) == 48
    assert K.count_configuration_space(2, 2, 3) == 27216
    assert K.count_configuration_space(0, 2, 5) == 25
    assert K.count_configuration_space(2, 2, 2) == oracles.configuration_space(2, 2, 2)


def test_survey_q3():
    s = K.fibre_survey(2, 2, 3)
    assert (s.case1_count, s.case2_count) == (24057, 7776)
    assert s.case3_general == 23328
    assert s.case3_violating == s.case3_parallel == 3888
    assert s.case3_almost_general == 0
    assert s.tally_sum == s.base_cardinality == 3**10
    assert s.fibre_point_total == s.expected_total == 426465
    assert s.consistent
    assert json.loads(json.dumps(s.to_json()))["case3_violating"] == 3888


def test_survey_q2_has_no_violations():
    s = K.fibre_survey(2, 2, 2)
    assert s.case3_violating == 0
    assert s.consistent


def test_survey_n1():
    s = K.fibre_survey(1, 2, 3)
    assert s.case1_count == 0
    assert s.case3_violating == 0
    assert s.consistent


def test_graph_hypersurface():
    assert K.count_graph_hypersurface(K3, 2) == 4
    assert K.count_graph_hypersurface(complete(2), 5) == 0
    # Psi of a tree is the constant 1
    assert K.count_graph_hypersurface(PATH3, 3) == 0


def test_graph_hypersurface_k4_matches_enumeration():
    from feynquad.graph import spanning_trees

    g = complete(4)
    trees = spanning_trees(g)
    all_edges = frozenset(range(g.edge_count))
    zeros = 0
    for alpha in oracles.vectors(2, g.edge_count):
        val = 0
        for t in trees:
            term = 1
            for e in all_edges - t:
                term *= alpha[e]
            val += term
        zeros += val % 2 == 0
    assert K.count_graph_hypersurface(g, 2) == zeros


K4_EDGES = complete(4).edges


@st.composite
def edge_chains(draw):
    """A connected spanning subgraph of K4 and an extra edge not in it."""
    spanning = [(1, 2), (2, 3), (3, 4)]
    others = [e for e in K4_EDGES if e not in spanning]
    chosen = draw(st.lists(st.sampled_from(others), unique=True, max_size=len(others) - 1))
    extra = draw(st.sampled_from([e for e in others if e not in chosen]))
    return FeynmanGraph(4, tuple(spanning + chosen)), extra


@given(edge_chains(), st.sampled_from([2, 3]))
@settings(max_examples=15, deadline=None)
def test_adding_an_edge_never_decreases_the_count(pair, q):
    g, extra = pair
    bigger = FeynmanGraph(4, g.edges + (extra,))
    assert K.fibrewise_count(bigger, 1, q).count >= K.fibrewise_count(g, 1, q).count


@given(st.permutations([1, 2, 3, 4]))
@settings(max_examples=10, deadline=None)
def test_relabeling_preserves_count(perm):
    g = FeynmanGraph(4, ((1, 2), (2, 3), (3, 4), (1, 3)))
    relabeled = FeynmanGraph(4, tuple((perm[i - 1], perm[j - 1]) for i, j in g.edges))
    assert K.fibrewise_count(relabeled, 1, 5).count == K.fibrewise_count(g, 1, 5).count
