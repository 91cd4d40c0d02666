import numpy as np
import pytest

from feynquad import classes as C
from feynquad.errors import InvalidDimension, KTooLarge, OutOfRange, Unsupported, ZeroSample
from feynquad.lefschetz import ZERO, L, eval_at, exact_div

from . import oracles

# Brute-force values, computed once with tests/oracles.py and frozen:
#   feynman_quadric(3, K3 edges, d=2, q=3)   -> 426465   (531441 configurations)
#   configuration_space(2, 2, 3)             -> 27216    (59049 base points)
#   parallel_stratum(2, 3)                   -> 3888
Z3_D2_Q3 = 426465


def test_simple_quadric():
    assert C.simple_quadric_class(2) == L**3 + L**2 - L
    assert eval_at(C.simple_quadric_class(2), 2) == 10 == oracles.simple_quadric(2, 2)
    assert eval_at(C.simple_quadric_class(3), 3) == 261 == oracles.simple_quadric(3, 3)
    with pytest.raises(InvalidDimension):
        C.simple_quadric_class(1)


def test_projective_closure():
    assert C.projective_closure_class(2) == L**2 + (1 + L + L**2) * (1 + L)
    assert eval_at(C.projective_closure_class(2), 2) == 25 == oracles.projective_closure(2, 2)


@pytest.mark.parametrize("d", range(2, 6))
def test_closure_boundary_is_effective(d):
    boundary = C.projective_closure_class(d) - C.simple_quadric_class(d)
    assert all(c >= 0 for c in boundary.coefficients)


@pytest.mark.parametrize("d,q", [(2, 2), (2, 3)])
def test_closure_boundary_count(d, q):
    # boundary = points of the closure with z_0 = 0 or w_0 = 0
    pts = oracles.projective_points(q, d + 1)
    direct = sum(
        1
        for z in pts
        for w in pts
        if (z[0] == 0 or w[0] == 0) and oracles.dot(z[1:], w[1:], q) == 0
    )
    boundary = C.projective_closure_class(d) - C.simple_quadric_class(d)
    assert eval_at(boundary, q) == direct


def test_exceptional_divisor():
    assert C.exceptional_divisor_class(2) == L**2 + 2 * L + 1
    assert eval_at(C.exceptional_divisor_class(2), 2) == 9 == oracles.projective_quadric(4, 2)
    e3 = exact_div(L**5 + L**3 - L**2 - 1, L - 1)
    assert C.exceptional_divisor_class(3) == e3
    assert eval_at(e3, 2) == oracles.projective_quadric(6, 2)


def test_blowup():
    assert C.blowup_class(2) == L**3 + 2 * L**2 + L
    assert eval_at(C.blowup_class(2), 2) == 18
    for d in range(2, 6):
        assert C.blowup_class(d) - C.exceptional_divisor_class(d) == C.simple_quadric_class(d) - 1


def test_general_union():
    assert C.general_union_class(1, 4) == L**3
    assert C.general_union_class(2, 2) == 2 * L - 1
    assert eval_at(C.general_union_class(2, 2), 3) == 5
    assert C.general_union_class(0, 3) == ZERO
    with pytest.raises(KTooLarge):
        C.general_union_class(3, 2)


def test_edge_component():
    k2 = C.edge_component_class(2, 2)
    assert k2 == L**7 + L**6 - L**5
    assert eval_at(k2, 2) == 160 == oracles.feynman_quadric(2, [(1, 2)], 2, 2)
    assert eval_at(k2, 3) == 2673
    assert C.edge_component_class(3, 2) == L**11 + L**10 - L**9


def test_configuration_complement():
    assert C.configuration_complement_class(0, 3) == L**3
    assert C.configuration_complement_class(1, 2) == L**6 - L**4
    assert eval_at(C.configuration_complement_class(2, 2), 3) == 27216
    with pytest.raises(OutOfRange):
        C.configuration_complement_class(3, 2)
    with pytest.raises(Unsupported):
        C.configuration_complement_class(4, 5)


@pytest.mark.parametrize("n,d,q", [(1, 2, 2), (1, 2, 3), (2, 2, 2)])
def test_configuration_complement_against_enumeration(n, d, q):
    assert eval_at(C.configuration_complement_class(n, d), q) == oracles.configuration_space(n, d, q)


def test_forgetful_route():
    assert C.forgetful_route_class(1, 2) == L**6 - L**4
    assert C.forgetful_route_class(1, 2) == C.configuration_complement_class(1, 2)
    assert eval_at(C.forgetful_route_class(2, 2), 2) == 192
    assert eval_at(C.forgetful_route_class(2, 2), 3) == 23328
    with pytest.raises(Unsupported):
        C.forgetful_route_class(3, 2)


def test_forgetful_route_closed_form():
    for d in range(2, 7):
        expected = L ** (3 * d) * (L - 1) * (L**d - 1) * (L ** (d - 1) - 1)
        assert C.forgetful_route_class(2, d) == expected


@pytest.mark.parametrize("d", range(2, 7))
def test_reconciliation_identity(d):
    assert C.configuration_complement_class(2, d) == C.forgetful_route_class(
        2, d
    ) + C.parallel_stratum_class(d)


def test_parallel_stratum():
    assert eval_at(C.parallel_stratum_class(2), 2) == 0
    assert eval_at(C.parallel_stratum_class(2), 3) == 3888
    for d in range(2, 7):
        assert eval_at(C.parallel_stratum_class(d), 2) == 0
    assert eval_at(C.parallel_stratum_class(2), 2) == oracles.parallel_stratum(2, 2)


def test_parallel_stratum_enumeration_q3():
    assert oracles.parallel_stratum(2, 3) == 3888


def test_z_complete_paper():
    for d in (2, 3, 4):
        assert C.z_complete_paper(2, d) == C.edge_component_class(2, d)
    assert eval_at(C.z_complete_paper(3, 2), 2) == 3904
    with pytest.raises(OutOfRange):
        C.z_complete_paper(5, 3)
    with pytest.raises(OutOfRange):
        C.z_complete_paper(1, 3)


def test_z_complete_paper_matches_recursion_from_empty_graph():
    # one more recursion step from Z_1 = 0 must give Z_2
    for d in (2, 3):
        z1 = ZERO
        z2 = (
            z1 * L ** (2 * d)
            + (L ** (2 * d) - z1) * L**d
            + C.configuration_complement_class(1, d) * C.general_union_class(1, d)
        )
        assert z2 == C.edge_component_class(2, d)


def test_z_complete_corrected():
    z3 = C.z_complete_corrected(3, 2)
    assert eval_at(z3, 2) == 3904 == oracles.feynman_quadric(3, [(1, 2), (1, 3), (2, 3)], 2, 2)
    assert eval_at(z3, 3) == Z3_D2_Q3
    for d in (2, 3, 4):
        assert C.z_complete_corrected(2, d) == C.edge_component_class(2, d)
    with pytest.raises(Unsupported):
        C.z_complete_corrected(4, 3)
    with pytest.raises(OutOfRange):
        C.z_complete_corrected(4, 2)


@pytest.mark.parametrize("d", range(2, 7))
def test_candidates_differ_by_parallel_stratum(d):
    gap = C.z_complete_corrected(3, d) - C.z_complete_paper(3, d)
    assert gap == C.parallel_stratum_class(d) * L ** (d - 2)
    assert eval_at(C.z_complete_paper(3, d), 2) == eval_at(C.z_complete_corrected(3, d), 2)


def test_strata_n1_fibres():
    for d in (2, 3, 4):
        s = C.strata_decomposition(1, d)
        assert s.piece_A == ZERO
        assert s.piece_B == L ** (3 * d)
        assert s.piece_C_parallel == ZERO
        assert s.total_corrected == s.total_paper == C.edge_component_class(2, d)
        # fibre A^d over w = 0, A^(d-1) over the rest, times the A^(2d) of vertex 1
        lifted = L ** (2 * d) * (L**d + L ** (d - 1) * (L**d - 1))
        assert s.total_corrected == lifted
        assert s.piece_B == L ** (2 * d) * L**d
        assert s.piece_C_transverse == L ** (2 * d) * L ** (d - 1) * (L**d - 1)
    assert C.strata_decomposition(1, 2).piece_B == L**6


def test_strata_n2():
    s = C.strata_decomposition(2, 2)
    assert s.piece_C_parallel == C.parallel_stratum_class(2) * 2 * L
    assert s.total_corrected == C.z_complete_corrected(3, 2)
    assert s.total_paper == C.z_complete_paper(3, 2)
    with pytest.raises(Unsupported):
        C.strata_decomposition(3, 3)
    with pytest.raises(OutOfRange):
        C.strata_decomposition(3, 2)


@pytest.mark.parametrize("d", range(2, 5))
@pytest.mark.parametrize("n", [1, 2])
def test_scissor_additivity(n, d):
    s = C.strata_decomposition(n, d)
    assert s.piece_A + s.piece_B + s.piece_C_transverse + s.piece_C_parallel == s.total_corrected


@pytest.mark.parametrize("d", range(2, 5))
@pytest.mark.parametrize("n", range(0, 4))
def test_base_strata_fill_ambient(n, d):
    if n > d:
        pytest.skip("configuration space needs n <= d")
    z_n = ZERO if n < 2 else C.z_complete_corrected(n, d)
    pieces = z_n * L**d + n * (L ** (2 * d * n) - z_n) + C.configuration_complement_class(n, d)
    assert pieces == L ** (2 * d * n + d)


def test_propagator_examples():
    assert C.propagator_restriction_residual([np.array([1, 0])]) == 0.0
    assert C.propagator_restriction_residual([np.array([1j, 1])]) < 1e-15
    rng = np.random.default_rng(7)
    samples = rng.uniform(-1, 1, (100, 2)) + 1j * rng.uniform(-1, 1, (100, 2))
    assert C.propagator_restriction_residual(samples) < 1e-12
    with pytest.raises(ZeroSample):
        C.propagator_restriction_residual([np.zeros(3)])
