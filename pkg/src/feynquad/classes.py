"""Closed-form classes in Z[L] for the simple quadric and the complete-graph quadrics.

Notation used below: ``Z_n`` is the class of the Feynman quadric of the
complete graph on ``n`` vertices in ``(A^d x A^d)^n``; ``C(n)`` is the class
of the configuration space that parameterizes the star arrangements when a
vertex is added to that graph; ``U_k`` is the union of ``k`` hyperplanes in
general position in ``A^d``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidDimension, KTooLarge, NotDivisible, OutOfRange, Unsupported, ZeroSample
from .lefschetz import L, ZERO, LClass, exact_div, projective_class

__all__ = [
    "simple_quadric_class",
    "projective_closure_class",
    "exceptional_divisor_class",
    "blowup_class",
    "general_union_class",
    "edge_component_class",
    "configuration_complement_class",
    "forgetful_route_class",
    "parallel_stratum_class",
    "z_complete_paper",
    "z_complete_corrected",
    "StrataDecomposition",
    "strata_decomposition",
    "propagator_restriction_residual",
]


def _check_d(d: int) -> None:
    if d < 2:
        raise InvalidDimension(f"d must be at least 2, got {d}")


def simple_quadric_class(d: int) -> LClass:
    """Class of ``{z . w = 0}`` in ``A^d x A^d``: ``L^(2d-1) + L^d - L^(d-1)``."""
    _check_d(d)
    return L ** (2 * d - 1) + L**d - L ** (d - 1)


def projective_closure_class(d: int) -> LClass:
    _check_d(d)
    return L**d + projective_class(d) * projective_class(d - 1)


def exceptional_divisor_class(d: int) -> LClass:
    """Class of ``{u . v = 0}`` in ``P^(2d-1)``, i.e. ``[Q minus origin] / (L - 1)``."""
    _check_d(d)
    try:
        return exact_div(simple_quadric_class(d) - 1, L - 1)
    except NotDivisible as exc:  # pragma: no cover - guarded by tests
        raise AssertionError(f"smooth part not divisible by L-1 at d={d}") from exc


def blowup_class(d: int) -> LClass:
    return simple_quadric_class(d) - 1 + exceptional_divisor_class(d)


def general_union_class(k: int, d: int) -> LClass:
    """``U_k = sum_{j=1..k} (-1)^(j+1) C(k,j) L^(d-j)``."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k > d:
        raise KTooLarge(f"k={k} hyperplanes cannot be in general position in A^{d}")
    out = ZERO
    for j in range(1, k + 1):
        out = out + (-1) ** (j + 1) * math.comb(k, j) * L ** (d - j)
    return out


def edge_component_class(n: int, d: int) -> LClass:
    """One edge quadric inside ``(A^d x A^d)^n``."""
    _check_d(d)
    if n < 2:
        raise InvalidDimension("an edge component needs n >= 2 vertices")
    return simple_quadric_class(d) * L ** (2 * d * (n - 1))


def _complement(n: int, d: int, z_n: LClass) -> LClass:
    if n == 0:
        return L**d
    ambient = L ** (2 * d * n)
    return ambient * L**d - z_n * L**d - n * (ambient - z_n)


def configuration_complement_class(n: int, d: int) -> LClass:
    """``C(n)`` by scissor subtraction from ``(A^d x A^d)^n x A^d``."""
    _check_d(d)
    if n < 0 or n > d:
        raise OutOfRange(f"configuration space needs 0 <= n <= d, got n={n}, d={d}")
    if n > 3:
        raise Unsupported("no verified closed form for Z_n beyond n = 3; count instead")
    z_n = ZERO if n < 2 else z_complete_corrected(n, d)
    return _complement(n, d, z_n)


def forgetful_route_class(n: int, d: int) -> LClass:
    """Class produced by iterating the forgetful fibrations under general position.

    Each step multiplies by the complement of the span of the previous normals
    and by the complement of a general-position arrangement.  Not asserted
    equal to :func:`configuration_complement_class`.
    """
    _check_d(d)
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > d:
        raise Unsupported(f"forgetful route needs n <= d, got n={n}, d={d}")
    out = L**d
    for m in range(1, n + 1):
        out = out * (L**d - L ** (m - 1)) * (L**d - general_union_class(m - 1, d))
    return out


def parallel_stratum_class(d: int) -> LClass:
    """Base locus (two star edges) where the two fibre hyperplanes are parallel and distinct.

    ``w^a`` free, ``v = w^a - w^1`` nonzero, ``w^a - w^2 = lam * v`` with
    ``lam`` not 0 or 1, ``z^1`` free, and ``(z^1 - z^2) . v != 0``.
    """
    _check_d(d)
    return L ** (3 * d - 1) * (L - 1) * (L**d - 1) * (L - 2)


def _check_theorem_range(n: int, d: int) -> None:
    _check_d(d)
    if n < 2:
        raise OutOfRange(f"complete-graph classes start at n = 2, got {n}")
    if n > d + 1:
        raise OutOfRange(f"n = {n} exceeds the bound n <= d + 1 = {d + 1}")


def z_complete_paper(n: int, d: int) -> LClass:
    """Candidate class of ``Z_n`` assuming every star arrangement is in general position."""
    _check_theorem_range(n, d)
    z = edge_component_class(2, d)
    for m in range(2, n):
        ambient = L ** (2 * d * m)
        z = (
            z * L ** (2 * d)
            + m * (ambient - z) * L**d
            + _complement(m, d, z) * general_union_class(m, d)
        )
    return z


def z_complete_corrected(n: int, d: int) -> LClass:
    """``Z_n`` with the star-arrangement fibre split into transverse and parallel strata."""
    _check_theorem_range(n, d)
    z2 = edge_component_class(2, d)
    if n == 2:
        return z2
    if n > 3:
        raise Unsupported(
            "parallelism patterns of three or more normals are not stratified; use counting"
        )
    m_par = parallel_stratum_class(d)
    m_trans = _complement(2, d, z2) - m_par
    return (
        z2 * L ** (2 * d)
        + 2 * (L ** (4 * d) - z2) * L**d
        + m_trans * general_union_class(2, d)
        + m_par * 2 * L ** (d - 1)
    )


@dataclass(frozen=True)
class StrataDecomposition:
    """Pieces of ``Z_(n+1)`` over the projection forgetting ``z`` of the new vertex."""

    d: int
    vertex_count: int
    piece_A: LClass
    piece_B: LClass
    piece_C_transverse: LClass
    piece_C_parallel: LClass
    total_paper: LClass
    total_corrected: LClass

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "vertices": self.vertex_count,
            **{
                k: str(getattr(self, k))
                for k in (
                    "piece_A",
                    "piece_B",
                    "piece_C_transverse",
                    "piece_C_parallel",
                    "total_paper",
                    "total_corrected",
                )
            },
        }


def strata_decomposition(n: int, d: int) -> StrataDecomposition:
    """Decompose ``Z_(n+1)`` for ``n`` in {1, 2}: the pieces where the added parallel split is known."""
    _check_d(d)
    if n < 1 or n > d:
        raise OutOfRange(f"need 1 <= n <= d, got n={n}, d={d}")
    if n > 2:
        raise Unsupported("transverse/parallel split is only known for n <= 2")
    z_n = ZERO if n == 1 else z_complete_corrected(n, d)
    piece_a = z_n * L ** (2 * d)
    piece_b = n * (L ** (2 * d * n) - z_n) * L**d
    c_n = _complement(n, d, z_n)
    if n == 1:
        m_par, par_fibre = ZERO, ZERO
    else:
        m_par, par_fibre = parallel_stratum_class(d), 2 * L ** (d - 1)
    piece_ct = (c_n - m_par) * general_union_class(n, d)
    piece_cp = m_par * par_fibre
    total_paper = edge_component_class(2, d) if n == 1 else z_complete_paper(n + 1, d)
    return StrataDecomposition(
        d=d,
        vertex_count=n + 1,
        piece_A=piece_a,
        piece_B=piece_b,
        piece_C_transverse=piece_ct,
        piece_C_parallel=piece_cp,
        total_paper=total_paper,
        total_corrected=piece_a + piece_b + piece_ct + piece_cp,
    )


def propagator_restriction_residual(samples) -> float:
    """Max relative gap between ``q(z, conj z)^(1-d)`` and ``|z|^(2-2d)``."""
    worst = 0.0
    for z in samples:
        z = np.asarray(z, dtype=np.complex128)
        d = z.shape[0]
        if d < 2:
            raise InvalidDimension("samples must have length >= 2")
        norm2 = float(np.sum(np.abs(z) ** 2))
        if norm2 == 0.0:
            raise ZeroSample("zero vector has no propagator")
        qz = np.sum(z * np.conj(z))
        prop = qz ** (1 - d)
        target = norm2 ** (1 - d)
        worst = max(worst, abs(prop - target) / target)
    return worst
