"""Exact F_q point counts: the oracle every class in the package is checked against.

Two independent counters exist for Feynman quadrics ``Z_G``: brute force over
all ``q^(2dn)`` configurations, and a fibrewise counter that enumerates only
the w-coordinates and counts the z-solutions of each w by inclusion-exclusion
over edge subsets.  The remaining counters (simple quadric, projective
closure, configuration space, graph hypersurface, fibre survey) enumerate
directly with numpy.
"""

from __future__ import annotations

import os
import time
from dataclasses import asdict, dataclass
from functools import lru_cache

import numpy as np

from . import _kernels
from .arrangement import ALMOST_GENERAL, GENERAL, AffineArrangement, classify_position, union_count
from .errors import BudgetExceeded
from .ffield import PrimeField
from .graph import FeynmanGraph, complete, graph_polynomial

__all__ = [
    "DEFAULT_BRUTE_BUDGET",
    "DEFAULT_FIBRE_BUDGET",
    "CountReport",
    "FibreSurvey",
    "brute_force_count",
    "fibrewise_count",
    "count_simple_quadric",
    "count_projective_closure",
    "count_projective_quadric",
    "singular_point_count",
    "fibre_survey",
    "count_graph_hypersurface",
    "signature_flip_count",
    "count_configuration_space",
    "default_threads",
]

DEFAULT_BRUTE_BUDGET = 1 << 32
DEFAULT_FIBRE_BUDGET = 1 << 34
DEFAULT_BUDGET = 1 << 32

BRUTE = "brute"
FIBREWISE = "fibrewise"


def default_threads() -> int:
    return os.cpu_count() or 1


def _check_budget(work: int, budget: int | None, default: int) -> None:
    budget = default if budget is None else budget
    if work > budget:
        raise BudgetExceeded(work, budget)


@dataclass(frozen=True)
class CountReport:
    graph: FeynmanGraph
    d: int
    q: int
    count: int
    algorithm: str
    elapsed: float
    thread_count: int
    backend: str = ""

    def to_json(self) -> dict:
        return {
            "graph": self.graph.to_json(),
            "d": self.d,
            "q": self.q,
            "count": str(self.count),
            "algorithm": self.algorithm,
            "elapsed_ms": round(self.elapsed * 1000.0, 3),
            "thread_count": self.thread_count,
            "backend": self.backend,
        }


def _graph_arrays(g: FeynmanGraph):
    ei = np.array([i - 1 for i, _ in g.edges], dtype=np.int64)
    ej = np.array([j - 1 for _, j in g.edges], dtype=np.int64)
    return ei, ej


def _sign_array(signs, d: int, q: int) -> np.ndarray:
    if signs is None:
        return np.ones(d, dtype=np.int64)
    signs = list(signs)
    if len(signs) != d or any(s not in (1, -1) for s in signs):
        raise ValueError(f"signs must be a length-{d} vector of +1/-1")
    return np.array([s % q for s in signs], dtype=np.int64)


def brute_force_count(
    g: FeynmanGraph,
    d: int,
    q: int,
    *,
    signs=None,
    pin_first_w: bool = False,
    budget: int | None = None,
    threads: int = 1,
    backend: str | None = None,
) -> CountReport:
    """Count configurations on at least one edge quadric by testing every tuple.

    With ``pin_first_w`` only tuples with ``w^1 = 0`` are enumerated (the
    count is then smaller by exactly a factor ``q^d``).
    """
    PrimeField(q)
    if d < 1:
        raise ValueError("d must be positive")
    n = g.vertex_count
    m = 2 * d * n - (d if pin_first_w else 0)
    total = q**m
    _check_budget(total, budget, DEFAULT_BRUTE_BUDGET)
    kern = _kernels.get_backend(backend)
    ei, ej = _graph_arrays(g)
    sg = _sign_array(signs, d, q)
    t0 = time.perf_counter()
    parts = _kernels.run_partitioned(
        lambda lo, hi: int(kern.brute_count(q, d, n, ei, ej, sg, lo, hi, pin_first_w)),
        total,
        threads,
    )
    return CountReport(g, d, q, sum(parts), BRUTE, time.perf_counter() - t0, threads, kern.name)


def fibrewise_count(
    g: FeynmanGraph,
    d: int,
    q: int,
    *,
    signs=None,
    budget: int | None = None,
    threads: int = 1,
    backend: str | None = None,
) -> CountReport:
    """Count ``Z_G(F_q)`` by fibring over the w-coordinates.

    For fixed w the edge conditions are linear in z, so the union over edges
    is counted by inclusion-exclusion with ranks mod q.  Translating all w by
    a common vector is a symmetry, so ``w^1`` is pinned to 0 and the sum is
    multiplied by ``q^d``.
    """
    PrimeField(q)
    if d < 1:
        raise ValueError("d must be positive")
    n = g.vertex_count
    total = q ** (d * (n - 1))
    _check_budget(total, budget, DEFAULT_FIBRE_BUDGET)
    kern = _kernels.get_backend(backend)
    ei, ej = _graph_arrays(g)
    sg = _sign_array(signs, d, q)
    t0 = time.perf_counter()
    parts = _kernels.run_partitioned(
        lambda lo, hi: kern.fibrewise_hist(q, d, n, ei, ej, sg, lo, hi), total, threads
    )
    hist = [0] * (d * n + 1)
    for h in parts:
        for r, c in enumerate(h):
            hist[r] += int(c)
    count = q**d * sum(c * q ** (d * n - r) for r, c in enumerate(hist))
    return CountReport(g, d, q, count, FIBREWISE, time.perf_counter() - t0, threads, kern.name)


def signature_flip_count(g: FeynmanGraph, d: int, q: int, signs, **kwargs) -> int:
    """Count with edge quadrics ``sum_k eps_k dz_k dw_k`` (fibrewise)."""
    return fibrewise_count(g, d, q, signs=signs, **kwargs).count


# -- single quadrics ---------------------------------------------------------


def count_simple_quadric(d: int, q: int, budget: int | None = None) -> int:
    PrimeField(q)
    _check_budget(q ** (2 * d), budget, DEFAULT_BUDGET)
    total = 0
    for x in _kernels.point_batches(q, 2 * d):
        total += int(((x[:, :d] * x[:, d:]).sum(axis=1) % q == 0).sum())
    return total


@lru_cache(maxsize=None)
def _projective_points(m: int, q: int) -> np.ndarray:
    """Representatives of P^(m-1)(F_q): first nonzero coordinate equal to 1."""
    reps = []
    for lead in range(m):
        tail = m - lead - 1
        block = np.zeros((q**tail, m), dtype=np.int64)
        block[:, lead] = 1
        if tail:
            block[:, lead + 1 :] = _kernels.index_digits(np.arange(q**tail), q, tail)
        reps.append(block)
    return np.concatenate(reps, axis=0)


def count_projective_closure(d: int, q: int, budget: int | None = None) -> int:
    """Points of ``{z_1 w_1 + ... + z_d w_d = 0}`` in ``P^d x P^d``."""
    PrimeField(q)
    pts = _projective_points(d + 1, q)
    _check_budget(len(pts) ** 2, budget, DEFAULT_BUDGET)
    z = pts[:, 1:]
    total = 0
    for lo in range(0, len(pts), 1024):
        w = pts[lo : lo + 1024, 1:]
        total += int(((z @ w.T) % q == 0).sum())
    return total


def count_projective_quadric(D: int, q: int, budget: int | None = None) -> int:
    """Points of ``{u . v = 0}`` in ``P^(D-1)``, coordinates split as ``(u, v)`` halves."""
    PrimeField(q)
    if D < 2 or D % 2:
        raise ValueError("D must be an even number >= 2")
    h = D // 2
    _check_budget(q**D, budget, DEFAULT_BUDGET)
    pts = _projective_points(D, q)
    return int(((pts[:, :h] * pts[:, h:]).sum(axis=1) % q == 0).sum())


SIMPLE_QUADRIC = "simple"


def singular_point_count(target, d: int, q: int, budget: int | None = None) -> int:
    """Singular points of the simple quadric (``target="simple"``) or of one edge quadric.

    An integer ``target = n`` means the edge quadric of edge (1, 2) inside
    ``(A^d x A^d)^n``.  A point is singular if it lies on the quadric and
    every partial derivative vanishes there.
    """
    PrimeField(q)
    n = 1 if target == SIMPLE_QUADRIC else int(target)
    if target != SIMPLE_QUADRIC and n < 2:
        raise ValueError("an edge component needs n >= 2")
    m = 2 * d * n
    _check_budget(q**m, budget, DEFAULT_BUDGET)
    total = 0
    for x in _kernels.point_batches(q, m):
        z, w = x[:, : d * n], x[:, d * n :]
        if n == 1:
            dz, dw = z, w
        else:
            dz, dw = z[:, :d] - z[:, d : 2 * d], w[:, :d] - w[:, d : 2 * d]
        on = (dz * dw).sum(axis=1) % q == 0
        # gradient in (z^1, z^2) is (dw, -dw) and in (w^1, w^2) is (dz, -dz)
        flat = ((dz % q) == 0).all(axis=1) & ((dw % q) == 0).all(axis=1)
        total += int((on & flat).sum())
    return total


# -- configuration space and fibre survey ------------------------------------


def _base_split(x: np.ndarray, d: int, n: int):
    """Base point layout: z^1..z^n, w^1..w^n, then w^a."""
    dn = d * n
    return x[:, :dn], x[:, dn : 2 * dn], x[:, 2 * dn :]


def _in_z_complete(z, w, d, n, q) -> np.ndarray:
    hit = np.zeros(z.shape[0], dtype=bool)
    for i in range(n):
        for j in range(i + 1, n):
            dz = z[:, i * d : (i + 1) * d] - z[:, j * d : (j + 1) * d]
            dw = w[:, i * d : (i + 1) * d] - w[:, j * d : (j + 1) * d]
            hit |= (dz * dw).sum(axis=1) % q == 0
    return hit


def _on_diagonal(w, wa, d, n) -> np.ndarray:
    hit = np.zeros(w.shape[0], dtype=bool)
    for i in range(n):
        hit |= (w[:, i * d : (i + 1) * d] == wa).all(axis=1)
    return hit


def count_configuration_space(n: int, d: int, q: int, budget: int | None = None) -> int:
    """Base points off ``Z_n x A^d`` and off every diagonal ``{w^a = w^i}``."""
    PrimeField(q)
    if n < 0:
        raise ValueError("n must be nonnegative")
    m = 2 * d * n + d
    _check_budget(q**m, budget, DEFAULT_BUDGET)
    total = 0
    for x in _kernels.point_batches(q, m):
        z, w, wa = _base_split(x, d, n)
        bad = _in_z_complete(z, w, d, n, q) | _on_diagonal(w, wa, d, n)
        total += int((~bad).sum())
    return total


@dataclass
class FibreSurvey:
    n: int
    d: int
    q: int
    case1_count: int = 0
    case2_count: int = 0
    case3_general: int = 0
    case3_almost_general: int = 0
    case3_violating: int = 0
    case3_parallel: int = 0
    fibre_point_total: int = 0
    expected_total: int | None = None
    base_cardinality: int = 0

    @property
    def tally_sum(self) -> int:
        return (
            self.case1_count
            + self.case2_count
            + self.case3_general
            + self.case3_almost_general
            + self.case3_violating
        )

    @property
    def consistent(self) -> bool:
        return self.tally_sum == self.base_cardinality and (
            self.expected_total is None or self.fibre_point_total == self.expected_total
        )

    def to_json(self) -> dict:
        out = asdict(self)
        out["fibre_point_total"] = str(self.fibre_point_total)
        out["expected_total"] = None if self.expected_total is None else str(self.expected_total)
        out["tally_sum"] = self.tally_sum
        out["consistent"] = self.consistent
        return out


@lru_cache(maxsize=65536)
def _star_arrangement(d: int, q: int, normals: tuple, offsets: tuple):
    arr = AffineArrangement(d, q, normals, offsets)
    pos = classify_position(arr)
    parallel = False
    for a in range(len(normals)):
        for b in range(a + 1, len(normals)):
            if _proportional(normals[a], normals[b], q):
                parallel = True
    return pos.tag, parallel, union_count(arr)


def _proportional(u, v, q) -> bool:
    return all((u[s] * v[t] - u[t] * v[s]) % q == 0 for s in range(len(u)) for t in range(len(u)))


def fibre_survey(
    n: int,
    d: int,
    q: int,
    budget: int | None = None,
    check: bool = True,
    backend: str | None = None,
) -> FibreSurvey:
    """Classify every base point of the projection forgetting ``z^a`` of the added vertex.

    The graph is ``complete(n)`` plus a vertex ``a`` joined to all of it.
    Case 1: base point in ``Z_n x A^d``; case 2: otherwise some ``w^a = w^i``;
    case 3: the fibre is the arrangement of hyperplanes
    ``(z - z^i) . (w^a - w^i) = 0`` in ``A^d``, tallied by its position class.
    """
    PrimeField(q)
    if n < 1:
        raise ValueError("n must be at least 1")
    m = 2 * d * n + d
    _check_budget(q**m, budget, DEFAULT_BUDGET)
    s = FibreSurvey(n=n, d=d, q=q, base_cardinality=q**m)
    full = q**d
    for x in _kernels.point_batches(q, m):
        z, w, wa = _base_split(x, d, n)
        c1 = _in_z_complete(z, w, d, n, q)
        c2 = ~c1 & _on_diagonal(w, wa, d, n)
        s.case1_count += int(c1.sum())
        s.case2_count += int(c2.sum())
        s.fibre_point_total += full * int((c1 | c2).sum())
        rest = ~(c1 | c2)
        if not rest.any():
            continue
        zr, wr, war = z[rest], w[rest], wa[rest]
        normals = np.stack(
            [(war - wr[:, i * d : (i + 1) * d]) % q for i in range(n)], axis=1
        )  # (B, n, d)
        offsets = np.stack(
            [(zr[:, i * d : (i + 1) * d] * normals[:, i, :]).sum(axis=1) % q for i in range(n)],
            axis=1,
        )
        keys = np.concatenate([normals.reshape(len(zr), -1), offsets], axis=1)
        uniq, counts = np.unique(keys, axis=0, return_counts=True)
        for row, mult in zip(uniq, counts):
            nv = tuple(tuple(int(v) for v in row[i * d : (i + 1) * d]) for i in range(n))
            ov = tuple(int(v) for v in row[n * d :])
            tag, parallel, size = _star_arrangement(d, q, nv, ov)
            mult = int(mult)
            if tag == GENERAL:
                s.case3_general += mult
            elif tag == ALMOST_GENERAL:
                s.case3_almost_general += mult
            else:
                s.case3_violating += mult
            if parallel:
                s.case3_parallel += mult
            s.fibre_point_total += mult * size
    if check:
        s.expected_total = fibrewise_count(complete(n + 1), d, q, backend=backend).count
    return s


# -- graph hypersurface --------------------------------------------------------


def count_graph_hypersurface(g: FeynmanGraph, q: int, budget: int | None = None) -> int:
    """Points of ``{Psi_G = 0}`` in ``A^|E|`` where Psi_G sums complements of spanning trees."""
    PrimeField(q)
    ne = g.edge_count
    _check_budget(q**ne, budget, DEFAULT_BUDGET)
    monomials = graph_polynomial(g)
    total = 0
    for alpha in _kernels.point_batches(q, ne):
        val = np.zeros(alpha.shape[0], dtype=np.int64)
        for mono, mult in monomials.items():
            term = np.full(alpha.shape[0], mult % q, dtype=np.int64)
            for e in mono:
                term = term * alpha[:, e] % q
            val = (val + term) % q
        total += int((val == 0).sum())
    return total
