"""Arbitration between candidate classes and point counts; counting-function interpolation."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from . import classes
from .count import (
    brute_force_count,
    count_projective_closure,
    count_projective_quadric,
    count_simple_quadric,
    fibrewise_count,
)
from .errors import NoIntegerFit, Unsupported
from .graph import FeynmanGraph, complete
from .lefschetz import L, LClass, eval_at, interpolate

__all__ = [
    "VerifyRow",
    "VerifyReport",
    "graph_candidates",
    "quadric_target",
    "verify",
    "verify_graph",
    "verify_quadric",
    "InterpolationResult",
    "interpolate_counts",
    "count_graph",
    "parse_primes",
]

QUADRICS: dict[str, tuple[Callable[[int], LClass], Callable[[int, int], int]]] = {
    "simple": (classes.simple_quadric_class, count_simple_quadric),
    "closure": (classes.projective_closure_class, count_projective_closure),
    "exceptional": (
        classes.exceptional_divisor_class,
        lambda d, q: count_projective_quadric(2 * d, q),
    ),
}

AUTO_BRUTE_LIMIT = 1 << 22


@dataclass
class VerifyRow:
    q: int
    predicted: dict[str, int]
    observed: int
    residual: dict[str, int]
    algorithm: str = ""


@dataclass
class VerifyReport:
    target: str
    candidates: dict[str, LClass]
    rows: list[VerifyRow] = field(default_factory=list)

    @property
    def verdict(self) -> list[str]:
        return [m for m in self.candidates if all(r.residual[m] == 0 for r in self.rows)]

    @property
    def ok(self) -> bool:
        return bool(self.verdict)

    def to_json(self) -> dict:
        return {
            "target": self.target,
            "candidates": {m: c.to_json() for m, c in self.candidates.items()},
            "rows": [
                {
                    "q": r.q,
                    "predicted": {m: str(v) for m, v in r.predicted.items()},
                    "observed": str(r.observed),
                    "residual": {m: str(v) for m, v in r.residual.items()},
                    "algorithm": r.algorithm,
                }
                for r in self.rows
            ],
            "verdict": self.verdict,
        }

    def render(self) -> str:
        methods = list(self.candidates)
        lines = [f"target: {self.target}"]
        for m, c in self.candidates.items():
            lines.append(f"  {m}: {c}")
        header = ["q", "observed"] + [f"residual[{m}]" for m in methods]
        lines.append("  ".join(f"{h:>20}" for h in header))
        for r in self.rows:
            cells = [str(r.q), str(r.observed)] + [str(r.residual[m]) for m in methods]
            lines.append("  ".join(f"{c:>20}" for c in cells))
        lines.append("verdict: " + (", ".join(self.verdict) if self.verdict else "no candidate matches"))
        return "\n".join(lines)


def verify(target: str, candidates: dict[str, LClass], counter, primes: Sequence[int]) -> VerifyReport:
    """``counter(q)`` returns ``(count, algorithm)``; residual is predicted minus observed."""
    report = VerifyReport(target, dict(candidates))
    for q in primes:
        observed, algo = counter(q)
        predicted = {m: eval_at(c, q) for m, c in candidates.items()}
        residual = {m: v - observed for m, v in predicted.items()}
        report.rows.append(VerifyRow(q, predicted, observed, residual, algo))
    return report


def graph_candidates(g: FeynmanGraph, d: int, methods: Sequence[str]) -> dict[str, LClass]:
    if g != complete(g.vertex_count):
        raise Unsupported("closed-form classes exist only for complete graphs")
    n = g.vertex_count
    table = {"paper": classes.z_complete_paper, "corrected": classes.z_complete_corrected}
    out = {}
    for m in methods:
        if m not in table:
            raise ValueError(f"unknown method {m!r}; choose from {sorted(table)}")
        out[m] = table[m](n, d)
    return out


def count_graph(
    g: FeynmanGraph, d: int, q: int, algo: str = "auto", threads: int = 1, budget=None, backend=None
):
    if algo == "auto":
        algo = "brute" if q ** (2 * d * g.vertex_count) <= AUTO_BRUTE_LIMIT else "fibrewise"
    if algo == "brute":
        return brute_force_count(g, d, q, threads=threads, budget=budget, backend=backend)
    if algo == "fibrewise":
        return fibrewise_count(g, d, q, threads=threads, budget=budget, backend=backend)
    raise ValueError(f"unknown algorithm {algo!r}")


def verify_graph(
    g: FeynmanGraph,
    d: int,
    primes: Sequence[int],
    methods: Sequence[str] = ("paper", "corrected"),
    algo: str = "auto",
    threads: int = 1,
    budget=None,
) -> VerifyReport:
    cands = graph_candidates(g, d, methods)

    def counter(q):
        rep = count_graph(g, d, q, algo, threads, budget)
        return rep.count, rep.algorithm

    return verify(f"Z[{g}] d={d}", cands, counter, primes)


def quadric_target(name: str):
    try:
        return QUADRICS[name]
    except KeyError:
        raise ValueError(f"unknown quadric {name!r}; choose from {sorted(QUADRICS)}") from None


def verify_quadric(name: str, d: int, primes: Sequence[int], budget=None) -> VerifyReport:
    cls_fn, count_fn = quadric_target(name)
    return verify(
        f"{name} quadric d={d}",
        {"closed-form": cls_fn(d)},
        lambda q: (count_fn(d, q) if budget is None else count_fn(d, q, budget), "enumeration"),
        primes,
    )


@dataclass
class InterpolationResult:
    graph: FeynmanGraph
    d: int
    fit: LClass | None
    fit_rows: list[tuple[int, int]]
    holdout_rows: list[tuple[int, int, int | None]]
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.fit is not None and all(obs == pred for _, obs, pred in self.holdout_rows)

    def to_json(self) -> dict:
        return {
            "graph": self.graph.to_json(),
            "d": self.d,
            "class": None if self.fit is None else self.fit.to_json(),
            "fit": [{"q": q, "count": str(c)} for q, c in self.fit_rows],
            "holdout": [
                {
                    "q": q,
                    "count": str(c),
                    "predicted": None if p is None else str(p),
                    "match": p == c,
                }
                for q, c, p in self.holdout_rows
            ],
            "ok": self.ok,
            "error": self.error,
        }


def required_primes(g: FeynmanGraph, d: int) -> int:
    return 2 * d * g.vertex_count - 2 * d + 1


def interpolate_counts(
    g: FeynmanGraph,
    d: int,
    primes: Sequence[int],
    holdout: Sequence[int] = (),
    threads: int = 1,
    budget=None,
    backend=None,
) -> InterpolationResult:
    """Fit ``count(q) / q^(2d)`` by an integer polynomial, restore the factor, check holdouts.

    The reduced count is an integer because translating every z (or every w)
    by a common vector preserves the quadric; a non-divisible count is
    treated as a counting bug.
    """
    max_degree = 2 * d * g.vertex_count - 2 * d
    if len(set(primes)) < max_degree + 1:
        raise ValueError(
            f"need at least {max_degree + 1} distinct primes for degree {max_degree}, got {len(set(primes))}"
        )
    rows = []
    for q in primes:
        c = fibrewise_count(g, d, q, threads=threads, budget=budget, backend=backend).count
        if c % q ** (2 * d):
            raise AssertionError(f"count {c} at q={q} is not divisible by q^{2 * d}")
        rows.append((q, c))
    try:
        reduced = interpolate([(q, c // q ** (2 * d)) for q, c in rows], max_degree)
        fit = reduced * L ** (2 * d)
        err = None
    except NoIntegerFit as exc:
        fit, err = None, str(exc)
    hold = []
    for q in holdout:
        c = fibrewise_count(g, d, q, threads=threads, budget=budget, backend=backend).count
        hold.append((q, c, None if fit is None else eval_at(fit, q)))
    return InterpolationResult(g, d, fit, rows, hold, err)


def parse_primes(text: str) -> list[int]:
    """Expand ``"2..41"``, ``"2,3,5"`` or mixtures like ``"2..11,13"`` into primes."""
    from .ffield import is_prime, primes_between

    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if ".." in part:
            lo, hi = part.split("..", 1)
            out.extend(primes_between(int(lo), int(hi)))
        else:
            p = int(part)
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
            out.append(p)
    seen = set()
    uniq = [p for p in out if not (p in seen or seen.add(p))]
    if not uniq:
        raise ValueError(f"no primes in {text!r}")
    return uniq
