"""Affine hyperplane arrangements over F_q.

A hyperplane is ``{x in F_q^d : normal . x = offset}``.  Queries go through
exact elimination mod q; the intersection poset and position classes are
computed by enumerating label subsets, so arrangements stay small.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .errors import ExhaustedAttempts, TooLarge
from .ffield import affine_solution, is_prime

__all__ = [
    "AffineArrangement",
    "PositionClass",
    "GENERAL",
    "ALMOST_GENERAL",
    "VIOLATING",
    "intersection_dim",
    "union_count",
    "classify_position",
    "intersection_poset",
    "sample_general_position",
]

GENERAL = "general"
ALMOST_GENERAL = "almost-general"
VIOLATING = "violating"

POSET_LIMIT = 12


@dataclass(frozen=True)
class AffineArrangement:
    d: int
    q: int
    normals: tuple[tuple[int, ...], ...]
    offsets: tuple[int, ...]
    labels: tuple[int, ...] = ()

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("dimension must be positive")
        if not is_prime(self.q):
            raise ValueError(f"{self.q} is not prime")
        q = self.q
        normals = tuple(tuple(int(x) % q for x in n) for n in self.normals)
        offsets = tuple(int(c) % q for c in self.offsets)
        if len(normals) != len(offsets):
            raise ValueError("normals and offsets differ in length")
        for n in normals:
            if len(n) != self.d:
                raise ValueError(f"normal {n} is not of length {self.d}")
            if not any(n):
                raise ValueError("zero normal vector")
        labels = tuple(self.labels) or tuple(range(1, len(normals) + 1))
        if len(labels) != len(normals) or len(set(labels)) != len(labels):
            raise ValueError("labels must be distinct, one per hyperplane")
        object.__setattr__(self, "normals", normals)
        object.__setattr__(self, "offsets", offsets)
        object.__setattr__(self, "labels", labels)

    def __len__(self) -> int:
        return len(self.normals)

    def _index(self, s: Iterable[int]) -> list[int]:
        pos = {lab: k for k, lab in enumerate(self.labels)}
        try:
            return [pos[lab] for lab in s]
        except KeyError as exc:
            raise ValueError(f"unknown label {exc.args[0]}") from None

    def _solve(self, idx: Sequence[int]):
        return affine_solution(
            [self.normals[k] for k in idx], [self.offsets[k] for k in idx], self.q
        )

    def relabeled(self, perm: Sequence[int]) -> "AffineArrangement":
        """Reorder hyperplanes by ``perm`` (a permutation of positions), keeping labels attached."""
        return AffineArrangement(
            self.d,
            self.q,
            tuple(self.normals[k] for k in perm),
            tuple(self.offsets[k] for k in perm),
            tuple(self.labels[k] for k in perm),
        )

    def transformed(self, matrix, shift) -> "AffineArrangement":
        """Pull back along ``x = matrix @ y + shift``."""
        A = np.asarray(matrix, dtype=np.int64) % self.q
        t = np.asarray(shift, dtype=np.int64) % self.q
        normals, offsets = [], []
        for n, c in zip(self.normals, self.offsets):
            nv = np.asarray(n, dtype=np.int64)
            normals.append(tuple(int(x) for x in (A.T @ nv) % self.q))
            offsets.append((c - int(nv @ t)) % self.q)
        return AffineArrangement(self.d, self.q, tuple(normals), tuple(offsets), self.labels)

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "q": self.q,
            "hyperplanes": [
                {"normal": list(n), "offset": c, "label": lab}
                for n, c, lab in zip(self.normals, self.offsets, self.labels)
            ],
        }

    @classmethod
    def from_json(cls, obj) -> "AffineArrangement":
        if isinstance(obj, str):
            obj = json.loads(obj)
        hs = obj["hyperplanes"]
        labels = tuple(h["label"] for h in hs) if all("label" in h for h in hs) else ()
        return cls(
            int(obj["d"]),
            int(obj["q"]),
            tuple(tuple(h["normal"]) for h in hs),
            tuple(h["offset"] for h in hs),
            labels,
        )


@dataclass(frozen=True)
class PositionClass:
    tag: str
    theta: tuple[frozenset[int], ...] = ()
    witness: frozenset[int] | None = None

    def render(self) -> str:
        if self.tag == GENERAL:
            return "general"
        if self.tag == ALMOST_GENERAL:
            sets = ", ".join(_fmt_set(j) for j in self.theta)
            return f"almost-general, Θ = [{sets}]"
        return f"violating, witness {_fmt_set(self.witness)}"

    def to_json(self) -> dict:
        out: dict = {"tag": self.tag}
        if self.tag == ALMOST_GENERAL:
            out["theta"] = [sorted(j) for j in self.theta]
        if self.tag == VIOLATING:
            out["witness"] = sorted(self.witness)
        return out


def _fmt_set(s) -> str:
    return "{" + ",".join(str(x) for x in sorted(s)) + "}"


def intersection_dim(a: AffineArrangement, s: Iterable[int]) -> int | None:
    """Dimension of the intersection of the labeled hyperplanes; ``None`` if empty."""
    idx = a._index(s)
    if not idx:
        raise ValueError("label set must be nonempty")
    sol = a._solve(idx)
    return None if sol is None else a.d - sol[0]


def union_count(a: AffineArrangement) -> int:
    """Number of F_q-points on the union, by inclusion-exclusion over label subsets."""
    k = len(a)
    total = 0
    for size in range(1, k + 1):
        sign = 1 if size % 2 else -1
        for idx in combinations(range(k), size):
            sol = a._solve(idx)
            if sol is not None:
                total += sign * a.q ** (a.d - sol[0])
    return total


def classify_position(a: AffineArrangement) -> PositionClass:
    """General / almost-general (with degeneration type) / violating.

    Subsets are scanned by increasing size, so a violating witness is a
    smallest offending label set.
    """
    d, k = a.d, len(a)
    deep: list[tuple[int, ...]] = []
    saw_deep_nonempty = False
    for size in range(1, k + 1):
        for idx in combinations(range(k), size):
            sol = a._solve(idx)
            dim = None if sol is None else d - sol[0]
            if size <= d:
                if dim != d - size:
                    return PositionClass(VIOLATING, witness=frozenset(a.labels[i] for i in idx))
            elif dim is not None:
                saw_deep_nonempty = True
                if dim != 0:
                    return PositionClass(VIOLATING, witness=frozenset(a.labels[i] for i in idx))
                deep.append(idx)
    if not saw_deep_nonempty:
        return PositionClass(GENERAL)
    sets = [frozenset(idx) for idx in deep]
    maximal = [s for s in sets if not any(s < t for t in sets)]
    theta = sorted(
        (frozenset(a.labels[i] for i in s) for s in maximal), key=lambda s: sorted(s)
    )
    return PositionClass(ALMOST_GENERAL, theta=tuple(theta))


def intersection_poset(a: AffineArrangement) -> list[tuple[frozenset[int], int]]:
    """Distinct nonempty intersections with the maximal label set cutting each one out."""
    k = len(a)
    if k > POSET_LIMIT:
        raise TooLarge(f"{k} hyperplanes exceeds the poset limit of {POSET_LIMIT}")
    flats: dict[tuple, tuple[set[int], int]] = {}
    for size in range(1, k + 1):
        for idx in combinations(range(k), size):
            sol = a._solve(idx)
            if sol is None:
                continue
            rank, key = sol
            entry = flats.setdefault(key, (set(), a.d - rank))
            entry[0].update(a.labels[i] for i in idx)
    out = [(frozenset(labels), dim) for labels, dim in flats.values()]
    out.sort(key=lambda item: (-item[1], sorted(item[0])))
    return out


def sample_general_position(d: int, q: int, k: int, seed: int, max_attempts: int = 1000):
    """Seeded rejection sampler for ``k <= d`` hyperplanes in general position."""
    if k > d:
        raise ValueError("general position sampling needs k <= d")
    rng = np.random.default_rng(seed)
    for _ in range(max_attempts):
        normals = rng.integers(0, q, size=(k, d))
        if k and not normals.any(axis=1).all():
            continue
        offsets = rng.integers(0, q, size=k)
        arr = AffineArrangement(
            d, q, tuple(tuple(int(x) for x in n) for n in normals), tuple(int(c) for c in offsets)
        )
        if classify_position(arr).tag == GENERAL:
            return arr
    raise ExhaustedAttempts(f"no general-position sample after {max_attempts} attempts")
