"""Prime fields and exact elimination over them (pure Python, small sizes)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

MAX_MODULUS = 1 << 16


def is_prime(n: int) -> bool:
    """Deterministic trial division; adequate for moduli below 2^16."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def primes_between(lo: int, hi: int) -> list[int]:
    return [p for p in range(max(lo, 2), hi + 1) if is_prime(p)]


@dataclass(frozen=True)
class PrimeField:
    q: int

    def __post_init__(self):
        if not isinstance(self.q, int) or not is_prime(self.q):
            raise ValueError(f"{self.q} is not prime")
        if self.q > MAX_MODULUS:
            raise ValueError(f"modulus {self.q} exceeds {MAX_MODULUS}")

    def inv(self, a: int) -> int:
        a %= self.q
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(a, -1, self.q)


def rref(rows: Sequence[Sequence[int]], q: int, ncols: int | None = None):
    """Reduced row echelon form mod ``q``.

    Pivots are searched only in the first ``ncols`` columns (all by default),
    which lets an augmented column ride along.  Returns ``(rows, pivots)``
    with zero rows dropped.
    """
    m = [[x % q for x in r] for r in rows]
    if not m:
        return [], []
    width = len(m[0])
    ncols = width if ncols is None else ncols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = pow(m[r][c], -1, q)
        m[r] = [(x * inv) % q for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(a - f * b) % q for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return [row for row in m if any(row)], pivots


def rank(rows: Sequence[Sequence[int]], q: int) -> int:
    return len(rref(rows, q)[1])


def affine_solution(normals, offsets, q: int):
    """Solve ``normals . x = offsets`` mod q.

    Returns ``None`` if inconsistent, else ``(rank, key)`` where ``key`` is the
    canonical reduced augmented system, identical for equal solution sets.
    """
    aug = [list(n) + [c] for n, c in zip(normals, offsets)]
    d = len(normals[0])
    red, pivots = rref(aug, q)
    if d in pivots:
        return None
    key = tuple(tuple(r) for r in red)
    return len(pivots), key
