"""Feynman graphs: complete graphs, stars, vertex removal, spanning trees.

Vertices are labeled ``1..vertex_count``.  Edges keep a stable 0-based index
(their position in :attr:`FeynmanGraph.edges`); multi-edges are allowed,
self-loops are not.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable

from .errors import Disconnected

__all__ = [
    "FeynmanGraph",
    "complete",
    "star",
    "remove_vertex",
    "spanning_trees",
    "graph_polynomial",
    "parse_graph",
]


class _DSU:
    def __init__(self, n: int):
        self.parent = list(range(n + 1))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        return True


def _connected(n: int, edges: Iterable[tuple[int, int]]) -> bool:
    dsu = _DSU(n)
    parts = n
    for i, j in edges:
        if dsu.union(i, j):
            parts -= 1
    return parts == 1


@dataclass(frozen=True)
class FeynmanGraph:
    vertex_count: int
    edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        n = self.vertex_count
        if n < 1:
            raise ValueError("a graph needs at least one vertex")
        edges = tuple((int(i), int(j)) for i, j in self.edges)
        for i, j in edges:
            if i == j:
                raise ValueError(f"self-loop at vertex {i}")
            if not (1 <= i <= n and 1 <= j <= n):
                raise ValueError(f"edge ({i},{j}) has an endpoint outside 1..{n}")
        object.__setattr__(self, "edges", edges)
        if not _connected(n, edges):
            raise Disconnected(f"graph with edges {list(edges)} is not connected")

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def loop_number(self) -> int:
        return self.edge_count - self.vertex_count + 1

    def is_simple(self) -> bool:
        keys = [tuple(sorted(e)) for e in self.edges]
        return len(set(keys)) == len(keys)

    def to_json(self) -> dict:
        return {"vertices": self.vertex_count, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json(cls, obj: dict) -> "FeynmanGraph":
        return cls(int(obj["vertices"]), tuple(tuple(e) for e in obj["edges"]))

    def __str__(self) -> str:
        if self == complete(self.vertex_count):
            return f"complete:{self.vertex_count}"
        return ",".join(f"{i}-{j}" for i, j in self.edges) or "single-vertex"


def complete(n: int) -> FeynmanGraph:
    """Complete graph on ``n`` vertices, edges in lexicographic order."""
    if n < 1:
        raise ValueError("complete(n) needs n >= 1")
    return FeynmanGraph(n, tuple((i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)))


def star(g: FeynmanGraph, v: int) -> frozenset[int]:
    """Indices of the edges incident to ``v``."""
    if not 1 <= v <= g.vertex_count:
        raise ValueError(f"{v} is not a vertex")
    return frozenset(k for k, (i, j) in enumerate(g.edges) if v in (i, j))


def remove_vertex(g: FeynmanGraph, v: int) -> FeynmanGraph:
    """Delete ``v`` and its star; relabel the rest order-preservingly."""
    if not 1 <= v <= g.vertex_count:
        raise ValueError(f"{v} is not a vertex")
    if g.vertex_count == 1:
        raise ValueError("cannot remove the only vertex")

    def relabel(x: int) -> int:
        return x - 1 if x > v else x

    kept = tuple((relabel(i), relabel(j)) for i, j in g.edges if v not in (i, j))
    return FeynmanGraph(g.vertex_count - 1, kept)


def spanning_trees(g: FeynmanGraph) -> list[frozenset[int]]:
    """All spanning trees as sets of edge indices, by deletion/contraction.

    Edges are decided in index order: each is either contracted into the
    tree (if it joins two components) or deleted.  Branches that can no
    longer connect the graph are pruned.
    """
    n, edges = g.vertex_count, g.edges
    need = n - 1
    found: list[frozenset[int]] = []

    def rec(k: int, chosen: list[int], comp: list[int]):
        if len(chosen) == need:
            found.append(frozenset(chosen))
            return
        if k == len(edges) or len(edges) - k < need - len(chosen):
            return
        i, j = edges[k]
        ci, cj = comp[i], comp[j]
        if ci != cj:
            merged = [ci if c == cj else c for c in comp]
            chosen.append(k)
            rec(k + 1, chosen, merged)
            chosen.pop()
        rec(k + 1, chosen, comp)

    rec(0, [], list(range(n + 1)))
    return sorted(found, key=sorted)


def graph_polynomial(g: FeynmanGraph) -> dict[frozenset[int], int]:
    """Monomials of sum_T prod_{e not in T} alpha_e, as {edge-index set: multiplicity}."""
    all_edges = frozenset(range(g.edge_count))
    return dict(Counter(all_edges - t for t in spanning_trees(g)))


def parse_graph(text: str) -> FeynmanGraph:
    """Parse ``complete:n`` or an edge list like ``1-2,1-3,2-3``."""
    s = text.strip()
    if s.startswith("complete:"):
        return complete(int(s.split(":", 1)[1]))
    edges = []
    for item in s.split(","):
        a, sep, b = item.strip().partition("-")
        if not sep:
            raise ValueError(f"bad edge {item!r}; expected 'i-j'")
        edges.append((int(a), int(b)))
    if not edges:
        raise ValueError("empty edge list")
    return FeynmanGraph(max(max(e) for e in edges), tuple(edges))
