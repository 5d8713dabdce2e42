"""Lattice geometry for m x n grid graphs.

Vertices are plain ``(x, y)`` tuples with 1-based coordinates; ``(1, 1)`` is
the lower-left corner and ``(m, n)`` the upper-right one.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

Vertex = tuple[int, int]
VertexSet = tuple[Vertex, ...]


class GridError(ValueError):
    """Raised for vertices or sets that do not fit the grid they are used with."""


@dataclass(frozen=True, order=True)
class GridSpec:
    m: int
    n: int

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise GridError(f"grid dimensions must be positive, got {self.m}x{self.n}")

    @property
    def size(self) -> int:
        return self.m * self.n

    def __contains__(self, v: Vertex) -> bool:
        x, y = v
        return 1 <= x <= self.m and 1 <= y <= self.n

    def vertices(self) -> Iterator[Vertex]:
        """All vertices in lexicographic (x, y) order."""
        for x in range(1, self.m + 1):
            for y in range(1, self.n + 1):
                yield (x, y)

    def index(self, v: Vertex) -> int:
        # lexicographic rank; the oracle relies on this ordering for its bitmasks
        return (v[0] - 1) * self.n + (v[1] - 1)

    def check(self, v: Vertex) -> Vertex:
        if v not in self:
            raise GridError(f"vertex {v} outside {self.m}x{self.n} grid")
        return v

    def clamp(self, v: Vertex) -> Vertex:
        """Nearest grid vertex to an arbitrary lattice point."""
        return (min(max(v[0], 1), self.m), min(max(v[1], 1), self.n))


def vertex_set(vs: Iterable[Vertex]) -> VertexSet:
    """Canonical form of a vertex collection: deduplicated, sorted."""
    return tuple(sorted({(int(x), int(y)) for x, y in vs}))


def manhattan_distance(u: Vertex, v: Vertex) -> int:
    return abs(u[0] - v[0]) + abs(u[1] - v[1])


def k_ball_size(k: int) -> int:
    """Number of lattice cells within distance k of a point, the point included."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return 2 * k * k + 2 * k + 1


def ball_offsets(k: int) -> list[tuple[int, int]]:
    """Offsets of the closed k-ball, lexicographically ordered."""
    return [
        (dx, dy)
        for dx in range(-k, k + 1)
        for dy in range(-(k - abs(dx)), k - abs(dx) + 1)
    ]


def closed_ball(g: GridSpec, v: Vertex, k: int) -> VertexSet:
    x, y = v
    return tuple(
        (x + dx, y + dy) for dx, dy in ball_offsets(k) if (x + dx, y + dy) in g
    )


def k_neighbors(g: GridSpec, v: Vertex, k: int) -> VertexSet:
    g.check(v)
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return tuple(u for u in closed_ball(g, v, k) if u != v)


def neighbors(g: GridSpec, v: Vertex) -> VertexSet:
    return k_neighbors(g, v, 1)


def boundary(g: GridSpec) -> VertexSet:
    """Vertices with fewer than four neighbours."""
    return tuple(
        v for v in g.vertices()
        if v[0] in (1, g.m) or v[1] in (1, g.n)
    )


def super_grid(g: GridSpec, k: int = 1) -> tuple[GridSpec, int]:
    """The grid enlarged by a ring of width k, and the coordinate offset.

    Vertex ``(x, y)`` of ``g`` is vertex ``(x + k, y + k)`` of the super-grid.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return GridSpec(g.m + 2 * k, g.n + 2 * k), k


def embed(v: Vertex, offset: int) -> Vertex:
    return (v[0] + offset, v[1] + offset)


def unembed(v: Vertex, offset: int) -> Vertex:
    return (v[0] - offset, v[1] - offset)


def power_graph_edges(g: GridSpec, k: int) -> list[tuple[Vertex, Vertex]]:
    """Edges of the k-th power of the grid: pairs at distance 1..k, u < v."""
    edges = []
    for u in g.vertices():
        for v in closed_ball(g, u, k):
            if u < v:
                edges.append((u, v))
    return edges
