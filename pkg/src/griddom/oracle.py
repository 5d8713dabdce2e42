"""Exact minimum (k-distance) dominating sets by iterative-deepening branch and bound.

Closed neighbourhoods are bitmasks over vertex indices. The search always
branches on the lowest-index uncovered vertex and tries its dominators in
index order, so the first set found at the optimal depth is the
lexicographically first optimum and the result is reproducible.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Hashable, Iterable, Optional, Sequence

from .grid import GridSpec, Vertex, VertexSet, closed_ball, k_ball_size, power_graph_edges


class BudgetExhausted(RuntimeError):
    """The search ran out of nodes or time before certifying an optimum."""

    def __init__(self, message: str, best_upper: Optional[int] = None, nodes: int = 0):
        super().__init__(message)
        self.best_upper = best_upper
        self.nodes = nodes


@dataclass(frozen=True)
class OracleResult:
    optimum: VertexSet
    gamma: int
    nodes_explored: int
    elapsed: float


class _Search:
    def __init__(self, masks: Sequence[int], ball_cap: int, max_nodes=None, deadline=None):
        self.masks = list(masks)
        self.full = (1 << len(masks)) - 1
        # dominators[i]: indices whose closed neighbourhood contains i, ascending
        self.dominators = [[] for _ in masks]
        for j, mask in enumerate(masks):
            bits = mask
            while bits:
                low = bits & -bits
                self.dominators[low.bit_length() - 1].append(j)
                bits ^= low
        self.ball_cap = ball_cap
        self.max_nodes = max_nodes
        self.deadline = deadline
        self.nodes = 0

    def _tick(self):
        self.nodes += 1
        if self.max_nodes is not None and self.nodes > self.max_nodes:
            raise BudgetExhausted(f"node budget {self.max_nodes} exhausted", nodes=self.nodes)
        if self.deadline is not None and self.nodes % 1024 == 0 and time.monotonic() > self.deadline:
            raise BudgetExhausted("time budget exhausted", nodes=self.nodes)

    def find(self, t: int) -> Optional[list[int]]:
        """First dominating set of size <= t in branching order, or None."""
        chosen: list[int] = []

        def rec(covered: int, left: int) -> bool:
            self._tick()
            uncovered = self.full & ~covered
            if not uncovered:
                return True
            if left == 0 or left * self.ball_cap < uncovered.bit_count():
                return False
            low = (uncovered & -uncovered).bit_length() - 1
            for j in self.dominators[low]:
                chosen.append(j)
                if rec(covered | self.masks[j], left - 1):
                    return True
                chosen.pop()
            return False

        return list(chosen) if rec(0, t) else None


def _deepen(search: _Search, start: int) -> tuple[list[int], int]:
    t = max(start, 0)
    while True:
        found = search.find(t)
        if found is not None:
            return found, t
        t += 1


def grid_masks(g: GridSpec, k: int) -> list[int]:
    masks = []
    for v in g.vertices():
        mask = 0
        for u in closed_ball(g, v, k):
            mask |= 1 << g.index(u)
        masks.append(mask)
    return masks


def _budget(max_nodes, timeout_sec):
    deadline = None if timeout_sec is None else time.monotonic() + timeout_sec
    return max_nodes, deadline


def exact_min_dominating(
    g: GridSpec,
    k: int = 1,
    max_nodes: Optional[int] = None,
    timeout_sec: Optional[float] = None,
) -> OracleResult:
    """Minimum k-distance dominating set of ``g``.

    Deepening starts at the packing bound ceil(mn / N) and prunes whenever the
    remaining picks times the ball size cannot cover what is left.
    """
    t0 = time.perf_counter()
    max_nodes, deadline = _budget(max_nodes, timeout_sec)
    search = _Search(grid_masks(g, k), k_ball_size(k), max_nodes, deadline)
    start = -(-g.size // k_ball_size(k))
    verts = list(g.vertices())
    try:
        found, gamma = _deepen(search, start)
    except BudgetExhausted as exc:
        from .construct import construct_best

        exc.best_upper = construct_best(g, k).size
        raise
    return OracleResult(
        optimum=tuple(sorted(verts[i] for i in found)),
        gamma=gamma,
        nodes_explored=search.nodes,
        elapsed=time.perf_counter() - t0,
    )


def exact_gamma_k(g: GridSpec, k: int = 1, **budget) -> int:
    return exact_min_dominating(g, k, **budget).gamma


def has_dominating_set_of_size(g: GridSpec, k: int, t: int) -> bool:
    """Exhaustive decision version; used to certify that gamma - 1 is infeasible."""
    return _Search(grid_masks(g, k), k_ball_size(k)).find(t) is not None


def graph_domination_number(
    nodes: Sequence[Hashable],
    edges: Iterable[tuple[Hashable, Hashable]],
    max_nodes: Optional[int] = None,
    timeout_sec: Optional[float] = None,
) -> tuple[int, list]:
    """Domination number of an arbitrary simple graph and one optimum.

    The packing cap is the largest closed neighbourhood, so nothing about
    grids is assumed.
    """
    order = {v: i for i, v in enumerate(nodes)}
    masks = [1 << i for i in range(len(nodes))]
    for u, v in edges:
        masks[order[u]] |= 1 << order[v]
        masks[order[v]] |= 1 << order[u]
    cap = max((m.bit_count() for m in masks), default=1)
    max_nodes, deadline = _budget(max_nodes, timeout_sec)
    search = _Search(masks, cap, max_nodes, deadline)
    found, gamma = _deepen(search, -(-len(nodes) // cap))
    return gamma, [nodes[i] for i in found]


def cross_check_power(g: GridSpec, k: int, **budget) -> bool:
    """gamma of the k-th power graph equals the k-distance domination number."""
    direct = exact_gamma_k(g, k, **budget)
    power, _ = graph_domination_number(list(g.vertices()), power_graph_edges(g, k), **budget)
    return direct == power
