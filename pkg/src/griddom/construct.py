"""Centralized construction of (k-distance) dominating sets and closed-form bounds."""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .diagonal import (
    DiagonalParams,
    Orientation,
    project,
    super_diagonalization,
)
from .grid import GridError, GridSpec, Vertex, VertexSet, closed_ball, k_ball_size, vertex_set


class FormulaNotApplicable(ValueError):
    pass


@dataclass(frozen=True)
class DominationReport:
    dominated: bool
    uncovered: VertexSet
    multiplicity: dict = field(repr=False)  # vertex -> number of members within k
    histogram: dict  # multiplicity -> vertex count


@dataclass(frozen=True)
class ConstructionResult:
    dominating_set: VertexSet
    params: DiagonalParams
    cluster_part: VertexSet
    orphan_part: VertexSet
    repaired: VertexSet

    @property
    def size(self) -> int:
        return len(self.dominating_set)


@dataclass(frozen=True)
class BoundsReport:
    m: int
    n: int
    k: int
    gamma_exact_formula: Optional[int]
    construction_upper: int
    diag_cardinality_upper: int
    lower: int
    ratio_upper: Fraction


def verify_k_domination(g: GridSpec, s: Iterable[Vertex], k: int = 1) -> DominationReport:
    members = vertex_set(s)
    for v in members:
        g.check(v)
    mult = {v: 0 for v in g.vertices()}
    for u in members:
        for v in closed_ball(g, u, k):
            mult[v] += 1
    uncovered = tuple(v for v, c in mult.items() if c == 0)
    return DominationReport(
        dominated=not uncovered,
        uncovered=uncovered,
        multiplicity=mult,
        histogram=dict(sorted(Counter(mult.values()).items())),
    )


def _repair(g: GridSpec, chosen: set, k: int) -> list[Vertex]:
    covered = set()
    for u in chosen:
        covered.update(closed_ball(g, u, k))
    added = []
    for v in g.vertices():
        if v in covered:
            continue
        # best in-grid vertex covering v; ties go to the smallest coordinate
        best = max(
            closed_ball(g, v, k),
            key=lambda c: (sum(w not in covered for w in closed_ball(g, c, k)), tuple(-t for t in c)),
        )
        added.append(best)
        covered.update(closed_ball(g, best, k))
    return added


def construct(g: GridSpec, p: DiagonalParams) -> ConstructionResult:
    """Diagonalize the k-super-grid, project its outer ring inside, repair leftovers.

    ``p.r`` is interpreted in super-grid coordinates. The in-grid part of the
    pattern becomes ``cluster_part``; the images of the outside vertices
    become ``orphan_part``.
    """
    proj = project(g, super_diagonalization(g, p), p.k)
    chosen = set(proj.projected)
    repaired = _repair(g, chosen, p.k)
    return ConstructionResult(
        dominating_set=vertex_set(chosen | set(repaired)),
        params=p,
        cluster_part=proj.kept,
        orphan_part=vertex_set(set(proj.added) - set(proj.kept)),
        repaired=vertex_set(repaired),
    )


def candidate_params(k: int) -> list[DiagonalParams]:
    return [
        DiagonalParams(k, r, o)
        for r in range(k_ball_size(k))
        for o in (Orientation.XY, Orientation.SWAPPED)
    ]


def construct_best(g: GridSpec, k: int = 1) -> ConstructionResult:
    best = None
    for p in candidate_params(k):
        res = construct(g, p)
        if best is None or res.size < best.size:
            best = res
    return best


def gamma_formula(m: int, n: int) -> int:
    """Domination number of an m x n grid, valid only for 16 <= min(m, n)."""
    m, n = sorted((m, n))
    if m < 16:
        raise FormulaNotApplicable(f"closed form needs 16 <= m <= n, got {m}x{n}")
    return (m + 2) * (n + 2) // 5 - 4


def _ceil(q: Fraction) -> int:
    return math.ceil(q)


def construction_upper(m: int, n: int, k: int = 1) -> int:
    nk = k_ball_size(k)
    if k == 1:
        return _ceil(Fraction((m + 2) * (n + 2), 5))
    return _ceil(Fraction((m + 2 * k) * (n + 2 * k), nk) + Fraction(nk, 4))


def diagonalization_upper(m: int, n: int, k: int = 1) -> int:
    nk = k_ball_size(k)
    if k == 1:
        return _ceil(Fraction(m * n, 5))
    return _ceil(Fraction(m * n, nk) + Fraction(nk, 4))


def packing_slack_upper(m: int, n: int, k: int = 1) -> int:
    nk = k_ball_size(k)
    return _ceil(Fraction(m * n, nk) + Fraction(nk, 4))


def packing_lower(m: int, n: int, k: int = 1) -> int:
    return _ceil(Fraction(m * n, k_ball_size(k)))


def bounds(g: GridSpec, k: int = 1) -> BoundsReport:
    try:
        gamma = gamma_formula(g.m, g.n) if k == 1 else None
    except FormulaNotApplicable:
        gamma = None
    upper = construction_upper(g.m, g.n, k)
    lower = packing_lower(g.m, g.n, k)
    return BoundsReport(
        m=g.m,
        n=g.n,
        k=k,
        gamma_exact_formula=gamma,
        construction_upper=upper,
        diag_cardinality_upper=diagonalization_upper(g.m, g.n, k),
        lower=lower,
        ratio_upper=Fraction(upper, lower),
    )


def ratio_trend(k: int, sizes: Sequence[int]) -> list[Fraction]:
    if any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise ValueError("sizes must be strictly increasing")
    return [bounds(GridSpec(s, s), k).ratio_upper for s in sizes]


__all__ = [
    "BoundsReport",
    "ConstructionResult",
    "DominationReport",
    "FormulaNotApplicable",
    "GridError",
    "bounds",
    "candidate_params",
    "construct",
    "construct_best",
    "construction_upper",
    "diagonalization_upper",
    "gamma_formula",
    "packing_slack_upper",
    "packing_lower",
    "ratio_trend",
    "verify_k_domination",
]
