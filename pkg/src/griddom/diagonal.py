"""Diagonal patterns, diagonalization, orphans and projection.

A k-diagonal pattern is one residue class of ``k*y - (k+1)*x`` modulo the
k-ball size ``2k^2 + 2k + 1``. Taking the whole class on a grid gives a
diagonalization; taking it on the k-super-grid and mapping the outer ring
back inside gives a k-distance dominating set.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Optional

from .grid import (
    GridError,
    GridSpec,
    Vertex,
    VertexSet,
    embed,
    k_ball_size,
    manhattan_distance,
    super_grid,
    unembed,
    vertex_set,
)


class Orientation(enum.Enum):
    XY = "xy"
    SWAPPED = "swapped"


@dataclass(frozen=True)
class DiagonalParams:
    k: int = 1
    r: int = 0
    orientation: Orientation = Orientation.XY

    def __post_init__(self):
        modulus = k_ball_size(self.k)
        if not 0 <= self.r < modulus:
            raise ValueError(f"residue {self.r} outside [0, {modulus}) for k={self.k}")

    @property
    def modulus(self) -> int:
        return k_ball_size(self.k)


@dataclass(frozen=True)
class ProjectionResult:
    projected: VertexSet
    kept: VertexSet
    added: VertexSet
    dropped: VertexSet  # super-grid coordinates


def residue(v: Vertex, k: int = 1, orientation: Orientation = Orientation.XY) -> int:
    x, y = v
    if orientation is Orientation.SWAPPED:
        x, y = y, x
    return (k * y - (k + 1) * x) % k_ball_size(k)


def shift_residue(r: int, k: int, offset: int) -> int:
    """Residue of a class after translating every vertex by ``(offset, offset)``.

    Use ``offset=k`` to go from grid coordinates to k-super-grid coordinates.
    The shift is the same for both orientations.
    """
    return (r - offset) % k_ball_size(k)


def diagonalize(g: GridSpec, p: DiagonalParams) -> VertexSet:
    return tuple(
        v for v in g.vertices() if residue(v, p.k, p.orientation) == p.r
    )


def super_diagonalization(g: GridSpec, p: DiagonalParams) -> VertexSet:
    """Diagonalization of the k-super-grid of ``g``, in super-grid coordinates."""
    sg, _ = super_grid(g, p.k)
    return diagonalize(sg, p)


def friend(g: GridSpec, v: Vertex, k: int) -> Optional[Vertex]:
    """Nearest vertex of ``g`` to the outside point ``v`` if it lies within k.

    For the L1 metric the nearest box point is the coordinate-wise clamp and
    it is unique, so no tie-break is ever needed.
    """
    u = g.clamp(v)
    if manhattan_distance(u, v) <= k:
        return u
    return None


def project(g: GridSpec, super_set: Iterable[Vertex], k: int = 1) -> ProjectionResult:
    sg, off = super_grid(g, k)
    kept, added, dropped = set(), set(), set()
    for s in super_set:
        if s not in sg:
            raise GridError(f"{s} is outside the {sg.m}x{sg.n} super-grid")
        v = unembed(s, off)
        if v in g:
            kept.add(v)
            continue
        u = friend(g, v, k)
        if u is None:
            dropped.add(s)
        else:
            added.add(u)
    return ProjectionResult(
        projected=vertex_set(kept | added),
        kept=vertex_set(kept),
        added=vertex_set(added),
        dropped=vertex_set(dropped),
    )


def orphans(g: GridSpec, p: DiagonalParams) -> VertexSet:
    """Grid vertices not k-dominated by the in-grid part of the super-grid pattern."""
    off = p.k
    inner = [unembed(s, off) for s in super_diagonalization(g, p)]
    inner = [v for v in inner if v in g]
    covered = set()
    for c in inner:
        cx, cy = c
        for x in range(max(1, cx - p.k), min(g.m, cx + p.k) + 1):
            rest = p.k - abs(x - cx)
            for y in range(max(1, cy - rest), min(g.n, cy + rest) + 1):
                covered.add((x, y))
    return tuple(v for v in g.vertices() if v not in covered)


def coordinate_orphans(g: GridSpec, p: DiagonalParams) -> VertexSet:
    """Orphans restricted to the straight-line rule.

    Keeps only those deficiency orphans that sit within distance k of an
    outside pattern vertex sharing their x or y coordinate. This is the
    narrower characterization; diagonal corner cases drop out of it.
    """
    off = p.k
    outside = [unembed(s, off) for s in super_diagonalization(g, p)]
    outside = [w for w in outside if w not in g]
    keep = []
    for v in orphans(g, p):
        for w in outside:
            if (w[0] == v[0] or w[1] == v[1]) and manhattan_distance(v, w) <= p.k:
                keep.append(v)
                break
    return tuple(keep)


def to_super(g: GridSpec, vs: Iterable[Vertex], k: int) -> VertexSet:
    return vertex_set(embed(v, k) for v in vs)
