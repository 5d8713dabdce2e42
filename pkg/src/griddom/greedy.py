"""Greedy domination baseline and the spacing-3 pattern that defeats it."""
from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from typing import Optional

from .grid import GridSpec, Vertex, VertexSet, closed_ball, vertex_set


class TieBreak(enum.Enum):
    LEX = "lex"
    RANDOM = "random"
    ADVERSARIAL = "adversarial"


@dataclass(frozen=True)
class GreedyConfig:
    tie_break: TieBreak = TieBreak.LEX
    seed: Optional[int] = None

    def __post_init__(self):
        if self.tie_break is TieBreak.RANDOM and self.seed is None:
            raise ValueError("RANDOM tie-break needs an explicit seed")


def greedy_worst_case_formula(m: int, n: int) -> int:
    return -(-m // 3) * -(-n // 3) + 2 * (m // 3) * (n // 3)


def _on_lattice(v: Vertex, phase: int) -> bool:
    return v[0] % 3 == phase % 3 and v[1] % 3 == phase % 3


def adversarial_pattern(g: GridSpec) -> VertexSet:
    """Spacing-3 square lattice from (1, 1) plus fill for the holes it leaves.

    Between four lattice points sits a 2x2 pocket nobody dominates; each one
    gets the anti-diagonal pair ``(3i+3, 3j+2), (3i+2, 3j+3)``, which also
    catches the stray cells on the far edges when m or n is a multiple of 3.
    Truncated pockets are filled greedily.
    """
    lattice = [v for v in g.vertices() if _on_lattice(v, 1)]
    extra = []
    for i in range(g.m // 3):
        for j in range(g.n // 3):
            extra += [(3 * i + 3, 3 * j + 2), (3 * i + 2, 3 * j + 3)]
    chosen = lattice + extra
    covered = set()
    for c in chosen:
        covered.update(closed_ball(g, c, 1))
    for v in g.vertices():
        if v in covered:
            continue
        pick = max(
            closed_ball(g, v, 1),
            key=lambda c: (sum(u not in covered for u in closed_ball(g, c, 1)), -c[0], -c[1]),
        )
        chosen.append(pick)
        covered.update(closed_ball(g, pick, 1))
    return vertex_set(chosen)


def greedy_dominate(g: GridSpec, cfg: GreedyConfig = GreedyConfig()) -> VertexSet:
    """Classic black/gray/white greedy for ordinary domination.

    Each step takes a white vertex whose pick newly dominates the most
    vertices (itself plus its white neighbours).
    """
    rng = random.Random(cfg.seed) if cfg.tie_break is TieBreak.RANDOM else None
    balls = {v: closed_ball(g, v, 1) for v in g.vertices()}
    white = set(balls)
    black = []
    while white:
        gains = {v: sum(u in white for u in balls[v]) for v in sorted(white)}
        best = max(gains.values())
        cands = [v for v, gain in gains.items() if gain == best]
        if cfg.tie_break is TieBreak.LEX:
            pick = cands[0]
        elif cfg.tie_break is TieBreak.RANDOM:
            pick = rng.choice(cands)
        else:
            # lattice shifted one step in, so lattice picks keep full gain early
            on = [v for v in cands if _on_lattice(v, 2)]
            pick = (on or cands)[0]
        black.append(pick)
        white.difference_update(balls[pick])
    return vertex_set(black)
