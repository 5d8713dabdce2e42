"""Text renderings of a dominated grid: ASCII art and standalone SVG."""
from __future__ import annotations

from .construct import verify_k_domination
from .grid import GridSpec
from .io import SetDocument

MEMBER, ORPHAN, DOMINATED, UNDOMINATED = "D", "O", ".", "!"

_CELL = 24
_RADIUS = 7


class RenderError(ValueError):
    pass


def _classify(g: GridSpec, doc: SetDocument) -> dict:
    if (doc.m, doc.n) != (g.m, g.n):
        raise RenderError(f"document is {doc.m}x{doc.n}, grid is {g.m}x{g.n}")
    members = set(doc.vertices)
    orphans = set(doc.orphans) & members
    uncovered = set(verify_k_domination(g, members, doc.k).uncovered)
    out = {}
    for v in g.vertices():
        if v in orphans:
            out[v] = ORPHAN
        elif v in members:
            out[v] = MEMBER
        elif v in uncovered:
            out[v] = UNDOMINATED
        else:
            out[v] = DOMINATED
    return out


def render_ascii(g: GridSpec, doc: SetDocument) -> str:
    cells = _classify(g, doc)
    rows = []
    for y in range(g.n, 0, -1):
        rows.append("".join(cells[(x, y)] for x in range(1, g.m + 1)))
    return "\n".join(rows) + "\n"


_STYLE = {
    MEMBER: 'fill="#1f1f1f" stroke="#1f1f1f"',
    ORPHAN: 'fill="#2a7ab8" stroke="#2a7ab8"',
    DOMINATED: 'fill="#e4e4e4" stroke="#9a9a9a"',
    UNDOMINATED: 'fill="#ffffff" stroke="#d62728" stroke-width="2"',
}


def render_svg(g: GridSpec, doc: SetDocument) -> str:
    cells = _classify(g, doc)
    w, h = (g.m + 1) * _CELL, (g.n + 1) * _CELL
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" '
        f'viewBox="0 0 {w} {h}">',
        f'<rect width="{w}" height="{h}" fill="#ffffff"/>',
        '<g stroke="#c8c8c8" stroke-width="1">',
    ]
    for x in range(1, g.m + 1):
        out.append(f'<line x1="{x * _CELL}" y1="{_CELL}" x2="{x * _CELL}" y2="{g.n * _CELL}"/>')
    for y in range(1, g.n + 1):
        out.append(f'<line x1="{_CELL}" y1="{y * _CELL}" x2="{g.m * _CELL}" y2="{y * _CELL}"/>')
    out.append("</g>")
    for (x, y), glyph in cells.items():
        cx, cy = x * _CELL, (g.n - y + 1) * _CELL
        out.append(
            f'<circle cx="{cx}" cy="{cy}" r="{_RADIUS}" {_STYLE[glyph]} data-v="{x},{y}" '
            f'data-kind="{glyph}"/>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render(g: GridSpec, doc: SetDocument, style: str = "ascii") -> str:
    if style == "ascii":
        return render_ascii(g, doc)
    if style == "svg":
        return render_svg(g, doc)
    raise RenderError(f"unknown render style {style!r}")
