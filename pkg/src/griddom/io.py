"""JSON documents for vertex sets."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Union

from .grid import GridError, GridSpec, Vertex, VertexSet, vertex_set


class DocumentError(ValueError):
    """Malformed or inconsistent set document."""


@dataclass(frozen=True)
class SetDocument:
    m: int
    n: int
    k: int
    vertices: VertexSet
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        try:
            g = GridSpec(self.m, self.n)
        except GridError as exc:
            raise DocumentError(str(exc)) from exc
        if self.k < 1:
            raise DocumentError(f"k must be >= 1, got {self.k}")
        canon = vertex_set(self.vertices)
        bad = [v for v in canon if v not in g]
        if bad:
            raise DocumentError(f"vertices outside {self.m}x{self.n} grid: {bad[:5]}")
        object.__setattr__(self, "vertices", canon)

    @property
    def grid(self) -> GridSpec:
        return GridSpec(self.m, self.n)

    @property
    def orphans(self) -> VertexSet:
        return vertex_set(tuple(v) for v in self.meta.get("orphans", []))

    @classmethod
    def build(cls, g: GridSpec, k: int, vertices: Iterable[Vertex], **meta) -> "SetDocument":
        # round-trip meta through JSON so documents compare equal after reload
        return cls(g.m, g.n, k, vertex_set(vertices), json.loads(json.dumps(meta)))

    def to_dict(self) -> dict:
        d = {
            "m": self.m,
            "n": self.n,
            "k": self.k,
            "vertices": [list(v) for v in self.vertices],
        }
        if self.meta:
            d["meta"] = self.meta
        return d

    def to_json(self, indent=None) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "SetDocument":
        try:
            verts = tuple((int(x), int(y)) for x, y in d["vertices"])
            return cls(int(d["m"]), int(d["n"]), int(d.get("k", 1)), verts, d.get("meta", {}) or {})
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, DocumentError):
                raise
            raise DocumentError(f"bad set document: {exc}") from exc

    @classmethod
    def from_json(cls, text: str) -> "SetDocument":
        try:
            d = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DocumentError(f"invalid JSON: {exc}") from exc
        if not isinstance(d, dict):
            raise DocumentError("set document must be a JSON object")
        return cls.from_dict(d)

    @classmethod
    def load(cls, path: Union[str, Path]) -> "SetDocument":
        return cls.from_json(Path(path).read_text())

    def dump(self, path: Union[str, Path]) -> None:
        Path(path).write_text(self.to_json(indent=None) + "\n")
