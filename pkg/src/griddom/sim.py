"""Deterministic epoch-by-epoch simulation of distributed grid domination.

One agent activates per epoch. The first one settles where it stands and
fixes the residue of the cluster; every later one walks (x first, then y)
to the nearest valid slot offered by the nearest settled agent that still
has slots. A valid slot inside the grid extends the cluster C; an orphan
standing in for a slot outside the grid goes into P.

With ``orphan_relay`` on (the default) an orphan-settled agent keeps
advertising the slots of the outside centre it stands in for. Without it
the cluster can only grow through in-grid centres, which strands part of
the residue class on thin grids (2 x n with k = 1, for instance) and the
run never dominates there, however many agents are available.
"""
from __future__ import annotations

import enum
import json
import random
from dataclasses import dataclass, field, replace
from typing import Iterable, Optional, Sequence, Union

from .construct import construction_upper, verify_k_domination
from .diagonal import friend, residue
from .grid import GridError, GridSpec, Vertex, VertexSet, manhattan_distance, vertex_set


class Mode(enum.Enum):
    SLEEP = "sleep"
    ACTIVE = "active"
    SETTLED = "settled"


class SettledKind(enum.Enum):
    CLUSTER = "cluster"
    ORPHAN = "orphan"


class EventKind(enum.Enum):
    ACTIVATED = "ACTIVATED"
    NO_SETTLED_FOUND = "NO_SETTLED_FOUND"
    SETTLED_FIRST = "SETTLED_FIRST"
    MOVED = "MOVED"
    SETTLED_CLUSTER = "SETTLED_CLUSTER"
    SETTLED_ORPHAN = "SETTLED_ORPHAN"
    VSLOTS_UPDATED = "VSLOTS_UPDATED"
    WENT_TO_SLEEP = "WENT_TO_SLEEP"
    HALTED = "HALTED"
    LEFT_GRID = "LEFT_GRID"


class SimulationError(RuntimeError):
    pass


@dataclass(frozen=True)
class RandomPlacement:
    seed: int


@dataclass(frozen=True)
class ExplicitPlacement:
    positions: tuple


@dataclass(frozen=True)
class RandomActivation:
    seed: int


@dataclass(frozen=True)
class FixedActivation:
    order: tuple


@dataclass(frozen=True)
class SimConfig:
    grid: GridSpec
    k: int = 1
    agent_count: int = 1
    placement: Union[RandomPlacement, ExplicitPlacement] = RandomPlacement(0)
    activation: Union[RandomActivation, FixedActivation] = RandomActivation(0)
    max_epochs: Optional[int] = None
    orphan_relay: bool = True

    @classmethod
    def seeded(cls, grid: GridSpec, agent_count: int, seed: int, k: int = 1, **kw) -> "SimConfig":
        return cls(grid, k, agent_count, RandomPlacement(seed), RandomActivation(seed), **kw)


@dataclass
class Agent:
    id: int
    pos: Vertex
    mode: Mode = Mode.SLEEP
    done: bool = False
    settled_kind: Optional[SettledKind] = None
    center: Optional[Vertex] = None  # module centre; outside the grid for orphans
    vslots: tuple = ()


@dataclass(frozen=True)
class SimEvent:
    epoch: int
    kind: EventKind
    agent: int
    pos: Optional[Vertex] = None
    path_len: Optional[int] = None
    detail: Optional[dict] = None

    def to_dict(self) -> dict:
        d = {"epoch": self.epoch, "kind": self.kind.value, "agent": self.agent}
        if self.pos is not None:
            d["pos"] = list(self.pos)
        if self.path_len is not None:
            d["path_len"] = self.path_len
        if self.detail is not None:
            d["detail"] = self.detail
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))


@dataclass
class SimState:
    config: SimConfig
    agents: list
    cluster: set = field(default_factory=set)  # C
    orphan_occupied: set = field(default_factory=set)  # P
    virtual_centers: set = field(default_factory=set)  # outside centres behind P
    roster: list = field(default_factory=list)  # A_s, in settling order
    queue: list = field(default_factory=list)  # activation order, unconsumed part
    epoch: int = 0
    move_steps: int = 0
    paths: list = field(default_factory=list)
    cluster_residue: Optional[int] = None
    halted: bool = False
    halt_reason: Optional[str] = None

    def copy(self) -> "SimState":
        return replace(
            self,
            agents=[replace(a) for a in self.agents],
            cluster=set(self.cluster),
            orphan_occupied=set(self.orphan_occupied),
            virtual_centers=set(self.virtual_centers),
            roster=list(self.roster),
            queue=list(self.queue),
            paths=list(self.paths),
        )

    @property
    def grid(self) -> GridSpec:
        return self.config.grid

    @property
    def occupied(self) -> VertexSet:
        return vertex_set(self.cluster | self.orphan_occupied)


@dataclass(frozen=True)
class RunResult:
    final: SimState
    events: list
    dominated: bool
    settled_count: int

    def trace_jsonl(self) -> str:
        return "".join(e.to_json() + "\n" for e in self.events)


def connection_offsets(k: int) -> list[tuple[int, int]]:
    return [(k, k + 1), (k + 1, -k), (-k, -k - 1), (-k - 1, k)]


def module_connectable(c1: Vertex, c2: Vertex, k: int = 1) -> bool:
    d = (c2[0] - c1[0], c2[1] - c1[1])
    return d in connection_offsets(k)


def _in_super(g: GridSpec, v: Vertex, k: int) -> bool:
    return 1 - k <= v[0] <= g.m + k and 1 - k <= v[1] <= g.n + k


def _can_host(state: SimState, agent: Agent) -> bool:
    if agent.mode is not Mode.SETTLED:
        return False
    if agent.settled_kind is SettledKind.CLUSTER:
        return True
    return agent.settled_kind is SettledKind.ORPHAN and state.config.orphan_relay


def slots_of(state: SimState, agent: Agent) -> VertexSet:
    """Connection offsets of the agent's module centre not yet used as centres.

    Coordinates are grid coordinates; slots may lie in the ring of width k
    around the grid.
    """
    if agent.settled_kind is None or (
        agent.settled_kind is SettledKind.ORPHAN and not state.config.orphan_relay
    ):
        raise SimulationError(f"agent {agent.id} does not host slots")
    k, g = state.config.k, state.grid
    cx, cy = agent.center
    taken = state.cluster | state.virtual_centers
    return vertex_set(
        s
        for s in ((cx + dx, cy + dy) for dx, dy in connection_offsets(k))
        if _in_super(g, s, k) and s not in taken
    )


def _valid_slot_map(state: SimState, agent: Agent) -> dict:
    g, k = state.grid, state.config.k
    blocked = state.cluster | state.orphan_occupied
    out = {}
    for s in slots_of(state, agent):
        target = s if s in g else friend(g, s, k)
        if target is not None and target not in blocked:
            out[target] = s
    return out


def valid_slots_of(state: SimState, agent: Agent) -> VertexSet:
    """In-grid slots plus the orphans of outside ones, minus occupied vertices."""
    return vertex_set(_valid_slot_map(state, agent))


def _placements(cfg: SimConfig) -> list[Vertex]:
    g = cfg.grid
    if isinstance(cfg.placement, ExplicitPlacement):
        pos = [tuple(p) for p in cfg.placement.positions]
        if len(pos) != cfg.agent_count:
            raise SimulationError(f"{len(pos)} positions given for {cfg.agent_count} agents")
        for p in pos:
            g.check(p)
        return pos
    rng = random.Random(f"placement:{cfg.placement.seed}")
    verts = list(g.vertices())
    return [rng.choice(verts) for _ in range(cfg.agent_count)]


def _activation_order(cfg: SimConfig) -> list[int]:
    ids = list(range(cfg.agent_count))
    if isinstance(cfg.activation, FixedActivation):
        order = list(cfg.activation.order)
        if len(set(order)) != len(order) or not set(order) <= set(ids):
            raise SimulationError("fixed activation order must list distinct agent ids")
        return order
    rng = random.Random(f"activation:{cfg.activation.seed}")
    rng.shuffle(ids)
    return ids


def init_sim(cfg: SimConfig) -> SimState:
    if cfg.agent_count < 1:
        raise SimulationError("need at least one agent")
    try:
        positions = _placements(cfg)
    except GridError as exc:
        raise SimulationError(str(exc)) from exc
    agents = [Agent(i, p) for i, p in enumerate(positions)]
    return SimState(config=cfg, agents=agents, queue=_activation_order(cfg))


def _x_then_y_path(a: Vertex, b: Vertex) -> list[Vertex]:
    path = []
    x, y = a
    sx = 1 if b[0] > x else -1
    while x != b[0]:
        x += sx
        path.append((x, y))
    sy = 1 if b[1] > y else -1
    while y != b[1]:
        y += sy
        path.append((x, y))
    return path


def _refresh(state: SimState, events: list) -> None:
    for aid in state.roster:
        a = state.agents[aid]
        if not _can_host(state, a):
            continue
        vs = valid_slots_of(state, a)
        if vs != a.vslots:
            a.vslots = vs
            events.append(SimEvent(state.epoch, EventKind.VSLOTS_UPDATED, a.id, a.pos,
                                   detail={"vslots": [list(v) for v in vs]}))
        if not vs:
            a.mode = Mode.SLEEP
            a.done = True
            events.append(SimEvent(state.epoch, EventKind.WENT_TO_SLEEP, a.id, a.pos))


def _saturated(state: SimState) -> bool:
    return not any(
        _can_host(state, state.agents[i]) and state.agents[i].vslots for i in state.roster
    )


def _finish_epoch(state: SimState, events: list) -> None:
    _refresh(state, events)
    if _saturated(state):
        _halt(state, events, "no_valid_slots")


def _halt(state: SimState, events: list, reason: str, active: Optional[Agent] = None) -> None:
    state.halted = True
    state.halt_reason = reason
    events.append(SimEvent(state.epoch, EventKind.HALTED, active.id if active else -1,
                           detail={"reason": reason}))
    leaving = ([active] if active else []) + [state.agents[i] for i in state.queue]
    for a in leaving:
        a.mode = Mode.SLEEP
        events.append(SimEvent(state.epoch, EventKind.LEFT_GRID, a.id, a.pos))
    state.queue.clear()


def step_epoch(state: SimState) -> tuple[SimState, list]:
    """Advance by one activation. Returns a new state; the input is untouched."""
    if state.halted:
        raise SimulationError("simulation already halted")
    s = state.copy()
    events: list = []
    cfg, g, k = s.config, s.grid, s.config.k
    if not s.queue:
        _halt(s, events, "agents_exhausted")
        return s, events
    if cfg.max_epochs is not None and s.epoch >= cfg.max_epochs:
        _halt(s, events, "epoch_cap")
        return s, events

    s.epoch += 1
    a = s.agents[s.queue.pop(0)]
    a.mode = Mode.ACTIVE
    events.append(SimEvent(s.epoch, EventKind.ACTIVATED, a.id, a.pos))

    if not s.roster:
        events.append(SimEvent(s.epoch, EventKind.NO_SETTLED_FOUND, a.id, a.pos))
        a.mode, a.settled_kind, a.center = Mode.SETTLED, SettledKind.CLUSTER, a.pos
        s.roster.append(a.id)
        s.cluster.add(a.pos)
        s.cluster_residue = residue(a.pos, k)
        s.paths.append(0)
        events.append(SimEvent(s.epoch, EventKind.SETTLED_FIRST, a.id, a.pos))
        _finish_epoch(s, events)
        return s, events

    hosts = [s.agents[i] for i in s.roster if _can_host(s, s.agents[i]) and s.agents[i].vslots]
    if not hosts:
        # unreachable from run(): saturation halts at the end of the previous epoch
        _halt(s, events, "no_valid_slots", a)
        return s, events

    host = min(hosts, key=lambda h: (manhattan_distance(a.pos, h.pos), h.pos, h.id))
    slot_map = _valid_slot_map(s, host)
    target = min(slot_map, key=lambda v: (manhattan_distance(a.pos, v), v))
    path = _x_then_y_path(a.pos, target)
    s.move_steps += len(path)
    s.paths.append(len(path))
    events.append(SimEvent(s.epoch, EventKind.MOVED, a.id, target, path_len=len(path),
                           detail={"from": list(a.pos), "host": host.id}))
    a.pos = target
    a.mode = Mode.SETTLED
    s.roster.append(a.id)
    if module_connectable(host.center, target, k):
        a.settled_kind, a.center = SettledKind.CLUSTER, target
        s.cluster.add(target)
        events.append(SimEvent(s.epoch, EventKind.SETTLED_CLUSTER, a.id, target))
    else:
        a.settled_kind, a.center = SettledKind.ORPHAN, slot_map[target]
        s.orphan_occupied.add(target)
        s.virtual_centers.add(slot_map[target])
        events.append(SimEvent(s.epoch, EventKind.SETTLED_ORPHAN, a.id, target,
                               detail={"stands_for": list(slot_map[target])}))
        if not cfg.orphan_relay:
            a.mode, a.done = Mode.SLEEP, True
            events.append(SimEvent(s.epoch, EventKind.WENT_TO_SLEEP, a.id, target))
    _finish_epoch(s, events)
    return s, events


def run(cfg: SimConfig) -> RunResult:
    state = init_sim(cfg)
    events: list = []
    while not state.halted:
        state, evs = step_epoch(state)
        events.extend(evs)
    report = verify_k_domination(cfg.grid, state.occupied, cfg.k)
    return RunResult(
        final=state,
        events=events,
        dominated=report.dominated,
        settled_count=len(state.occupied),
    )


def agents_needed_bound(g: GridSpec, k: int = 1) -> int:
    return construction_upper(g.m, g.n, k)


def write_trace(events: Iterable[SimEvent], path) -> None:
    with open(path, "w") as fh:
        for e in events:
            fh.write(e.to_json() + "\n")


def read_trace(path) -> list[dict]:
    with open(path) as fh:
        return [json.loads(line) for line in fh if line.strip()]
