import itertools
import math

import pytest
from hypothesis import given, settings, strategies as st

from brute import dist
from griddom.construct import construct
from griddom.diagonal import DiagonalParams, diagonalize, shift_residue
from griddom.grid import GridSpec
from griddom.sim import (
    EventKind,
    ExplicitPlacement,
    FixedActivation,
    Mode,
    SimConfig,
    SimulationError,
    agents_needed_bound,
    connection_offsets,
    init_sim,
    module_connectable,
    read_trace,
    run,
    slots_of,
    step_epoch,
    valid_slots_of,
    write_trace,
)


def explicit(g, positions, order=None, **kw):
    order = tuple(range(len(positions))) if order is None else tuple(order)
    return SimConfig(g, kw.pop("k", 1), len(positions), ExplicitPlacement(tuple(positions)),
                     FixedActivation(order), **kw)


def test_connection_offsets():
    assert connection_offsets(1) == [(1, 2), (2, -1), (-1, -2), (-2, 1)]
    assert module_connectable((3, 3), (4, 5))
    assert not module_connectable((3, 3), (5, 4))
    assert module_connectable((5, 5), (7, 8), 2)


def test_first_agent_slots_on_5x5():
    g = GridSpec(5, 5)
    state, events = step_epoch(init_sim(explicit(g, [(1, 2), (5, 5)])))
    first = state.agents[0]
    assert [e.kind for e in events][:3] == [
        EventKind.ACTIVATED, EventKind.NO_SETTLED_FOUND, EventKind.SETTLED_FIRST]
    assert slots_of(state, first) == ((0, 0), (2, 4), (3, 1))
    assert valid_slots_of(state, first) == ((2, 4), (3, 1)) == first.vslots


def test_second_agent_walks_to_nearest_slot():
    g = GridSpec(5, 5)
    state = init_sim(explicit(g, [(1, 2), (5, 5)]))
    state, _ = step_epoch(state)
    after, events = step_epoch(state)
    moved = [e for e in events if e.kind is EventKind.MOVED][0]
    assert moved.pos == (2, 4) and moved.path_len == 4
    assert after.cluster == {(1, 2), (2, 4)}
    # the input state is left alone
    assert state.cluster == {(1, 2)}
    assert state.agents[1].pos == (5, 5)


def test_step_after_halt_raises():
    res = run(explicit(GridSpec(1, 1), [(1, 1)]))
    assert res.final.halted
    with pytest.raises(SimulationError):
        step_epoch(res.final)


def test_single_vertex_grid():
    res = run(explicit(GridSpec(1, 1), [(1, 1), (1, 1)]))
    assert res.dominated and res.settled_count == 1
    kinds = [e.kind for e in res.events]
    assert kinds[-2:] == [EventKind.HALTED, EventKind.LEFT_GRID]
    assert res.final.agents[1].mode is Mode.SLEEP


def test_too_few_agents():
    res = run(SimConfig.seeded(GridSpec(10, 10), 3, seed=1))
    assert not res.dominated
    assert res.final.halt_reason == "agents_exhausted"


def test_epoch_cap():
    res = run(SimConfig.seeded(GridSpec(8, 8), 30, seed=2, max_epochs=4))
    assert res.final.halt_reason == "epoch_cap"
    assert res.final.epoch == 4


def test_bad_configs():
    g = GridSpec(3, 3)
    with pytest.raises(SimulationError):
        init_sim(SimConfig(g, 1, 2, ExplicitPlacement(((1, 1),)), FixedActivation((0, 1))))
    with pytest.raises(SimulationError):
        init_sim(explicit(g, [(1, 1), (4, 4)]))
    with pytest.raises(SimulationError):
        init_sim(explicit(g, [(1, 1), (2, 2)], order=(0, 0)))
    with pytest.raises(SimulationError):
        init_sim(SimConfig.seeded(g, 0, seed=0))


def test_literal_mode_strands_thin_grid():
    g = GridSpec(2, 12)
    n = agents_needed_bound(g) + 10
    assert not run(SimConfig.seeded(g, n, seed=0, orphan_relay=False)).dominated
    assert run(SimConfig.seeded(g, n, seed=0)).dominated


@given(st.integers(1, 12), st.integers(1, 12), st.sampled_from([1, 1, 2, 3]), st.integers(0, 10 ** 6))
@settings(max_examples=40, deadline=None)
def test_agrees_with_centralized_construction(m, n, k, seed):
    g = GridSpec(m, n)
    res = run(SimConfig.seeded(g, m * n + 5, seed, k))
    st_ = res.final
    r = st_.cluster_residue
    assert res.dominated
    assert st_.cluster == set(diagonalize(g, DiagonalParams(k, r)))
    central = construct(g, DiagonalParams(k, shift_residue(r, k, k)))
    assert set(st_.occupied) == set(central.dominating_set)


@given(st.integers(2, 14), st.integers(2, 14), st.sampled_from([1, 2]), st.integers(0, 10 ** 6))
@settings(max_examples=40, deadline=None)
def test_cluster_is_one_congruent_packing(m, n, k, seed):
    g = GridSpec(m, n)
    res = run(SimConfig.seeded(g, agents_needed_bound(g, k), seed, k))
    st_ = res.final
    big = 2 * k * k + 2 * k + 1
    assert {(k * y - (k + 1) * x) % big for x, y in st_.cluster} == {st_.cluster_residue}
    for u, v in itertools.combinations(st_.cluster, 2):
        assert dist(u, v) >= 2 * k + 1
    assert not st_.cluster & st_.orphan_occupied


@given(st.integers(2, 12), st.integers(2, 12), st.integers(0, 10 ** 6))
@settings(max_examples=30, deadline=None)
def test_paths_and_steps_bounded(m, n, seed):
    g = GridSpec(m, n)
    res = run(SimConfig.seeded(g, math.ceil((m + 2) * (n + 2) / 5), seed))
    assert all(p <= m + n for p in res.final.paths)
    assert res.final.move_steps <= m * n * (m + n)
    moved = [e.path_len for e in res.events if e.kind is EventKind.MOVED]
    assert sum(moved) == res.final.move_steps


def test_trace_is_deterministic(tmp_path):
    cfg = SimConfig.seeded(GridSpec(9, 11), 35, seed=42)
    a, b = run(cfg), run(cfg)
    assert a.trace_jsonl() == b.trace_jsonl()
    assert run(SimConfig.seeded(GridSpec(9, 11), 35, seed=43)).trace_jsonl() != a.trace_jsonl()
    path = tmp_path / "t.jsonl"
    write_trace(a.events, path)
    assert path.read_text() == a.trace_jsonl()
    assert read_trace(path) == [e.to_dict() for e in a.events]


def test_event_json_is_canonical():
    res = run(explicit(GridSpec(1, 1), [(1, 1)]))
    line = res.trace_jsonl().splitlines()[0]
    assert line == '{"agent":0,"epoch":1,"kind":"ACTIVATED","pos":[1,1]}'
