import itertools

import pytest
from hypothesis import given, settings, strategies as st

from brute import dist, residue_class, verts
from griddom.diagonal import (
    DiagonalParams,
    Orientation,
    coordinate_orphans,
    diagonalize,
    friend,
    orphans,
    project,
    residue,
    shift_residue,
    super_diagonalization,
    to_super,
)
from griddom.grid import GridError, GridSpec, boundary, k_ball_size, super_grid, unembed

small = st.integers(1, 14)
ks = st.integers(1, 4)


def test_residue_examples():
    assert residue((3, 3), 2) == 10
    assert residue((1, 2), 1) == 0
    assert residue((2, 1), 1, Orientation.SWAPPED) == 0


def test_diagonalize_5x5():
    assert diagonalize(GridSpec(5, 5), DiagonalParams(1, 0)) == ((1, 2), (2, 4), (3, 1), (4, 3), (5, 5))


def test_params_reject_bad_residue():
    with pytest.raises(ValueError):
        DiagonalParams(1, 5)
    with pytest.raises(ValueError):
        DiagonalParams(2, -1)


@given(small, small, ks, st.data())
def test_diagonalize_matches_enumeration(m, n, k, data):
    r = data.draw(st.integers(0, k_ball_size(k) - 1))
    got = diagonalize(GridSpec(m, n), DiagonalParams(k, r))
    assert list(got) == residue_class(range(1, m + 1), range(1, n + 1), k, r)


@given(small, small, ks, st.data())
def test_swapped_is_transpose(m, n, k, data):
    r = data.draw(st.integers(0, k_ball_size(k) - 1))
    a = diagonalize(GridSpec(m, n), DiagonalParams(k, r, Orientation.SWAPPED))
    b = diagonalize(GridSpec(n, m), DiagonalParams(k, r))
    assert sorted((y, x) for x, y in b) == list(a)


@given(small, small, ks, st.data())
@settings(max_examples=60)
def test_residue_classes_are_packings(m, n, k, data):
    r = data.draw(st.integers(0, k_ball_size(k) - 1))
    pat = diagonalize(GridSpec(m, n), DiagonalParams(k, r))
    for u, v in itertools.combinations(pat, 2):
        assert dist(u, v) >= 2 * k + 1


@given(st.integers(1, 10), st.integers(1, 10), st.integers(1, 3), st.data())
@settings(max_examples=60)
def test_super_pattern_covers_grid_exactly_once(m, n, k, data):
    g = GridSpec(m, n)
    r = data.draw(st.integers(0, k_ball_size(k) - 1))
    centers = [unembed(s, k) for s in super_diagonalization(g, DiagonalParams(k, r))]
    for v in verts(m, n):
        assert sum(dist(v, c) <= k for c in centers) == 1


@given(small, small, ks)
def test_shift_residue_tracks_translation(m, n, k):
    g = GridSpec(m, n)
    for r in range(k_ball_size(k)):
        in_grid = diagonalize(g, DiagonalParams(k, r))
        sg, _ = super_grid(g, k)
        shifted = set(diagonalize(sg, DiagonalParams(k, shift_residue(r, k, k))))
        assert set(to_super(g, in_grid, k)) <= shifted


def test_class_sizes_on_12x12_super_grid():
    # residue class sizes on the 12x12 super-grid of a 10x10 grid
    g = GridSpec(10, 10)
    sizes = {r: len(super_diagonalization(g, DiagonalParams(1, r))) for r in range(5)}
    assert sizes == {0: 29, 1: 28, 2: 29, 3: 29, 4: 29}
    for r in range(5):
        u = super_diagonalization(g, DiagonalParams(1, r))
        res = project(g, u, 1)
        assert len(res.projected) == 28
        assert len(u) - 4 <= len(res.projected) <= len(u)


def test_friend_is_clamp_within_k():
    g = GridSpec(4, 4)
    assert friend(g, (0, 2), 1) == (1, 2)
    assert friend(g, (0, 0), 1) is None
    assert friend(g, (0, 0), 2) == (1, 1)
    assert friend(g, (6, 5), 3) == (4, 4)


@given(st.integers(1, 10), st.integers(1, 10), st.integers(1, 4), st.data())
def test_friend_is_nearest(m, n, k, data):
    g = GridSpec(m, n)
    v = (data.draw(st.integers(1 - k, m + k)), data.draw(st.integers(1 - k, n + k)))
    u = friend(g, v, k)
    best = min(dist(v, w) for w in verts(m, n))
    if best > k:
        assert u is None
    else:
        assert dist(v, u) == best
        assert [w for w in verts(m, n) if dist(v, w) == best] == [u]


def test_project_rejects_outside_super_grid():
    with pytest.raises(GridError):
        project(GridSpec(3, 3), [(7, 1)], 1)


def test_orphans_6x6():
    assert orphans(GridSpec(6, 6), DiagonalParams(1, 0)) == ((1, 1), (1, 6), (2, 1), (3, 6), (6, 5))


@given(st.integers(1, 12), st.integers(1, 12), st.data())
def test_k1_orphans_are_projection_images(m, n, data):
    g = GridSpec(m, n)
    p = DiagonalParams(1, data.draw(st.integers(0, 4)))
    res = project(g, super_diagonalization(g, p), 1)
    assert orphans(g, p) == res.added
    assert set(orphans(g, p)) <= set(boundary(g))


@given(st.integers(1, 12), st.integers(1, 12), st.integers(1, 3), st.data())
def test_orphans_lie_near_boundary(m, n, k, data):
    g = GridSpec(m, n)
    p = DiagonalParams(k, data.draw(st.integers(0, k_ball_size(k) - 1)))
    for v in orphans(g, p):
        assert min(v[0] - 1, m - v[0], v[1] - 1, n - v[1]) < k
    assert set(coordinate_orphans(g, p)) <= set(orphans(g, p))


@given(st.integers(1, 12), st.integers(1, 12), st.integers(1, 3), st.data())
def test_projection_covers_grid(m, n, k, data):
    g = GridSpec(m, n)
    p = DiagonalParams(k, data.draw(st.integers(0, k_ball_size(k) - 1)))
    res = project(g, super_diagonalization(g, p), k)
    # only far corner points are dropped, and they reach nothing inside
    for s in res.dropped:
        assert all(dist(unembed(s, k), v) > k for v in verts(m, n))
    assert set(res.projected) == set(res.kept) | set(res.added)
    centers = set(res.projected)
    assert all(any(dist(v, c) <= k for c in centers) for v in verts(m, n))
