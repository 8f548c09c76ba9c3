import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from vmlab import (DiscreteProbabilitySpace, SimpleFunction, SpaceDescriptor,
                   ThicknessInstance, dunford_norm, thickness_chain_profile,
                   thickness_norm_bound, thickness_radius)
from vmlab.errors import DimensionTooLarge, MissingChain, NotNorming, SpaceMismatch, VMLabError

L2 = SpaceDescriptor(2, 2.0)
CROSS = [[1, 0], [-1, 0], [0, 1], [0, -1]]


def sweep(desc, G, count=200_000):
    # min over a fine circle of max_g |<g, x>| / ||x||
    t = np.linspace(0, 2 * np.pi, count, endpoint=False)
    U = np.column_stack([np.cos(t), np.sin(t)])
    N = np.abs((U * desc.w) @ np.asarray(G, dtype=float).T).max(axis=1)
    return float((N / np.atleast_1d(desc.norm(U))).min())


def test_cross_radius():
    r = thickness_radius(ThicknessInstance(L2, CROSS))
    assert r.exact and r.lower == pytest.approx(1 / math.sqrt(2), abs=1e-12)
    assert L2.norm(r.witness) == pytest.approx(1.0)


def test_non_norming_and_scaling():
    assert thickness_radius(ThicknessInstance(L2, [[1, 0]])).lower == pytest.approx(0.0, abs=1e-15)
    inst = ThicknessInstance(L2, [[1, 0.3], [0.2, -1], [0.7, 0.7]])
    r = thickness_radius(inst).lower
    assert thickness_radius(inst.scaled(2.5)).lower == pytest.approx(2.5 * r)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 5), st.sampled_from([1.0, 1.5, 2.0, 3.0, math.inf]), st.integers(0, 10_000))
def test_exact_2d_against_sweep(k, q, seed):
    rng = np.random.default_rng(seed)
    D = SpaceDescriptor(2, q)
    G = rng.standard_normal((k, 2))
    r = thickness_radius(ThicknessInstance(D, G))
    ref = sweep(D, G)
    assert r.lower <= ref + 1e-12
    # the sweep overestimates the minimum by at most about one grid step
    assert r.lower == pytest.approx(ref, rel=1e-6, abs=1e-4 * np.abs(G).max())


@pytest.mark.parametrize("q", [1.0, 2.0, math.inf])
def test_grid_bounds_3d(q):
    D = SpaceDescriptor(3, q)
    G = np.vstack([np.eye(3), -np.eye(3)])
    r = thickness_radius(ThicknessInstance(D, G), grid_eps=0.02)
    assert not r.exact and r.lower <= r.upper
    # the exact value for the cross in l_2^3 is 1/sqrt(3)
    if q == 2.0:
        assert r.lower <= 1 / math.sqrt(3) <= r.upper + 1e-12
        assert r.upper - r.lower < 0.05


def test_dimension_guard():
    with pytest.raises(DimensionTooLarge):
        thickness_radius(ThicknessInstance(SpaceDescriptor(5), np.eye(5)))


def test_chain_profile():
    inst = ThicknessInstance.from_stages(L2, [[[1, 0], [-1, 0]], [[0, 1], [0, -1]]])
    prof = thickness_chain_profile(inst)
    assert prof[0] == pytest.approx(0.0, abs=1e-15)
    assert prof[1] == pytest.approx(1 / math.sqrt(2))
    const = ThicknessInstance.from_stages(L2, [CROSS, [[0.5, 0.5]]])
    p = thickness_chain_profile(const)
    assert p[0] > 0 and p[1] == pytest.approx(p[0])
    with pytest.raises(MissingChain):
        thickness_chain_profile(ThicknessInstance(L2, CROSS))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_nested_chain_profile_nondecreasing(seed):
    rng = np.random.default_rng(seed)
    stages = [rng.standard_normal((int(rng.integers(1, 3)), 2)) for _ in range(4)]
    prof = thickness_chain_profile(ThicknessInstance.from_stages(L2, stages))
    assert all(a <= b + 1e-12 for a, b in zip(prof, prof[1:]))


def test_chain_validation():
    with pytest.raises(VMLabError):
        ThicknessInstance(L2, CROSS, chain=[[0, 1, 2, 3], [0, 1]])
    with pytest.raises(VMLabError):
        ThicknessInstance(L2, CROSS, chain=[[0, 1]])


def test_norm_bound():
    sp = DiscreteProbabilitySpace([0.5, 0.5])
    inst = ThicknessInstance(L2, CROSS)
    zero = SimpleFunction(sp, L2, np.zeros((2, 2)))
    rep = thickness_norm_bound(zero, inst, 2)
    assert rep.bound == 0.0 and rep.holds
    with pytest.raises(NotNorming):
        thickness_norm_bound(zero, ThicknessInstance(L2, [[1, 0]]), 2)
    with pytest.raises(SpaceMismatch):
        thickness_norm_bound(SimpleFunction(sp, SpaceDescriptor(2, 1), np.zeros((2, 2))), inst, 2)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 6), st.sampled_from([1.0, 1.5, 2.0, 3.0]), st.integers(0, 10_000))
def test_norm_bound_random(n, p, seed):
    rng = np.random.default_rng(seed)
    sp = DiscreteProbabilitySpace(rng.dirichlet(np.ones(n)) + 0.0)
    D = SpaceDescriptor(3, 2.0)
    f = SimpleFunction(sp, D, rng.standard_normal((n, 3)))
    G = np.vstack([np.eye(3), rng.standard_normal((3, 3))])
    rep = thickness_norm_bound(f, ThicknessInstance(D, G), p, grid_eps=0.05)
    assert rep.holds
    assert rep.dunford == pytest.approx(dunford_norm(f, p).value)
