import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import QS, PS, spaces
from oracles import p_variation_oracle

from vmlab import (DiscreteProbabilitySpace, Partition, SimpleFunction,
                   SpaceDescriptor, VectorMeasure, dunford_norm,
                   enumerate_partitions, evaluate, holder_coefficients,
                   indefinite_integral, lp_norm, p_semivariation, p_variation,
                   partition_p_sum, pettis_example, scalar_p_variation,
                   semivariation_over_subset)
from vmlab.errors import DualNormViolation, IndexOutOfRange, SpaceMismatch, TooManyAtoms

L2 = SpaceDescriptor(2, 2.0)
U2 = DiscreteProbabilitySpace([0.5, 0.5])


def two_atom():
    return indefinite_integral(SimpleFunction(U2, L2, np.eye(2)))


def test_evaluate():
    nu = indefinite_integral(pettis_example(3))
    np.testing.assert_allclose(evaluate(nu, [0, 1]), [0.5, 0.25, 0.0])
    np.testing.assert_array_equal(evaluate(nu, []), np.zeros(3))
    with pytest.raises(IndexOutOfRange):
        evaluate(nu, [7])


def test_measure_arithmetic_and_shape_guard():
    nu = two_atom()
    np.testing.assert_allclose((nu + nu).atom_values, 2 * nu.atom_values)
    np.testing.assert_allclose((nu - nu).atom_values, 0)
    np.testing.assert_allclose((3 * nu).atom_values, 3 * nu.atom_values)
    with pytest.raises(SpaceMismatch):
        VectorMeasure(U2, L2, np.ones((3, 2)))


def test_partition_sums():
    nu = two_atom()
    assert partition_p_sum(nu, U2.coarsest(), 2) == pytest.approx(L2.norm([0.5, 0.5]))
    assert partition_p_sum(nu, U2.finest(), 2) == pytest.approx(1.0)
    assert partition_p_sum(nu, U2.coarsest(), 1) == pytest.approx(L2.norm([0.5, 0.5]))


@pytest.mark.parametrize("p", PS)
def test_single_atom_variation(p):
    nu = VectorMeasure(DiscreteProbabilitySpace([1.0]), L2, [[3.0, 4.0]])
    for method in ("finest", "brute", "holder_dual"):
        assert p_variation(nu, p, method) == pytest.approx(5.0)


def test_p1_variation_is_sum_of_norms():
    rng = np.random.default_rng(0)
    sp = DiscreteProbabilitySpace(rng.dirichlet(np.ones(5)))
    A = rng.standard_normal((5, 3))
    nu = VectorMeasure(sp, SpaceDescriptor(3, 1.0), A)
    assert p_variation(nu, 1) == pytest.approx(np.abs(A).sum())


def test_brute_guard():
    sp = DiscreteProbabilitySpace(np.full(9, 1 / 9))
    nu = VectorMeasure(sp, SpaceDescriptor(1), np.ones(9))
    with pytest.raises(TooManyAtoms):
        p_variation(nu, 2, "brute")
    with pytest.raises(ValueError):
        p_variation(nu, 2, "nope")


@settings(max_examples=40, deadline=None)
@given(spaces(max_n=6), st.sampled_from(QS), st.sampled_from(PS), st.integers(1, 3), st.data())
def test_variation_methods_match_oracle(space, q, p, d, data):
    A = np.array(data.draw(st.lists(st.floats(-3, 3), min_size=space.n * d,
                                    max_size=space.n * d))).reshape(space.n, d)
    nu = VectorMeasure(space, SpaceDescriptor(d, q), A)
    ref = p_variation_oracle(A, space.masses, q, p)
    for method in ("finest", "brute", "holder_dual"):
        assert p_variation(nu, p, method) == pytest.approx(ref, rel=1e-10, abs=1e-12)


@settings(max_examples=40, deadline=None)
@given(spaces(max_n=5), st.sampled_from(PS), st.data())
def test_refinement_increases_partition_sum(space, p, data):
    A = np.array(data.draw(st.lists(st.floats(-3, 3), min_size=2 * space.n,
                                    max_size=2 * space.n))).reshape(space.n, 2)
    nu = VectorMeasure(space, L2, A)
    from vmlab import is_refinement
    parts = list(enumerate_partitions(space))
    for P in parts:
        for Q in parts:
            if is_refinement(P, Q):
                assert partition_p_sum(nu, P, p) >= partition_p_sum(nu, Q, p) * (1 - 1e-12) - 1e-12


@settings(max_examples=40, deadline=None)
@given(spaces(max_n=6), st.sampled_from([1.0, 1.5, 2.0, 3.0]), st.data())
def test_holder_coefficients_attain_and_are_feasible(space, p, data):
    a = np.abs(np.array(data.draw(st.lists(st.floats(0, 3), min_size=space.n, max_size=space.n))))
    alpha = holder_coefficients(a, space.masses, p)
    pc = math.inf if p == 1 else p / (p - 1)
    # the coefficients, as a function constant on blocks, lie in the L^p' ball
    assert lp_norm(space, alpha, pc) <= 1 + 1e-12
    # and sum alpha_A a_A equals (sum a_A^p / m_A^(p-1))^(1/p)
    val = (np.sum(a ** p / space.masses ** (p - 1))) ** (1 / p)
    assert float(np.dot(alpha, a)) == pytest.approx(val, rel=1e-10, abs=1e-12)


def test_scalar_variation_is_lp_norm_of_density():
    sp = DiscreteProbabilitySpace([0.2, 0.3, 0.5])
    vals = np.array([0.1, -0.3, 0.25])
    assert scalar_p_variation(sp, vals, 3) == pytest.approx(lp_norm(sp, vals / sp.masses, 3))


def test_semivariation_examples():
    nu = two_atom()
    r = p_semivariation(nu, 2)
    assert r.value == pytest.approx(1 / math.sqrt(2))
    assert r.exact
    assert p_semivariation(0 * nu, 2).value == 0.0
    # scalar codomain: semivariation equals variation
    sp = DiscreteProbabilitySpace([0.3, 0.7])
    s = VectorMeasure(sp, SpaceDescriptor(1), [0.2, -0.5])
    assert p_semivariation(s, 1.5).value == pytest.approx(p_variation(s, 1.5))


@pytest.mark.parametrize("p", PS)
def test_semivariation_over_basis_functional(p):
    # single functional e_1 on nu = (e_1/2, e_2/2): (sum |nu_i(e_1)|^p / mu_i^(p-1))^(1/p)
    # = ((1/2)^p / (1/2)^(p-1))^(1/p) = (1/2)^(1/p)
    nu = two_atom()
    assert semivariation_over_subset(nu, p, [[1.0, 0.0]]) == pytest.approx(0.5 ** (1 / p))


def test_semivariation_over_subset_properties():
    nu = two_atom()
    w = p_semivariation(nu, 2)
    assert semivariation_over_subset(nu, 2, [w.witness]) == pytest.approx(w.value)
    small = semivariation_over_subset(nu, 2, [[1, 0]])
    big = semivariation_over_subset(nu, 2, [[1, 0], [0.6, 0.8]])
    assert small <= big
    with pytest.raises(DualNormViolation):
        semivariation_over_subset(nu, 2, [[2.0, 0.0]])


@settings(max_examples=40, deadline=None)
@given(spaces(max_n=6), st.sampled_from([1.0, math.inf]), st.sampled_from(PS), st.data())
def test_semivariation_equals_dunford_norm(space, q, p, data):
    vals = np.array(data.draw(st.lists(st.floats(-3, 3), min_size=2 * space.n,
                                       max_size=2 * space.n))).reshape(space.n, 2)
    f = SimpleFunction(space, SpaceDescriptor(2, q), vals)
    sv = p_semivariation(indefinite_integral(f), p)
    dn = dunford_norm(f, p)
    assert sv.exact and dn.exact
    assert sv.value == pytest.approx(dn.value, rel=1e-9, abs=1e-12)
    assert sv.value <= p_variation(indefinite_integral(f), p) * (1 + 1e-12) + 1e-12
