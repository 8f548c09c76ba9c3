import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import QS, PS, spaces

from vmlab import (DiscreteProbabilitySpace, LinearOperator, PietschCertificate,
                   SimpleFunction, SpaceDescriptor, VectorMeasure,
                   bochner_norm, compose_function, compose_measure,
                   dual_sphere, family_ratio, indefinite_integral,
                   operator_norm, p_variation, pi_p_estimate, pi_p_lower,
                   pietsch_lp_upper, primal_directions,
                   verify_composition_bound, verify_measure_bound)
from vmlab.errors import (DimensionMismatch, DualNormViolation, EmptyFamily,
                          FamilyNotCovered)

L2 = SpaceDescriptor(2, 2.0)


def test_operator_basics():
    u = LinearOperator(L2, SpaceDescriptor(3, 1), np.arange(6).reshape(3, 2))
    np.testing.assert_allclose(u([1.0, 1.0]), [1, 5, 9])
    with pytest.raises(DimensionMismatch):
        LinearOperator(L2, L2, np.ones(3))


def test_family_ratio_examples():
    u = LinearOperator.identity(L2)
    assert family_ratio(u, np.eye(2), 2) == pytest.approx(math.sqrt(2))
    v = LinearOperator(L2, L2, [[2.0, 0.0], [0.0, 1.0]])
    assert family_ratio(v, [[3.0, 4.0]], 2) == pytest.approx(np.linalg.norm([6, 4]) / 5)
    with pytest.raises(EmptyFamily):
        family_ratio(u, np.zeros((0, 2)), 2)


@pytest.mark.parametrize("qx", QS)
@pytest.mark.parametrize("qy", QS)
def test_operator_norm_against_sampling(qx, qy):
    rng = np.random.default_rng(1)
    X, Y = SpaceDescriptor(2, qx), SpaceDescriptor(2, qy)
    u = LinearOperator(X, Y, rng.standard_normal((2, 2)))
    val, x, _ = operator_norm(u)
    t = np.linspace(0, 2 * np.pi, 20000, endpoint=False)
    S = np.column_stack([np.cos(t), np.sin(t)])
    S = S / np.atleast_1d(X.norm(S))[:, None]
    ref = np.atleast_1d(Y.norm(S @ u.entries.T)).max()
    assert val >= ref - 1e-9
    assert val <= ref * 1.001
    assert X.norm(x) == pytest.approx(1.0)


def test_pi_p_lower_examples():
    assert pi_p_lower(LinearOperator(L2, L2, np.zeros((2, 2))), 2).value == 0.0
    for d in range(1, 6):
        D = SpaceDescriptor(d)
        assert pi_p_lower(LinearOperator.identity(D), 2).value >= math.sqrt(d) - 1e-9


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 3), st.sampled_from(QS), st.sampled_from(QS), st.integers(0, 10_000))
def test_rank_one_lower_bound(d, qx, qy, seed):
    rng = np.random.default_rng(seed)
    X, Y = SpaceDescriptor(d, qx), SpaceDescriptor(2, qy)
    a, y = rng.standard_normal(d), rng.standard_normal(2)
    u = LinearOperator.rank_one(X, Y, a, y)
    target = Y.norm(y) * X.dual_norm(a)
    low = pi_p_lower(u, 2, restarts=2, steps=5).value
    assert low >= target * (1 - 1e-9)


def test_pietsch_zero_and_rank_one():
    S = dual_sphere(L2, 64)
    T = primal_directions(L2, 32)
    zero = pietsch_lp_upper(LinearOperator(L2, L2, np.zeros((2, 2))), 2, S, T)
    assert zero.constant == 0.0
    # rank one with a*/||a*|| on the sphere: C = ||y|| ||a*||
    a = np.array([0.6, 0.8]) * 2.0
    y = np.array([1.0, -3.0])
    u = LinearOperator.rank_one(L2, L2, a, y)
    cert = pietsch_lp_upper(u, 2, np.vstack([S, a / 2.0]), T)
    assert cert.constant == pytest.approx(np.linalg.norm(y) * 2.0, rel=1e-7)
    assert cert.violation(u) <= 1e-9


def test_pietsch_identity_circle():
    u = LinearOperator.identity(L2)
    t = 2 * np.pi * np.arange(360) / 360
    S = np.column_stack([np.cos(t), np.sin(t)])
    T = primal_directions(L2, 64)
    cert = pietsch_lp_upper(u, 2, S, T)
    assert math.sqrt(2) - 1e-9 <= cert.constant <= 1.05 * math.sqrt(2)
    assert cert.weights.sum() == pytest.approx(1.0)
    assert np.all(cert.weights >= 0)


def test_pietsch_guards():
    u = LinearOperator.identity(L2)
    with pytest.raises(DualNormViolation):
        pietsch_lp_upper(u, 2, [[2.0, 0.0]], [[1.0, 0.0]])
    with pytest.raises(EmptyFamily):
        pietsch_lp_upper(u, 2, dual_sphere(L2, 8), np.zeros((0, 2)))


def test_estimate_brackets():
    u = LinearOperator(L2, SpaceDescriptor(2, 1), [[1.0, 2.0], [0.0, 1.0]])
    est = pi_p_estimate(u, 2, sphere_count=400, test_count=32)
    assert est.lower <= est.upper + 1e-9


def test_compositions():
    sp = DiscreteProbabilitySpace([0.25, 0.75])
    f = SimpleFunction(sp, L2, [[1.0, 2.0], [3.0, -1.0]])
    I = LinearOperator.identity(L2)
    np.testing.assert_allclose(compose_function(I, f).values, f.values)
    Z = LinearOperator(L2, SpaceDescriptor(3), np.zeros((3, 2)))
    np.testing.assert_array_equal(compose_function(Z, f).values, 0)
    nu = indefinite_integral(f)
    np.testing.assert_allclose(compose_measure(I, nu).atom_values, nu.atom_values)
    np.testing.assert_array_equal(compose_measure(I, 0 * nu).atom_values, 0)
    # u o nu_f = nu_{u o f}
    u = LinearOperator(L2, SpaceDescriptor(3, 1), np.arange(6.0).reshape(3, 2))
    np.testing.assert_allclose(compose_measure(u, nu).atom_values,
                               indefinite_integral(compose_function(u, f)).atom_values)


def _cert_for(u, rows, p, extra=16):
    T = np.concatenate([rows, primal_directions(u.domain, extra)])
    return pietsch_lp_upper(u, p, dual_sphere(u.domain, 200), T)


@settings(max_examples=25, deadline=None)
@given(spaces(max_n=4), st.sampled_from(QS), st.sampled_from(QS), st.sampled_from(PS),
       st.integers(0, 10_000))
def test_composition_bound_holds(space, qx, qy, p, seed):
    rng = np.random.default_rng(seed)
    u = LinearOperator(SpaceDescriptor(2, qx), SpaceDescriptor(2, qy), rng.standard_normal((2, 2)))
    f = SimpleFunction(space, u.domain, rng.standard_normal((space.n, 2)))
    cert = _cert_for(u, space.masses[:, None] ** (1 / p) * f.values, p)
    rep = verify_composition_bound(u, f, p, cert)
    assert rep.holds and rep.slack >= -1e-9
    assert rep.lhs == pytest.approx(bochner_norm(compose_function(u, f), p))


@settings(max_examples=25, deadline=None)
@given(spaces(max_n=4), st.sampled_from(QS), st.sampled_from(QS), st.sampled_from(PS),
       st.integers(0, 10_000))
def test_measure_bound_holds(space, qx, qy, p, seed):
    rng = np.random.default_rng(seed)
    u = LinearOperator(SpaceDescriptor(2, qx), SpaceDescriptor(2, qy), rng.standard_normal((2, 2)))
    nu = VectorMeasure(space, u.domain, rng.standard_normal((space.n, 2)))
    cert = _cert_for(u, nu.atom_values / space.masses[:, None] ** (1 - 1 / p), p)
    rep = verify_measure_bound(u, nu, p, cert)
    assert rep.holds and rep.slack >= -1e-9
    assert rep.lhs == pytest.approx(p_variation(compose_measure(u, nu), p))


def test_uncovered_family_is_rejected():
    sp = DiscreteProbabilitySpace([0.5, 0.5])
    u = LinearOperator.identity(L2)
    f = SimpleFunction(sp, L2, [[1.0, 2.0], [3.0, -1.0]])
    cert = pietsch_lp_upper(u, 2, dual_sphere(L2, 64), primal_directions(L2, 8))
    with pytest.raises(FamilyNotCovered):
        verify_composition_bound(u, f, 2, cert)


def test_certificate_family_hash_stable():
    u = LinearOperator.identity(L2)
    T = primal_directions(L2, 8)
    a = pietsch_lp_upper(u, 2, dual_sphere(L2, 32), T)
    b = pietsch_lp_upper(u, 2, dual_sphere(L2, 32), T.copy())
    assert a.family_hash() == b.family_hash()
    assert isinstance(a, PietschCertificate)
