"""Linear operators between descriptors and estimates of their p-summing norm.

Lower bounds come straight from the definition: any finite family gives
``(sum ||u x_i||^p)^(1/p) / sup_{x* in B} (sum |<x_i, x*>|^p)^(1/p) <= pi_p(u)``.

Upper estimates solve a Pietsch-domination linear program over a finite set
of dual unit vectors: find t >= 0 of least total mass with
``sum_j t_j |<x, x*_j>|^p >= ||u x||^p`` for every x in a test family. The
resulting constant dominates only on that test family; it approaches pi_p(u)
as both sets are refined, but is not a global certificate.
"""
from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linprog

from .dunford import SimpleFunction, bochner_norm, dunford_norm
from .errors import (DescriptorMismatch, DimensionMismatch, DualNormViolation,
                     EmptyFamily, FamilyNotCovered, InfeasibleLP, ZeroFamily)
from .normed import (EXACT, HEURISTIC, MAX_SIGN_DIM, SpaceDescriptor,
                     maximize_p_moment, p_moment, sphere_directions)
from .space import _check_p
from .variation import VectorMeasure, p_semivariation, p_variation

__all__ = ["LinearOperator", "PietschCertificate", "SummingLower",
           "SummingEstimate", "CompositionReport", "family_ratio",
           "operator_norm", "pi_p_lower", "pietsch_lp_upper", "pi_p_estimate",
           "dual_sphere", "primal_directions", "compose_function",
           "compose_measure", "verify_composition_bound",
           "verify_measure_bound", "SEARCH_RESTARTS", "CERT_TOL"]

SEARCH_RESTARTS = 16
SEARCH_STEPS = 25
CERT_TOL = 1e-9
SPHERE_TOL = 1e-9


class LinearOperator:
    """``u: X -> Y`` as a ``codomain.dim x domain.dim`` matrix."""

    def __init__(self, domain: SpaceDescriptor, codomain: SpaceDescriptor, entries):
        U = np.array(entries, dtype=float).reshape(codomain.dim, domain.dim) \
            if np.size(entries) == codomain.dim * domain.dim else None
        if U is None:
            raise DimensionMismatch(
                f"entries of size {np.size(entries)} do not fit {codomain.dim} x {domain.dim}")
        U.setflags(write=False)
        self.domain = domain
        self.codomain = codomain
        self.entries = U

    @classmethod
    def identity(cls, desc: SpaceDescriptor):
        return cls(desc, desc, np.eye(desc.dim))

    @classmethod
    def rank_one(cls, domain, codomain, a_star, y):
        """``x -> <x, a*> y`` with the domain pairing."""
        a = np.asarray(a_star, dtype=float) * domain.w
        return cls(domain, codomain, np.outer(np.asarray(y, dtype=float), a))

    def __call__(self, x):
        x = self.domain.check(x)
        return x @ self.entries.T

    def __mul__(self, c):
        return LinearOperator(self.domain, self.codomain, float(c) * self.entries)

    __rmul__ = __mul__

    def __repr__(self):
        return f"LinearOperator({self.domain} -> {self.codomain}, entries={self.entries.tolist()!r})"

    def __eq__(self, other):
        if not isinstance(other, LinearOperator):
            return NotImplemented
        return (self.domain == other.domain and self.codomain == other.codomain
                and np.array_equal(self.entries, other.entries))


def _family(u, family):
    F = np.asarray(family, dtype=float)
    if F.size == 0:
        raise EmptyFamily("empty family")
    F = u.domain.check(np.atleast_2d(F), "family")
    nrm = np.atleast_1d(u.domain.norm(F))
    if not np.any(nrm > 0):
        raise ZeroFamily("every vector of the family is zero")
    return F, nrm


def _numerator(u, F, p):
    return float(np.sum(np.atleast_1d(u.codomain.norm(u(F))) ** p) ** (1.0 / p))


def _box_vertices(desc):
    # vertices of a box containing the dual unit ball: |y_j| <= w_j^(-1/q')
    q = desc.q
    qd = math.inf if q == 1 else (1.0 if math.isinf(q) else q / (q - 1))
    half = np.ones(desc.dim) if math.isinf(qd) else desc.w ** (-1.0 / qd)
    d = desc.dim
    codes = np.arange(2 ** d)[:, None] >> np.arange(d)[None, :] & 1
    return (1.0 - 2.0 * codes) * half[None, :]


def _denominator(u, F, nrm, p, seed=0):
    """``(value, certified_upper)``: the sup over the dual ball and a number
    that is certainly >= it (equal to it in exact regimes)."""
    live = nrm > 0
    if live.sum() == 1:
        v = float(nrm[live][0])
        return v, v
    r = maximize_p_moment(u.domain, F[live], np.ones(live.sum()), p, seed=seed)
    if r.exact:
        return r.value, r.value
    if u.domain.dim <= MAX_SIGN_DIM:
        box = _box_vertices(u.domain)
        up = float(np.max(p_moment(u.domain, F[live], np.ones(live.sum()), p, box)))
        return r.value, max(up, r.value)
    return r.value, math.inf


def family_ratio(u: LinearOperator, family, p: float) -> float:
    """Ratio of the two sides of the p-summing inequality on one family.

    A lower bound for pi_p(u) whenever the dual-ball supremum is computed
    exactly (polytopal dual balls, Hilbert spaces with p = 2, singletons).
    """
    p = _check_p(p)
    F, nrm = _family(u, family)
    den, _ = _denominator(u, F, nrm, p)
    return _numerator(u, F, p) / den


def _certified_ratio(u, F, p, seed=0):
    F = np.atleast_2d(F)
    nrm = np.atleast_1d(u.domain.norm(F))
    if not np.any(nrm > 0):
        return 0.0
    _, up = _denominator(u, F, nrm, p, seed)
    return _numerator(u, F, p) / up if up > 0 else 0.0


def operator_norm(u: LinearOperator):
    """``(||u||, x, certified)`` with ``||u x|| = ||u||`` and ``||x|| = 1``.

    Exact when the domain ball is a polytope or both spaces are Hilbert;
    otherwise the multi-start ascent gives an attained lower bound.
    """
    X, Y = u.domain, u.codomain
    rows = u.entries / X.w[None, :]
    if math.isinf(Y.q):
        # sup_x max_k |<row_k, x>| = max_k of the norm of row k in X*
        Xs = X.dual()
        k = int(np.argmax(np.atleast_1d(Xs.norm(rows))))
        x = Xs.norming_functional(rows[k])
        val = float(np.atleast_1d(Y.norm(u(x)))[0])
        return val, x, EXACT
    r = maximize_p_moment(X.dual(), rows, Y.w, Y.q)
    x = r.witness
    val = float(np.atleast_1d(Y.norm(u(x)))[0])
    return val, x, r.certified


@dataclass
class SummingLower:
    value: float
    family: np.ndarray
    certified: bool = True


def pi_p_lower(u: LinearOperator, p: float, seed: int = 0,
               restarts: int = SEARCH_RESTARTS, steps: int = SEARCH_STEPS) -> SummingLower:
    """Best certified family ratio over seeded candidate families.

    Candidates: the norming singleton (operator norm), the standard basis,
    the right singular directions, then ``restarts`` random families of size
    at most 2d improved by accept-if-better perturbations. Every value kept
    is a certified lower bound for pi_p(u); ties keep the earlier candidate.
    """
    p = _check_p(p)
    d = u.domain.dim
    if not np.any(u.entries):
        return SummingLower(0.0, np.zeros((1, d)))
    _, x_top, _ = operator_norm(u)
    cands = [x_top[None, :], np.eye(d)]
    _, _, vt = np.linalg.svd(u.entries)
    cands.append(vt)
    best = SummingLower(-1.0, None)
    for F in cands:
        r = _certified_ratio(u, F, p, seed)
        if r > best.value:
            best = SummingLower(r, np.array(F))
    rng = np.random.default_rng(seed)
    for _ in range(restarts):
        k = int(rng.integers(2, 2 * d + 1))
        F = rng.standard_normal((k, d))
        cur = _certified_ratio(u, F, p, seed)
        for step in range(steps):
            G = F.copy()
            i = int(rng.integers(k))
            G[i] += rng.standard_normal(d) * 0.5 ** (1 + step // 8)
            r = _certified_ratio(u, G, p, seed)
            if r > cur:
                F, cur = G, r
        if cur > best.value:
            best = SummingLower(cur, F)
    return best


def dual_sphere(desc: SpaceDescriptor, count: int, seed: int = 0) -> np.ndarray:
    """``count``-ish points on the dual unit sphere (see ``sphere_directions``)."""
    U = sphere_directions(desc.dim, count, seed)
    return U / np.atleast_1d(desc.dual_norm(U))[:, None]


def primal_directions(desc: SpaceDescriptor, count: int, seed: int = 0) -> np.ndarray:
    U = sphere_directions(desc.dim, count, seed + 1)
    return U / np.atleast_1d(desc.norm(U))[:, None]


@dataclass
class PietschCertificate:
    """Probability weights on finitely many dual unit vectors and a constant C
    with ``||u x||^p <= C^p sum_j eta_j |<x, x*_j>|^p`` on ``test_family``."""

    support: np.ndarray
    weights: np.ndarray
    constant: float
    test_family: np.ndarray
    p: float

    def family_hash(self) -> str:
        return hashlib.sha256(np.ascontiguousarray(self.test_family, dtype=float).tobytes()).hexdigest()

    def violation(self, u: LinearOperator) -> float:
        """Largest ``||u x||^p - C^p sum_j eta_j |<x, x*_j>|^p`` over the test family."""
        X = self.test_family
        lhs = np.atleast_1d(u.codomain.norm(u(X))) ** self.p
        A = np.abs(u.domain.pair(X, self.support.T)).reshape(len(X), -1) ** self.p
        rhs = self.constant ** self.p * (A @ self.weights)
        return float(np.max(lhs - rhs))


def pietsch_lp_upper(u: LinearOperator, p: float, sphere, test_family) -> PietschCertificate:
    p = _check_p(p)
    S = u.domain.check(np.atleast_2d(np.asarray(sphere, dtype=float)), "sphere")
    dn = np.atleast_1d(u.domain.dual_norm(S))
    if np.any(np.abs(dn - 1) > SPHERE_TOL):
        raise DualNormViolation(f"sphere points must have dual norm 1 (found {dn.min()}..{dn.max()})")
    T = np.asarray(test_family, dtype=float)
    if T.size == 0:
        raise EmptyFamily("empty test family")
    T = u.domain.check(np.atleast_2d(T), "test family")

    b = np.atleast_1d(u.codomain.norm(u(T))) ** p
    A = np.abs(u.domain.pair(T, S.T)).reshape(len(T), -1) ** p
    active = b > 0
    if np.any(active & ~np.any(A > 0, axis=1)):
        raise InfeasibleLP("a test vector with ||u x|| > 0 is annihilated by every sphere point")
    m = len(S)
    if not np.any(active):
        return PietschCertificate(S, np.full(m, 1.0 / m), 0.0, T, p)
    # normalize rows so the solver sees O(1) data
    scale = b[active]
    res = linprog(np.ones(m), A_ub=-A[active] / scale[:, None], b_ub=-np.ones(active.sum()),
                  bounds=(0, None), method="highs")
    if res.status != 0:
        raise InfeasibleLP(f"LP failed: {res.message}")
    t = np.maximum(res.x, 0.0)
    # repair solver tolerance so domination holds exactly on the test family
    cover = A[active] @ t
    lift = float(np.max(scale / np.where(cover > 0, cover, np.inf)))
    if lift > 1:
        t = t * lift * (1 + 1e-14)
    total = float(t.sum())
    eta = t / total
    keep = eta > 0
    return PietschCertificate(S[keep], eta[keep], total ** (1.0 / p), T, p)


@dataclass
class SummingEstimate:
    p: float
    lower: float
    lower_family: np.ndarray
    upper: float
    certificate: PietschCertificate

    @property
    def gap(self) -> float:
        return self.upper - self.lower


def pi_p_estimate(u: LinearOperator, p: float, sphere_count: int = 1000,
                  test_count: int = 64, seed: int = 0) -> SummingEstimate:
    """Lower bound and LP estimate, the test family including the lower witness."""
    low = pi_p_lower(u, p, seed)
    tests = np.concatenate([primal_directions(u.domain, test_count, seed), low.family])
    cert = pietsch_lp_upper(u, p, dual_sphere(u.domain, sphere_count, seed), tests)
    return SummingEstimate(float(p), low.value, low.family, cert.constant, cert)


def compose_function(u: LinearOperator, f: SimpleFunction) -> SimpleFunction:
    if f.codomain != u.domain:
        raise DescriptorMismatch("function codomain is not the operator domain")
    return SimpleFunction(f.space, u.codomain, u(f.values))


def compose_measure(u: LinearOperator, nu: VectorMeasure) -> VectorMeasure:
    if nu.codomain != u.domain:
        raise DescriptorMismatch("measure codomain is not the operator domain")
    return VectorMeasure(nu.space, u.codomain, u(nu.atom_values))


@dataclass
class CompositionReport:
    lhs: float          # ||u o f||_{L^p(Y)}  or  |u o nu|_p
    dunford: float      # ||f||_{D_p}  or  ||nu||_p, as a computed lower bound
    constant: float     # certificate constant C
    rhs: float          # C * dunford
    holds: bool
    certified: str = EXACT

    @property
    def slack(self) -> float:
        return self.rhs - self.lhs


def _covered(T, rows):
    for x in rows:
        if not np.any(x):
            continue
        err = np.abs(T - x[None, :]).max(axis=1)
        if err.min() > 1e-12 * (1 + np.abs(x).max()):
            return False
    return True


def _sup_with_support(desc, vectors, weights, p, support, result):
    # the domination constraints only need the max over support points, which
    # is a valid lower bound for the dual-ball sup; use whichever is larger
    at_support = float(np.max(p_moment(desc, vectors, weights, p, support))) if len(support) else 0.0
    return max(result.value, at_support)


def verify_composition_bound(u: LinearOperator, f: SimpleFunction, p: float,
                             cert: PietschCertificate, tol: float = CERT_TOL) -> CompositionReport:
    """Check ``||u o f||_{L^p(mu, Y)} <= C ||f||_{D_p}``.

    Summing the domination inequalities over ``mu_i^(1/p) f_i`` gives
    ``sum_i mu_i ||u f_i||^p <= C^p max_j sum_i mu_i |<f_i, x*_j>|^p``, so the
    check holds whenever the certificate is sound.
    """
    p = _check_p(p)
    if f.codomain != u.domain:
        raise DescriptorMismatch("function codomain is not the operator domain")
    scaled = f.space.masses[:, None] ** (1.0 / p) * f.values
    if not _covered(cert.test_family, scaled):
        raise FamilyNotCovered("certificate test family does not contain mu_i^(1/p) f_i")
    lhs = bochner_norm(compose_function(u, f), p)
    r = dunford_norm(f, p, extra_starts=cert.support)
    dn = _sup_with_support(f.codomain, f.values, f.space.masses, p, cert.support, r)
    rhs = cert.constant * dn
    return CompositionReport(lhs, dn, cert.constant, rhs, lhs <= rhs + tol, r.certified)


def verify_measure_bound(u: LinearOperator, nu: VectorMeasure, p: float,
                         cert: PietschCertificate, tol: float = CERT_TOL) -> CompositionReport:
    """Check ``|u o nu|_p(Omega) <= C ||nu||_p(Omega)`` with the test family
    containing ``nu({i}) / mu_i^(1/p')``."""
    p = _check_p(p)
    if nu.codomain != u.domain:
        raise DescriptorMismatch("measure codomain is not the operator domain")
    mu = nu.space.masses
    scaled = nu.atom_values / mu[:, None] ** (1.0 - 1.0 / p)
    if not _covered(cert.test_family, scaled):
        raise FamilyNotCovered("certificate test family does not contain nu(A) / mu(A)^(1/p')")
    lhs = p_variation(compose_measure(u, nu), p)
    r = p_semivariation(nu, p, extra_starts=cert.support)
    sv = _sup_with_support(nu.codomain, nu.densities(), mu, p, cert.support, r)
    rhs = cert.constant * sv
    return CompositionReport(lhs, sv, cert.constant, rhs, lhs <= rhs + tol, r.certified)
