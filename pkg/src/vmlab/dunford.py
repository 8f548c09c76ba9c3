"""Simple functions with values in a finite-dimensional normed space.

On a finite atomic space every function is simple, strongly measurable and
p-Pettis integrable, and every Dunford operator has finite rank. What is
left to study is quantitative: the Dunford norm, singular-value profiles of
``S: x* -> <f, x*>``, the defect of partition averages, and the modulus of
uniform integrability of ``{|<f, x*>|^p : x* in B_X*}``. Truncations of
non-compact examples show their non-compactness through these numbers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import SpaceMismatch, TooManyAtoms, UnsupportedRegime
from .normed import (EXACT, HEURISTIC, MomentMaxResult, SpaceDescriptor,
                     maximize_p_moment)
from .space import (CAPACITY_TOL, MAX_SUBSET_ATOMS, DiscreteProbabilitySpace,
                    Partition, _check_p, lp_norm)
from .variation import VectorMeasure

__all__ = ["SimpleFunction", "DunfordOperator", "ScalarFamilyReport", "pair",
           "dunford_norm", "bochner_norm", "indefinite_integral",
           "dunford_apply", "sv_profile", "average_scalar", "averaging",
           "approximation_defect", "zfp_ui_modulus", "power_map_gap"]


class SimpleFunction:
    """``f: Omega -> X`` given by one codomain vector per atom."""

    def __init__(self, space: DiscreteProbabilitySpace, codomain: SpaceDescriptor, values):
        vals = np.array(values, dtype=float)
        if vals.ndim == 1 and codomain.dim == 1:
            vals = vals[:, None]
        if vals.shape != (space.n, codomain.dim):
            raise SpaceMismatch(f"values have shape {vals.shape}, expected {(space.n, codomain.dim)}")
        vals.setflags(write=False)
        self.space = space
        self.codomain = codomain
        self.values = vals

    @classmethod
    def constant(cls, space, codomain, x):
        return cls(space, codomain, np.tile(np.asarray(x, dtype=float), (space.n, 1)))

    def __repr__(self):
        return f"SimpleFunction(n={self.space.n}, codomain={self.codomain}, values={self.values.tolist()!r})"

    def __eq__(self, other):
        if not isinstance(other, SimpleFunction):
            return NotImplemented
        return (self.space == other.space and self.codomain == other.codomain
                and np.array_equal(self.values, other.values))

    def _check_same(self, other):
        if self.space != other.space or self.codomain != other.codomain:
            raise SpaceMismatch("functions live on different spaces")

    def __add__(self, other):
        self._check_same(other)
        return SimpleFunction(self.space, self.codomain, self.values + other.values)

    def __sub__(self, other):
        self._check_same(other)
        return SimpleFunction(self.space, self.codomain, self.values - other.values)

    def __mul__(self, c):
        return SimpleFunction(self.space, self.codomain, float(c) * self.values)

    __rmul__ = __mul__


def pair(f: SimpleFunction, xs) -> np.ndarray:
    """The scalar function ``<f, x*>`` as atom values."""
    return np.asarray(f.codomain.pair(f.values, np.asarray(xs, dtype=float)))


def dunford_norm(f: SimpleFunction, p: float, **kwargs) -> MomentMaxResult:
    """``sup_{x* in B_X*} ||<f, x*>||_{L^p}``, with its witness functional."""
    return maximize_p_moment(f.codomain, f.values, f.space.masses, _check_p(p), **kwargs)


def bochner_norm(f: SimpleFunction, p: float) -> float:
    return lp_norm(f.space, np.atleast_1d(f.codomain.norm(f.values)), _check_p(p))


def indefinite_integral(f: SimpleFunction) -> VectorMeasure:
    return VectorMeasure(f.space, f.codomain, f.space.masses[:, None] * f.values)


@dataclass
class DunfordOperator:
    """``T: g -> sum_i mu_i g_i f_i`` (on L^p'(mu)) and its adjoint
    ``S: x* -> <f, x*>`` (into L^p(mu))."""

    function: SimpleFunction
    p: float = 2.0

    def __call__(self, g):
        return dunford_apply(self, g)

    def adjoint(self, xs):
        return pair(self.function, xs)

    def matrix(self) -> np.ndarray:
        """Matrix of T in coordinates: column i is mu_i f_i."""
        f = self.function
        return (f.space.masses[:, None] * f.values).T


def dunford_apply(T: DunfordOperator, g) -> np.ndarray:
    f = T.function
    g = f.space.check_values(g, "g")
    return (f.space.masses * g) @ f.values


def sv_profile(f: SimpleFunction, p: float = 2.0) -> np.ndarray:
    """Singular values (descending, ``dim`` of them) of ``x* -> <f, x*>``
    from the Hilbert dual into L^2(mu). Only the Hilbert, p = 2 case."""
    if f.codomain.q != 2 or float(p) != 2:
        raise UnsupportedRegime("singular-value profiles need a (weighted) L^2 codomain and p = 2")
    sw = np.sqrt(f.codomain.w)
    A = np.sqrt(f.space.masses)[:, None] * f.values * sw[None, :]
    s = np.linalg.svd(A, compute_uv=False)
    out = np.zeros(f.codomain.dim)
    out[: s.size] = s[: f.codomain.dim]
    return out


def average_scalar(space: DiscreteProbabilitySpace, g, P: Partition) -> np.ndarray:
    """Conditional expectation of a scalar (or stacked) function on the blocks of P."""
    if P.n != space.n:
        raise SpaceMismatch(f"partition over {P.n} atoms, space has {space.n}")
    g = np.asarray(space.check_values(g), dtype=float)
    out = np.empty_like(g)
    mu = space.masses
    for b in P.blocks:
        idx = list(b)
        w = mu[idx]
        out[idx] = np.tensordot(w, g[idx], axes=(0, 0)) / w.sum()
    return out


def averaging(f: SimpleFunction, P: Partition) -> SimpleFunction:
    """The simple function equal on each block A of P to (1/mu(A)) int_A f."""
    return SimpleFunction(f.space, f.codomain, average_scalar(f.space, f.values, P))


def approximation_defect(f: SimpleFunction, P: Partition, p: float, **kwargs) -> float:
    return dunford_norm(f - averaging(f, P), p, **kwargs).value


@dataclass
class ScalarFamilyReport:
    """eta(delta) = sup over x* in the dual ball and mu(A) <= delta of
    int_A |<f, x*>|^p, with one (x*, A) witness per delta."""

    p: float
    deltas: list
    values: list
    witnesses: list = field(default_factory=list)
    certified: str = EXACT

    def curve(self) -> dict:
        return dict(zip(self.deltas, self.values))


def zfp_ui_modulus(f: SimpleFunction, p: float, deltas, **kwargs) -> ScalarFamilyReport:
    """Uniform-integrability modulus of ``{|<f, x*>|^p : x* in B_X*}``.

    Subsets of atoms are searched by branch and bound (outer), and for each
    candidate subset the dual ball is maximized (inner). Pruning uses
    ``eta(A u B) <= eta(A) + sum_{i in B} mu_i ||f_i||^p`` with the
    fractional-knapsack bound over the undecided atoms.
    """
    p = _check_p(p)
    space = f.space
    n = space.n
    if n > MAX_SUBSET_ATOMS:
        raise TooManyAtoms(f"subset search is limited to {MAX_SUBSET_ATOMS} atoms, got {n}")
    mu = space.masses
    fn = np.atleast_1d(f.codomain.norm(f.values)) ** p
    order = sorted(range(n), key=lambda i: -fn[i])
    val = [mu[i] * fn[i] for i in order]
    cost = [mu[i] for i in order]
    cache = {}
    flags = set()

    def eta(chosen):
        key = tuple(sorted(chosen))
        if key not in cache:
            if not key:
                cache[key] = (0.0, np.zeros(f.codomain.dim))
            else:
                r = maximize_p_moment(f.codomain, f.values[list(key)], mu[list(key)], p, **kwargs)
                flags.add(r.certified)
                cache[key] = (r.value ** p, r.witness)
        return cache[key]

    def bound(k, room):
        b = 0.0
        for j in range(k, n):
            if cost[j] <= room:
                room -= cost[j]
                b += val[j]
            else:
                return b + val[j] * room / cost[j]
        return b

    values, witnesses = [], []
    for delta in deltas:
        delta = float(delta)
        if not 0.0 <= delta <= 1.0:
            raise ValueError(f"delta must lie in [0, 1], got {delta}")
        best = [0.0, (), np.zeros(f.codomain.dim)]

        def dfs(k, room, chosen, current):
            if current > best[0]:
                best[0], best[1], best[2] = current, tuple(sorted(chosen)), eta(chosen)[1]
            if k == n or current + bound(k, room) <= best[0] * (1 + 1e-15):
                return
            i = order[k]
            if cost[k] <= room:
                chosen.append(i)
                dfs(k + 1, room - cost[k], chosen, eta(chosen)[0])
                chosen.pop()
            dfs(k + 1, room, chosen, current)

        dfs(0, delta + CAPACITY_TOL, [], 0.0)
        values.append(best[0])
        witnesses.append((best[2], best[1]))
    certified = HEURISTIC if HEURISTIC in flags else EXACT
    return ScalarFamilyReport(p, [float(d) for d in deltas], values, witnesses, certified)


def power_map_gap(space: DiscreteProbabilitySpace, g, h, p: float, C: float | None = None):
    """Both sides of ``int ||g|^p - |h|^p| dmu <= 2p C^(p/p') ||g - h||_p``.

    ``C`` defaults to ``max(||g||_p, ||h||_p)``. Returns ``(lhs, rhs)``.
    """
    p = _check_p(p)
    g = space.check_values(g)
    h = space.check_values(h)
    if C is None:
        C = max(lp_norm(space, g, p), lp_norm(space, h, p))
    lhs = float(np.dot(space.masses, np.abs(np.abs(g) ** p - np.abs(h) ** p)))
    expo = 0.0 if p == 1 else p * (1 - 1 / p)
    rhs = 2 * p * (C ** expo if expo else 1.0) * lp_norm(space, g - h, p)
    return lhs, rhs
