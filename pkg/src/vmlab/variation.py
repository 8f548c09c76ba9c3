"""Finitely additive vector measures on the atom algebra, their total
p-variation and total p-semivariation.

The production route for the p-variation is the finest partition: merging
two blocks never increases the partition sum, because

    (x + y)^p / (s + t)^(p-1) <= x^p / s^(p-1) + y^p / t^(p-1)

for x, y >= 0 and s, t > 0, combined with the triangle inequality for
||nu(A u B)||. The brute-force route (max over all set partitions) and the
coefficient route (max of sum |alpha_A| ||nu(A)|| over step functions in the
unit ball of L^p') are kept as independent checks.
"""
from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from .errors import (DualNormViolation, IndexOutOfRange, SpaceMismatch,
                     TooManyAtoms)
from .normed import MomentMaxResult, SpaceDescriptor, maximize_p_moment
from .space import (DiscreteProbabilitySpace, Partition, _check_p,
                    enumerate_partitions)

__all__ = ["VectorMeasure", "evaluate", "partition_p_sum", "p_variation",
           "p_semivariation", "scalar_p_variation", "semivariation_over_subset",
           "holder_coefficients", "MAX_BRUTE_ATOMS"]

MAX_BRUTE_ATOMS = 8
DUAL_TOL = 1e-9


class VectorMeasure:
    """An X-valued measure given by its values on the atoms."""

    def __init__(self, space: DiscreteProbabilitySpace, codomain: SpaceDescriptor, atom_values):
        vals = np.array(atom_values, dtype=float)
        if vals.ndim == 1 and codomain.dim == 1:
            vals = vals[:, None]
        if vals.shape != (space.n, codomain.dim):
            raise SpaceMismatch(f"atom values have shape {vals.shape}, expected {(space.n, codomain.dim)}")
        vals.setflags(write=False)
        self.space = space
        self.codomain = codomain
        self.atom_values = vals

    def __repr__(self):
        return (f"VectorMeasure(n={self.space.n}, codomain={self.codomain}, "
                f"atom_values={self.atom_values.tolist()!r})")

    def __eq__(self, other):
        if not isinstance(other, VectorMeasure):
            return NotImplemented
        return (self.space == other.space and self.codomain == other.codomain
                and np.array_equal(self.atom_values, other.atom_values))

    def __call__(self, atoms):
        return evaluate(self, atoms)

    def __add__(self, other):
        _same(self, other)
        return VectorMeasure(self.space, self.codomain, self.atom_values + other.atom_values)

    def __sub__(self, other):
        _same(self, other)
        return VectorMeasure(self.space, self.codomain, self.atom_values - other.atom_values)

    def __mul__(self, c):
        return VectorMeasure(self.space, self.codomain, float(c) * self.atom_values)

    __rmul__ = __mul__

    def densities(self) -> np.ndarray:
        """Atom values divided by atom masses (the Radon-Nikodym derivative)."""
        return self.atom_values / self.space.masses[:, None]


def _same(a, b):
    if a.space != b.space or a.codomain != b.codomain:
        raise SpaceMismatch("measures live on different spaces")


def evaluate(nu: VectorMeasure, atoms) -> np.ndarray:
    """nu(A) for an atom subset A, by additivity."""
    idx = sorted(set(int(i) for i in atoms))
    if idx and (idx[0] < 0 or idx[-1] >= nu.space.n):
        raise IndexOutOfRange(f"atom indices must lie in 0..{nu.space.n - 1}")
    if not idx:
        return np.zeros(nu.codomain.dim)
    return nu.atom_values[idx].sum(axis=0)


def _block_term(norm_val, mass, p):
    # ||nu(A)||^p / mu(A)^(p-1), with 0 / 0^(p-1) = 0
    if norm_val == 0:
        return 0.0
    if mass == 0:
        return math.inf
    return norm_val ** p / mass ** (p - 1)


def partition_p_sum(nu: VectorMeasure, P: Partition, p: float) -> float:
    """``(sum_{A in P} ||nu(A)||^p / mu(A)^(p-1))^(1/p)``."""
    p = _check_p(p)
    if P.n != nu.space.n:
        raise SpaceMismatch(f"partition over {P.n} atoms, measure over {nu.space.n}")
    terms = []
    for b in P.blocks:
        terms.append(_block_term(nu.codomain.norm(evaluate(nu, b)),
                                 math.fsum(nu.space.masses[list(b)]), p))
    return math.fsum(terms) ** (1.0 / p)


def _finest(nu, p):
    norms = np.atleast_1d(nu.codomain.norm(nu.atom_values))
    mu = nu.space.masses
    if p == 1:
        return float(math.fsum(norms))
    top = norms.max()
    if top == 0:
        return 0.0
    r = norms / top
    return float(top * math.fsum(r ** p * mu / mu ** p) ** (1.0 / p))


@lru_cache(maxsize=None)
def _partition_masks(n):
    # every set partition of n atoms as a row of block bitmasks, zero-padded
    parts = [P.masks() for P in enumerate_partitions(n)]
    out = np.zeros((len(parts), n), dtype=np.int64)
    for k, m in enumerate(parts):
        out[k, :len(m)] = m
    out.setflags(write=False)
    return out


def _subset_tables(nu):
    # ||nu(A)|| and mu(A) for all 2^n atom subsets, indexed by bitmask
    n = nu.space.n
    masks = np.arange(2 ** n)
    member = (masks[:, None] >> np.arange(n)[None, :]) & 1
    sums = member @ nu.atom_values
    mass = member @ nu.space.masses
    return np.atleast_1d(nu.codomain.norm(sums)), mass


def holder_coefficients(block_norms, block_masses, p):
    """Coefficients alpha_A of the step function in the unit ball of L^p'
    maximizing ``sum_A |alpha_A| ||nu(A)||``.

    For p > 1, ``alpha_A = (a_A / m_A)^(p-1) / S^(1/p')`` with
    ``S = sum_A a_A^p / m_A^(p-1)``; for p = 1 the ball is that of L^inf
    and every alpha_A = 1.
    """
    a = np.asarray(block_norms, dtype=float)
    m = np.asarray(block_masses, dtype=float)
    if p == 1:
        return np.ones_like(a)
    live = a > 0
    ratio = np.where(live, a / np.where(m > 0, m, 1.0), 0.0)
    S = np.sum(np.where(live, a ** p / np.where(m > 0, m, 1.0) ** (p - 1), 0.0), axis=-1, keepdims=True)
    q = p / (p - 1)
    return np.where(S > 0, ratio ** (p - 1) / np.where(S > 0, S, 1.0) ** (1.0 / q), 0.0)


def p_variation(nu: VectorMeasure, p: float, method: str = "finest") -> float:
    """Total p-variation |nu|_p(Omega).

    ``method`` is ``"finest"`` (closed form), ``"brute"`` (max of the
    partition sum over all set partitions) or ``"holder_dual"`` (max over all
    partitions of the coefficient form with the analytic Hoelder maximizer).
    The last two need at most eight atoms.
    """
    p = _check_p(p)
    if method == "finest":
        return _finest(nu, p)
    if method not in ("brute", "holder_dual"):
        raise ValueError(f"unknown method {method!r}")
    n = nu.space.n
    if n > MAX_BRUTE_ATOMS:
        raise TooManyAtoms(f"{method} is limited to {MAX_BRUTE_ATOMS} atoms, got {n}")
    norms, mass = _subset_tables(nu)
    parts = _partition_masks(n)
    a = norms[parts]
    a[parts == 0] = 0.0
    m = mass[parts]
    if method == "brute":
        live = a > 0
        terms = np.where(live, a ** p / np.where(m > 0, m, 1.0) ** (p - 1), 0.0)
        return float(terms.sum(axis=1).max() ** (1.0 / p))
    alpha = holder_coefficients(a, m, p)
    return float((np.abs(alpha) * a).sum(axis=1).max())


def scalar_p_variation(space: DiscreteProbabilitySpace, atom_values, p: float) -> float:
    """p-variation of a real-valued measure, attained at the finest partition."""
    v = np.abs(space.check_values(atom_values))
    mu = space.masses
    return float(np.sum(v ** p / mu ** (p - 1)) ** (1.0 / p))


def p_semivariation(nu: VectorMeasure, p: float, **kwargs) -> MomentMaxResult:
    """Total p-semivariation: sup over the dual ball of the scalar p-variation
    of ``<nu, z*>``, computed as a dual-ball p-moment of the densities."""
    p = _check_p(p)
    return maximize_p_moment(nu.codomain, nu.densities(), nu.space.masses, p, **kwargs)


def semivariation_over_subset(nu: VectorMeasure, p: float, functionals) -> float:
    """max over a finite set of dual-ball functionals of the scalar p-variation."""
    p = _check_p(p)
    Z = nu.codomain.check(np.atleast_2d(np.asarray(functionals, dtype=float)), "functionals")
    dn = np.atleast_1d(nu.codomain.dual_norm(Z))
    if np.any(dn > 1 + DUAL_TOL):
        raise DualNormViolation(f"functional with dual norm {dn.max()} > 1")
    vals = nu.codomain.pair(nu.atom_values, Z.T)
    vals = vals.reshape(nu.space.n, -1)
    return max(scalar_p_variation(nu.space, vals[:, k], p) for k in range(Z.shape[0]))
