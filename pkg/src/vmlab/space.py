"""Finite atomic probability spaces, set partitions of the atoms, scalar
L^p norms and the uniform-integrability modulus.

Measurable sets are subsets of atoms, so every supremum over sets or over
finite partitions is a finite maximum.
"""
from __future__ import annotations

import math
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import (BadExponent, InvalidPartition, MassNotOne,
                     NonPositiveMass, SpaceMismatch, TooManyAtoms)

__all__ = ["DiscreteProbabilitySpace", "Partition", "make_space",
           "enumerate_partitions", "is_refinement", "lp_norm", "ui_modulus",
           "subset_mass", "MASS_TOL", "MAX_ENUM_ATOMS", "MAX_SUBSET_ATOMS"]

MASS_TOL = 1e-12
MAX_ENUM_ATOMS = 10
MAX_SUBSET_ATOMS = 24

# slack on mu(A) <= delta so that exact dyadic masses are not lost to rounding
CAPACITY_TOL = 1e-12


class DiscreteProbabilitySpace:
    """Atoms ``0..n-1`` with strictly positive masses summing to one."""

    __slots__ = ("masses",)

    def __init__(self, masses):
        m = np.array(masses, dtype=float).reshape(-1)
        if m.size == 0:
            raise NonPositiveMass("a probability space needs at least one atom")
        if not np.all(np.isfinite(m)):
            raise NonPositiveMass("masses must be finite")
        if np.any(m <= 0):
            raise NonPositiveMass(f"masses must be > 0, got {m.tolist()}")
        total = math.fsum(m)
        if abs(total - 1.0) > MASS_TOL:
            raise MassNotOne(f"masses sum to {total!r}, not 1")
        m.setflags(write=False)
        self.masses = m

    @property
    def n(self) -> int:
        return self.masses.size

    def __len__(self):
        return self.n

    def __eq__(self, other):
        if not isinstance(other, DiscreteProbabilitySpace):
            return NotImplemented
        return np.array_equal(self.masses, other.masses)

    def __hash__(self):
        return hash(self.masses.tobytes())

    def __repr__(self):
        return f"DiscreteProbabilitySpace(masses={self.masses.tolist()!r})"

    def finest(self) -> "Partition":
        return Partition([[i] for i in range(self.n)], self.n)

    def coarsest(self) -> "Partition":
        return Partition([list(range(self.n))], self.n)

    def check_values(self, h, name="h"):
        h = np.asarray(h, dtype=float)
        if h.shape[:1] != (self.n,):
            raise SpaceMismatch(
                f"{name} has {h.shape[0] if h.ndim else 0} entries, space has {self.n} atoms")
        return h


def make_space(masses: Sequence[float]) -> DiscreteProbabilitySpace:
    return DiscreteProbabilitySpace(masses)


class Partition:
    """A set partition of ``range(n)``, stored canonically.

    Blocks are sorted tuples, ordered by their smallest element, so two
    partitions with the same blocks compare and hash equal.
    """

    __slots__ = ("blocks", "n")

    def __init__(self, blocks: Iterable[Iterable[int]], n: int):
        canon = []
        seen = set()
        for b in blocks:
            block = tuple(sorted(int(i) for i in b))
            if not block:
                raise InvalidPartition("empty block")
            for i in block:
                if i < 0 or i >= n:
                    raise InvalidPartition(f"atom index {i} outside 0..{n - 1}")
                if i in seen:
                    raise InvalidPartition(f"atom {i} appears in two blocks")
                seen.add(i)
            canon.append(block)
        if len(seen) != n:
            missing = sorted(set(range(n)) - seen)
            raise InvalidPartition(f"atoms {missing} not covered")
        canon.sort()
        self.blocks = tuple(canon)
        self.n = int(n)

    def __len__(self):
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    def __eq__(self, other):
        if not isinstance(other, Partition):
            return NotImplemented
        return self.n == other.n and self.blocks == other.blocks

    def __hash__(self):
        return hash((self.n, self.blocks))

    def __repr__(self):
        return f"Partition({[list(b) for b in self.blocks]!r}, n={self.n})"

    def labels(self) -> np.ndarray:
        """Block index of each atom."""
        lab = np.empty(self.n, dtype=int)
        for k, b in enumerate(self.blocks):
            lab[list(b)] = k
        return lab

    def masks(self) -> tuple:
        return tuple(sum(1 << i for i in b) for b in self.blocks)


def _restricted_growth(n):
    # Knuth's restricted growth strings, a[0] = 0, a[i] <= 1 + max(a[:i])
    if n == 0:
        return
    a = [0] * n
    m = [0] * n  # m[i] = max(a[:i+1])
    while True:
        yield a
        i = n - 1
        while i > 0 and a[i] > m[i - 1]:
            i -= 1
        if i == 0:
            return
        a[i] += 1
        m[i] = max(m[i - 1], a[i])
        for j in range(i + 1, n):
            a[j] = 0
            m[j] = m[i]


def enumerate_partitions(space: DiscreteProbabilitySpace | int) -> Iterator[Partition]:
    """Yield every set partition of the atoms exactly once.

    The order is deterministic (lexicographic in restricted growth strings),
    starting with the coarsest partition and ending with the finest.
    """
    n = space if isinstance(space, int) else space.n
    if n > MAX_ENUM_ATOMS:
        raise TooManyAtoms(f"partition enumeration is limited to {MAX_ENUM_ATOMS} atoms, got {n}")
    for rgs in _restricted_growth(n):
        blocks = [[] for _ in range(max(rgs) + 1)]
        for i, k in enumerate(rgs):
            blocks[k].append(i)
        yield Partition(blocks, n)


def is_refinement(fine: Partition, coarse: Partition) -> bool:
    """True iff every block of ``fine`` lies inside some block of ``coarse``."""
    if fine.n != coarse.n:
        raise SpaceMismatch(f"partitions over {fine.n} and {coarse.n} atoms")
    lab = coarse.labels()
    return all(len({lab[i] for i in b}) == 1 for b in fine.blocks)


def _check_p(p, allow_inf=False):
    p = float(p)
    if math.isnan(p) or p < 1:
        raise BadExponent(f"exponent must be >= 1, got {p}")
    if math.isinf(p) and not allow_inf:
        raise BadExponent("exponent must be finite here")
    return p


def lp_norm(space: DiscreteProbabilitySpace, h, p: float) -> float:
    """L^p(mu) norm of a scalar function given by its atom values.

    ``p = inf`` gives the max-abs norm (atoms have positive mass, so the
    essential sup is the plain max).
    """
    p = _check_p(p, allow_inf=True)
    a = np.abs(space.check_values(h))
    if math.isinf(p):
        return float(a.max())
    if p == 1:
        return float(np.dot(space.masses, a))
    top = a.max()
    if top == 0:
        return 0.0
    # scale out the max to avoid overflow for large p
    return float(top * np.dot(space.masses, (a / top) ** p) ** (1.0 / p))


def subset_mass(space: DiscreteProbabilitySpace, atoms) -> float:
    return math.fsum(space.masses[list(atoms)])


def _knapsack(values, costs, capacity):
    """Exact 0/1 knapsack by depth-first branch and bound.

    Items must be pre-sorted by value/cost ratio, descending; the bound at
    each node is the fractional (greedy) relaxation of the remaining items.
    Returns ``(best_value, chosen_indices)``.
    """
    n = len(values)
    best = [0.0, ()]

    def bound(k, room):
        b = 0.0
        for j in range(k, n):
            if costs[j] <= room:
                room -= costs[j]
                b += values[j]
            else:
                return b + values[j] * room / costs[j]
        return b

    def dfs(k, room, value, chosen):
        if value > best[0]:
            best[0], best[1] = value, tuple(chosen)
        if k == n or value + bound(k, room) <= best[0]:
            return
        if costs[k] <= room:
            chosen.append(k)
            dfs(k + 1, room - costs[k], value + values[k], chosen)
            chosen.pop()
        dfs(k + 1, room, value, chosen)

    dfs(0, capacity, 0.0, [])
    return best[0], best[1]


def ui_modulus(space: DiscreteProbabilitySpace, family, delta: float,
               return_witness: bool = False):
    """sup over h in ``family`` and atom sets A with mu(A) <= delta of
    the integral of |h| over A.

    Solved exactly per function as a 0/1 knapsack (value mu_i |h_i|, cost
    mu_i). With ``return_witness`` the result is ``(value, index_of_h, atoms)``.
    """
    if space.n > MAX_SUBSET_ATOMS:
        raise TooManyAtoms(f"subset search is limited to {MAX_SUBSET_ATOMS} atoms, got {space.n}")
    delta = float(delta)
    if not 0.0 <= delta <= 1.0:
        raise ValueError(f"delta must lie in [0, 1], got {delta}")
    cap = delta + CAPACITY_TOL
    best = (0.0, None, ())
    for k, h in enumerate(family):
        a = np.abs(space.check_values(h))
        order = sorted(range(space.n), key=lambda i: -a[i])
        vals = [space.masses[i] * a[i] for i in order]
        costs = [space.masses[i] for i in order]
        value, chosen = _knapsack(vals, costs, cap)
        if value > best[0] or best[1] is None:
            best = (value, k, tuple(sorted(order[j] for j in chosen)))
    if return_witness:
        return best
    return best[0]
