"""Norming radius of a finite set of functionals and the resulting bound on
the Dunford norm.

For Gamma in X*, the support function of the absolutely convex hull of
Gamma at x is ``max_g |<g, x>|``, so the largest delta with
``delta * B_X*`` inside that hull is

    r(Gamma) = min_{||x|| = 1} max_{g in Gamma} |<g, x>|.

If every ``||<f, g>||_p <= n`` for g in Gamma, the set
``C = {x*: ||<f, x*>||_p <= n}`` is absolutely convex and contains Gamma,
hence contains ``r(Gamma) B_X*``; therefore ``||f||_{D_p} <= n / r(Gamma)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .dunford import SimpleFunction, dunford_norm, pair
from .errors import (DimensionTooLarge, MissingChain, NotNorming,
                     SpaceMismatch, VMLabError)
from .normed import SpaceDescriptor, euclidean_norm_bounds
from .space import lp_norm

__all__ = ["ThicknessInstance", "ThicknessRadius", "ThicknessBoundReport",
           "thickness_radius", "thickness_chain_profile",
           "thickness_norm_bound", "MAX_GRID_DIM", "DEFAULT_GRID_EPS"]

MAX_GRID_DIM = 4
DEFAULT_GRID_EPS = 0.02
MAX_GRID_POINTS = 20_000_000


class ThicknessInstance:
    """A finite set Gamma of functionals, optionally with an increasing chain
    of index sets ``Gamma_1 <= Gamma_2 <= ... = Gamma``."""

    def __init__(self, descriptor: SpaceDescriptor, gamma, chain=None):
        G = np.array(gamma, dtype=float).reshape(-1, descriptor.dim)
        G.setflags(write=False)
        self.descriptor = descriptor
        self.gamma = G
        self.chain = None
        if chain is not None:
            stages = [tuple(sorted(set(int(i) for i in s))) for s in chain]
            if not stages:
                raise VMLabError("empty chain")
            for s in stages:
                if s and (s[0] < 0 or s[-1] >= len(G)):
                    raise VMLabError(f"chain index outside 0..{len(G) - 1}")
            for a, b in zip(stages, stages[1:]):
                if not set(a) <= set(b):
                    raise VMLabError("chain is not increasing")
            if set(stages[-1]) != set(range(len(G))):
                raise VMLabError("chain does not exhaust gamma")
            self.chain = tuple(stages)

    @classmethod
    def from_stages(cls, descriptor, stages):
        """Build from the list of functionals added at each stage."""
        rows, chain, acc = [], [], []
        for added in stages:
            for g in np.atleast_2d(np.asarray(added, dtype=float)).reshape(-1, descriptor.dim):
                acc.append(len(rows))
                rows.append(g)
            chain.append(tuple(acc))
        return cls(descriptor, np.array(rows).reshape(-1, descriptor.dim), chain)

    def subset(self, idx) -> "ThicknessInstance":
        return ThicknessInstance(self.descriptor, self.gamma[list(idx)])

    def scaled(self, c) -> "ThicknessInstance":
        return ThicknessInstance(self.descriptor, float(c) * self.gamma, self.chain)

    def __repr__(self):
        return f"ThicknessInstance({self.descriptor}, gamma={self.gamma.tolist()!r}, chain={self.chain!r})"


@dataclass
class ThicknessRadius:
    lower: float
    upper: float
    witness: np.ndarray
    exact: bool

    @property
    def value(self) -> float:
        return self.lower if self.exact else 0.5 * (self.lower + self.upper)


def _support(desc, G, U):
    # max_g |<g, u>| for each row u of U
    if len(G) == 0:
        return np.zeros(len(U))
    return np.abs(desc.pair(U, G.T)).reshape(len(U), -1).max(axis=1)


def _radius_1d(desc, G):
    x = np.array([1.0]) / desc.norm(np.array([1.0]))
    r = float(_support(desc, G, x[None, :])[0])
    return ThicknessRadius(r, r, x, True)


def _radius_2d(desc, G):
    # Local minima of the envelope sit where some |<g, x>| vanishes or where
    # two of them cross, i.e. where <g_a -+ g_b, x> = 0.
    C = [g for g in G]
    for a in range(len(G)):
        for b in range(a + 1, len(G)):
            C.append(G[a] - G[b])
            C.append(G[a] + G[b])
    W = np.array(C).reshape(-1, 2) * desc.w[None, :] if C else np.zeros((0, 2))
    W = W[np.linalg.norm(W, axis=1) > 0]
    if len(W) == 0:
        x = np.array([1.0, 0.0]) / desc.norm(np.array([1.0, 0.0]))
        return ThicknessRadius(0.0, 0.0, x, True)
    U = np.column_stack([-W[:, 1], W[:, 0]])
    U = U / np.atleast_1d(desc.norm(U))[:, None]
    vals = _support(desc, G, U)
    k = int(np.argmin(vals))
    r = float(vals[k])
    return ThicknessRadius(r, r, U[k], True)


def _cube_grid(d, eps):
    # Points on the faces of [-1, 1]^d with spacing h; after radial projection
    # they form an eps-net of the Euclidean sphere, eps = h sqrt(d-1) / 2.
    h = 2 * eps / math.sqrt(d - 1)
    m = math.ceil(2 / h) + 1
    total = 2 * d * m ** (d - 1)
    if total > MAX_GRID_POINTS:
        raise VMLabError(f"grid of {total} points is too fine; increase grid_eps")
    t = np.linspace(-1.0, 1.0, m)
    face = np.stack(np.meshgrid(*([t] * (d - 1)), indexing="ij"), axis=-1).reshape(-1, d - 1)
    for k in range(d):
        for s in (-1.0, 1.0):
            yield np.insert(face, k, s, axis=1)


def _radius_grid(desc, G, eps):
    d = desc.dim
    LN = float(np.linalg.norm(G * desc.w[None, :], axis=1).max()) if len(G) else 0.0
    LD = euclidean_norm_bounds(desc)[1]
    upper, lower, wit = math.inf, math.inf, None
    for pts in _cube_grid(d, eps):
        U = pts / np.linalg.norm(pts, axis=1, keepdims=True)
        N = _support(desc, G, U)
        D = np.atleast_1d(desc.norm(U))
        ratio = N / D
        k = int(np.argmin(ratio))
        if ratio[k] < upper:
            upper, wit = float(ratio[k]), U[k] / D[k]
        lower = min(lower, float(np.min((N - LN * eps) / (D + LD * eps))))
    return ThicknessRadius(max(lower, 0.0), upper, wit, False)


def thickness_radius(inst: ThicknessInstance, grid_eps: float = DEFAULT_GRID_EPS) -> ThicknessRadius:
    """Certified bounds on r(Gamma) and a unit direction near the minimizer.

    Exact for d <= 2 (finite candidate set of breakpoints). For d = 3, 4 a
    grid forming a ``grid_eps``-net of the Euclidean sphere gives the upper
    bound; the lower bound uses Lipschitz constants of the numerator and the
    norm with respect to the Euclidean metric, point by point.
    """
    desc, G = inst.descriptor, inst.gamma
    d = desc.dim
    if d == 1:
        return _radius_1d(desc, G)
    if d == 2:
        return _radius_2d(desc, G)
    if d > MAX_GRID_DIM:
        raise DimensionTooLarge(f"grid certification supports d <= {MAX_GRID_DIM}, got {d}")
    if len(G) == 0:
        x = np.eye(d)[0] / desc.norm(np.eye(d)[0])
        return ThicknessRadius(0.0, 0.0, x, True)
    return _radius_grid(desc, G, float(grid_eps))


def thickness_chain_profile(inst: ThicknessInstance, grid_eps: float = DEFAULT_GRID_EPS) -> list:
    """Certified radius (exact in d <= 2, lower bound otherwise) of each stage."""
    if inst.chain is None:
        raise MissingChain("instance has no chain decomposition")
    return [thickness_radius(inst.subset(s), grid_eps).lower for s in inst.chain]


@dataclass
class ThicknessBoundReport:
    level: float            # max over Gamma of ||<f, g>||_p
    delta: float            # certified lower bound on r(Gamma)
    bound: float            # level / delta
    dunford: float          # computed Dunford norm (a lower bound off exact regimes)
    certified: str
    holds: bool

    @property
    def slack(self) -> float:
        return self.bound - self.dunford


def thickness_norm_bound(f: SimpleFunction, inst: ThicknessInstance, p: float,
                         grid_eps: float = DEFAULT_GRID_EPS, tol: float = 1e-9,
                         radius: Optional[ThicknessRadius] = None) -> ThicknessBoundReport:
    if f.codomain != inst.descriptor:
        raise SpaceMismatch("function codomain differs from the instance descriptor")
    r = radius if radius is not None else thickness_radius(inst, grid_eps)
    if not r.lower > 0:
        raise NotNorming("Gamma has no certified positive norming radius")
    level = max((lp_norm(f.space, pair(f, g), p) for g in inst.gamma), default=0.0)
    bound = level / r.lower
    dn = dunford_norm(f, p)
    return ThicknessBoundReport(level, r.lower, bound, dn.value, dn.certified,
                                dn.value <= bound + tol)
