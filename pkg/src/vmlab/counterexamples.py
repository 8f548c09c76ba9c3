"""Finite truncations of two classical non-compact Dunford operators.

``pettis_example``: f = 2^n e_n on an interval of length 4^-n, n = 1..N,
and 0 on the remainder. The orthonormal system in L^2[0,1] is replaced by
the coordinate basis of l_2^N, which spans the same values.

``kothe_example``: phi = mu(A_i)^(-1/p) f_i on atom A_i with values in
Z = L^p'(mu), f_i the normalized indicator of A_i. The images of the dual
indicators g_i under ``x* -> <phi, x*>`` are disjointly supported unit
vectors of L^p(mu).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .dunford import SimpleFunction
from .errors import BadExponent, TooManyLevels, VMLabError
from .normed import SpaceDescriptor, conjugate_exponent
from .space import DiscreteProbabilitySpace

__all__ = ["PettisExampleConfig", "KotheExampleConfig", "pettis_example",
           "pettis_space", "kothe_example", "kothe_dual_witnesses",
           "MAX_LEVELS"]

MAX_LEVELS = 12


@dataclass(frozen=True)
class PettisExampleConfig:
    levels: int
    p: float = 2.0

    def __post_init__(self):
        if int(self.levels) != self.levels or not 1 <= self.levels <= MAX_LEVELS:
            raise TooManyLevels(f"levels must be an integer in 1..{MAX_LEVELS}, got {self.levels}")


@dataclass(frozen=True)
class KotheExampleConfig:
    p: float
    atom_masses: tuple = field(default=(0.5, 0.5))

    def __post_init__(self):
        if not (float(self.p) > 1 and math.isfinite(self.p)):
            raise BadExponent(f"p must lie in (1, inf), got {self.p}")
        object.__setattr__(self, "atom_masses", tuple(float(m) for m in self.atom_masses))
        if len(self.atom_masses) < 2:
            raise VMLabError("the Koethe example needs at least two atoms")


def pettis_space(levels: int) -> DiscreteProbabilitySpace:
    """Atoms I_1..I_N with masses 4^-n, then the remainder atom."""
    head = [4.0 ** -n for n in range(1, levels + 1)]
    return DiscreteProbabilitySpace(head + [1.0 - math.fsum(head)])


def pettis_example(cfg: PettisExampleConfig | int) -> SimpleFunction:
    if not isinstance(cfg, PettisExampleConfig):
        cfg = PettisExampleConfig(cfg)
    N = cfg.levels
    vals = np.zeros((N + 1, N))
    vals[np.arange(N), np.arange(N)] = 2.0 ** np.arange(1, N + 1)
    return SimpleFunction(pettis_space(N), SpaceDescriptor(N, 2.0), vals)


def _kothe_parts(cfg):
    space = DiscreteProbabilitySpace(cfg.atom_masses)
    p = float(cfg.p)
    Z = SpaceDescriptor.weighted(space.masses, conjugate_exponent(p))
    return space, p, Z


def kothe_example(cfg: KotheExampleConfig) -> SimpleFunction:
    """phi on atom i equals mu_i^(-1/p) chi_{A_i} / ||chi_{A_i}||_{p'}."""
    space, p, Z = _kothe_parts(cfg)
    eye = np.eye(space.n)
    f = eye / np.atleast_1d(Z.norm(eye))[:, None]
    phi = space.masses[:, None] ** (-1.0 / p) * f
    return SimpleFunction(space, Z, phi)


def kothe_dual_witnesses(cfg: KotheExampleConfig) -> np.ndarray:
    """Rows g_i: dual indicators of norm one in L^p(mu) with <f_i, g_i> = 1."""
    space, p, Z = _kothe_parts(cfg)
    eye = np.eye(space.n)
    return eye / np.atleast_1d(Z.dual_norm(eye))[:, None]
