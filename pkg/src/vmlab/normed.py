"""Finite-dimensional normed spaces and maximization over the dual ball.

A :class:`SpaceDescriptor` is R^d with either the l_q norm or a weighted
L^q norm ``(sum_j w_j |x_j|^q)^(1/q)``. Vectors and dual vectors are plain
numpy arrays; the descriptor says how to measure and pair them. The pairing
carries the weights, ``<x, x*> = sum_j w_j x_j x*_j``, which makes the dual of
weighted-L^q the weighted-L^q' space over the same weights (for plain l_q
the weights are all one).

The central routine is :func:`maximize_p_moment`, the supremum over the dual
unit ball of ``(sum_i mu_i |<v_i, x*>|^p)^(1/p)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import (BadExponent, DimensionMismatch, EmptyFamily,
                     TooManyVertices)

__all__ = ["SpaceDescriptor", "MomentMaxResult", "conjugate_exponent",
           "dual_ball_extreme_points", "maximize_p_moment", "p_moment",
           "sphere_directions", "euclidean_norm_bounds", "MULTISTART",
           "DEFAULT_SEED", "MAX_SIGN_DIM"]

MULTISTART = 32
DEFAULT_SEED = 0
MAX_SIGN_DIM = 16
ASCENT_MAXITER = 2000
ASCENT_RTOL = 1e-15

EXACT = "exact"
HEURISTIC = "heuristic"


def conjugate_exponent(q: float) -> float:
    q = float(q)
    if q == 1:
        return math.inf
    if math.isinf(q):
        return 1.0
    return 1.0 + 1.0 / (q - 1.0)


@dataclass(frozen=True)
class SpaceDescriptor:
    """R^d with an l_q (``weights is None``) or weighted L^q norm."""

    dim: int
    q: float = 2.0
    weights: Optional[tuple] = None

    def __post_init__(self):
        if int(self.dim) != self.dim or self.dim < 1:
            raise DimensionMismatch(f"dim must be a positive integer, got {self.dim}")
        q = float(self.q)
        if math.isnan(q) or q < 1:
            raise BadExponent(f"norm exponent must lie in [1, inf], got {self.q}")
        object.__setattr__(self, "dim", int(self.dim))
        object.__setattr__(self, "q", q)
        if self.weights is not None:
            w = tuple(float(v) for v in self.weights)
            if len(w) != self.dim:
                raise DimensionMismatch(f"{len(w)} weights for dimension {self.dim}")
            if not all(v > 0 and math.isfinite(v) for v in w):
                raise ValueError("weights must be finite and > 0")
            object.__setattr__(self, "weights", w)

    @classmethod
    def lq(cls, dim, q=2.0):
        return cls(dim, q)

    @classmethod
    def weighted(cls, weights, q=2.0):
        return cls(len(weights), q, tuple(weights))

    @property
    def w(self) -> np.ndarray:
        """Pairing weights (all ones for plain l_q)."""
        if self.weights is None:
            return np.ones(self.dim)
        return np.asarray(self.weights)

    @property
    def is_hilbert(self) -> bool:
        return self.q == 2.0

    def dual(self) -> "SpaceDescriptor":
        return SpaceDescriptor(self.dim, conjugate_exponent(self.q), self.weights)

    def check(self, x, name="vector") -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.ndim == 0 or x.shape[-1] != self.dim:
            raise DimensionMismatch(
                f"{name} has shape {x.shape}, expected trailing dimension {self.dim}")
        return x

    def norm(self, x) -> np.ndarray | float:
        """Norm along the last axis; works on a single vector or a stack."""
        x = np.abs(self.check(x))
        q = self.q
        if math.isinf(q):
            out = x.max(axis=-1)
        elif q == 1:
            out = (x * self.w).sum(axis=-1)
        else:
            top = x.max(axis=-1, keepdims=True)
            safe = np.where(top > 0, top, 1.0)
            out = top[..., 0] * ((self.w * (x / safe) ** q).sum(axis=-1)) ** (1.0 / q)
        return float(out) if np.ndim(out) == 0 else out

    def dual_norm(self, xs) -> np.ndarray | float:
        return self.dual().norm(xs)

    def pair(self, x, xs) -> np.ndarray | float:
        """``<x, xs>`` with the weighted pairing.

        ``x`` may be a stack ``(n, d)`` and ``xs`` a single dual vector ``(d,)``
        or a stack of dual vectors given as columns ``(d, k)``.
        """
        x = self.check(x)
        xs = np.asarray(xs, dtype=float)
        if xs.shape[0] != self.dim:
            raise DimensionMismatch(f"dual vector has leading dimension {xs.shape[0]}, expected {self.dim}")
        out = (x * self.w) @ xs
        return float(out) if np.ndim(out) == 0 else out

    def norming_functional(self, x) -> np.ndarray:
        """A dual vector ``x*`` of dual norm one with ``<x, x*> = ||x||``.

        Rows of a stack are handled independently; zero rows map to zero.
        """
        x = self.check(x)
        single = x.ndim == 1
        X = np.atleast_2d(x)
        out = np.zeros_like(X)
        q = self.q
        if q == 1:
            out = np.sign(X)
        elif math.isinf(q):
            j = np.argmax(np.abs(X), axis=1)
            rows = np.arange(X.shape[0])
            out[rows, j] = np.sign(X[rows, j]) / self.w[j]
        else:
            nrm = np.atleast_1d(self.norm(X))
            nz = nrm > 0
            scaled = X[nz] / nrm[nz, None]
            out[nz] = np.sign(scaled) * np.abs(scaled) ** (q - 1.0)
        return out[0] if single else out

    def to_json(self) -> dict:
        d = {"dim": self.dim, "q": "inf" if math.isinf(self.q) else self.q}
        if self.weights is not None:
            d["weights"] = list(self.weights)
        return d

    @classmethod
    def from_json(cls, obj) -> "SpaceDescriptor":
        q = obj.get("q", 2.0)
        q = math.inf if q in ("inf", "Infinity", None) else float(q)
        return cls(int(obj["dim"]), q, obj.get("weights"))


@dataclass
class MomentMaxResult:
    value: float
    witness: np.ndarray
    certified: str = EXACT
    starts: int = field(default=0, repr=False)

    @property
    def exact(self) -> bool:
        return self.certified == EXACT


def dual_ball_extreme_points(desc: SpaceDescriptor) -> Optional[np.ndarray]:
    """Extreme points of the dual unit ball when it is a polytope, else None.

    Primal (weighted) l_inf has a cross-polytope dual ball with vertices
    ``+-e_j / w_j``; primal (weighted) l_1 has the cube ``[-1, 1]^d`` with its
    ``2^d`` sign vectors.
    """
    d = desc.dim
    if math.isinf(desc.q):
        eye = np.eye(d) / desc.w[:, None]
        return np.concatenate([eye, -eye])
    if desc.q == 1:
        if d > MAX_SIGN_DIM:
            raise TooManyVertices(f"2^{d} sign vectors exceeds the 2^{MAX_SIGN_DIM} guard")
        codes = np.arange(2 ** d)[:, None] >> np.arange(d)[None, :] & 1
        return 1.0 - 2.0 * codes
    return None


def _moment_matrix(desc, vectors, weights, p):
    V = desc.check(np.atleast_2d(np.asarray(vectors, dtype=float)), "vectors")
    if V.shape[0] == 0:
        raise EmptyFamily("no vectors given")
    mu = np.asarray(weights, dtype=float).reshape(-1)
    if mu.shape[0] != V.shape[0]:
        raise DimensionMismatch(f"{mu.shape[0]} weights for {V.shape[0]} vectors")
    if np.any(mu <= 0):
        raise ValueError("weights must be > 0")
    return mu[:, None] ** (1.0 / p) * V * desc.w[None, :]


def _pnorm_cols(R, p):
    # l_p norm of each column of R, scaled against overflow
    A = np.abs(R)
    top = A.max(axis=0)
    safe = np.where(top > 0, top, 1.0)
    return top * ((A / safe) ** p).sum(axis=0) ** (1.0 / p)


def _check_moment_p(p):
    p = float(p)
    if math.isnan(p) or p < 1 or math.isinf(p):
        raise BadExponent(f"p must lie in [1, inf), got {p}")
    return p


def p_moment(desc: SpaceDescriptor, vectors, weights, p: float, xs) -> np.ndarray | float:
    """``(sum_i mu_i |<v_i, x*>|^p)^(1/p)`` for one dual vector or a stack of rows."""
    p = _check_moment_p(p)
    M = _moment_matrix(desc, vectors, weights, p)
    Y = np.asarray(xs, dtype=float)
    out = _pnorm_cols(M @ np.atleast_2d(Y).T, p)
    return float(out[0]) if Y.ndim == 1 else out


def sphere_directions(d: int, count: int, seed: int = DEFAULT_SEED) -> np.ndarray:
    """Euclidean unit vectors spread over S^(d-1), at least ``count`` of them.

    d = 1: the two signs. d = 2: a uniform angular grid. d = 3: a Fibonacci
    lattice. d = 4, 5: a product grid in hyperspherical angles with ``m``
    midpoint values per polar angle and ``2m`` azimuths, ``2 m^(d-1) >= count``.
    Larger d: Gaussian samples from ``seed``.
    """
    count = int(count)
    if d == 1:
        return np.array([[1.0], [-1.0]])
    if d == 2:
        t = 2 * np.pi * np.arange(count) / count
        return np.column_stack([np.cos(t), np.sin(t)])
    if d == 3:
        k = np.arange(count) + 0.5
        z = 1 - 2 * k / count
        r = np.sqrt(1 - z * z)
        phi = np.pi * (1 + 5 ** 0.5) * k
        return np.column_stack([r * np.cos(phi), r * np.sin(phi), z])
    if d <= 5:
        m = max(2, math.ceil((count / 2) ** (1.0 / (d - 1))))
        polar = (np.arange(m) + 0.5) * np.pi / m
        azim = np.arange(2 * m) * np.pi / m
        grids = np.meshgrid(*([polar] * (d - 2) + [azim]), indexing="ij")
        ang = [g.reshape(-1) for g in grids]
        pts = np.ones((ang[0].size, d))
        s = np.ones(ang[0].size)
        for k, a in enumerate(ang):
            pts[:, k] = s * np.cos(a)
            s = s * np.sin(a)
        pts[:, d - 1] = s
        return pts / np.linalg.norm(pts, axis=1, keepdims=True)
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((count, d))
    return g / np.linalg.norm(g, axis=1, keepdims=True)


def euclidean_norm_bounds(desc: SpaceDescriptor) -> tuple:
    """Constants ``(lo, hi)`` with ``lo |x|_2 <= ||x|| <= hi |x|_2``."""
    d, q = desc.dim, desc.q
    if math.isinf(q):
        return d ** -0.5, 1.0
    w = desc.w
    a = d ** (1.0 / q - 0.5)
    lo, hi = (1.0, a) if q <= 2 else (a, 1.0)
    return lo * w.min() ** (1.0 / q), hi * w.max() ** (1.0 / q)


def _start_points(desc, V, n_random, seed, extra):
    dual = desc.dual()
    d = desc.dim
    pts = [np.eye(d) / np.atleast_1d(dual.norm(np.eye(d)))[:, None]]
    nrm = np.atleast_1d(desc.norm(V))
    order = np.argsort(-nrm, kind="stable")
    top = V[order[: max(1, MULTISTART - d - n_random)]]
    top = top[np.atleast_1d(desc.norm(top)) > 0]
    if top.size:
        pts.append(desc.norming_functional(top))
    if extra is not None and len(extra):
        E = desc.check(np.atleast_2d(extra), "extra starts")
        En = np.atleast_1d(dual.norm(E))
        pts.append(E[En > 0] / En[En > 0, None])
    rng = np.random.default_rng(seed)
    G = rng.standard_normal((max(n_random, MULTISTART - sum(len(p) for p in pts)), d))
    pts.append(G / np.atleast_1d(dual.norm(G))[:, None])
    return np.concatenate(pts)


def _ascent(desc, M, p, Y0):
    """Monotone ascent for a convex objective over the dual ball.

    Each step moves every start to the dual-ball point maximizing the
    linearization at the current point; for a convex objective this never
    decreases the value. Runs all starts at once.
    """
    Y = Y0.copy()
    val = _pnorm_cols(M @ Y.T, p)
    w = desc.w
    for _ in range(ASCENT_MAXITER):
        R = M @ Y.T
        if p == 1:
            S = np.sign(R)
        else:
            top = np.abs(R).max(axis=0)
            S = np.sign(R) * (np.abs(R) / np.where(top > 0, top, 1.0)) ** (p - 1)
        G = (M.T @ S).T
        Ynew = desc.norming_functional(G / w)
        new = _pnorm_cols(M @ Ynew.T, p)
        better = new > val
        Y[better] = Ynew[better]
        gain = np.where(better, new - val, 0.0)
        val = np.maximum(new, val)
        if np.all(gain <= ASCENT_RTOL * np.maximum(val, 1e-300)):
            break
    return Y, val


def maximize_p_moment(desc: SpaceDescriptor, vectors, weights, p: float, *,
                      seed: int = DEFAULT_SEED, extra_starts=None,
                      force_heuristic: bool = False) -> MomentMaxResult:
    """Supremum over the dual unit ball of ``(sum_i mu_i |<v_i, x*>|^p)^(1/p)``.

    Exact when the dual ball is a polytope (the objective is convex, so the
    maximum sits at a vertex) and when the space is (weighted) L^2 with
    p = 2 (top singular value). Otherwise a deterministic multi-start ascent
    returns a heuristic value that is still a true lower bound: the value is
    always re-evaluated at the returned witness, which lies in the dual ball.
    """
    p = _check_moment_p(p)
    V = desc.check(np.atleast_2d(np.asarray(vectors, dtype=float)), "vectors")
    M = _moment_matrix(desc, V, weights, p)
    dual = desc.dual()

    witness, certified = None, HEURISTIC
    starts = 0
    if not force_heuristic:
        try:
            ext = dual_ball_extreme_points(desc)
        except TooManyVertices:
            ext = None
        if ext is not None:
            vals = _pnorm_cols(M @ ext.T, p)
            witness, certified = ext[int(np.argmax(vals))], EXACT
            starts = len(ext)
        elif desc.q == 2 and p == 2:
            sw = np.sqrt(desc.w)
            _, _, vt = np.linalg.svd(M / sw[None, :], full_matrices=False)
            witness, certified = vt[0] / sw, EXACT
    if witness is None:
        Y0 = _start_points(desc, V, MULTISTART // 2, seed, extra_starts)
        Y, vals = _ascent(desc, M, p, Y0)
        k = int(np.argmax(vals))
        witness, starts = Y[k], len(Y0)

    witness = np.array(witness, dtype=float)
    dn = dual.norm(witness)
    if dn > 1:
        witness = witness / dn
    value = float(_pnorm_cols(M @ witness[:, None], p)[0])
    return MomentMaxResult(value, witness, certified, starts)
