"""Bounding the Dunford norm through a finite norming set.

If |<f, g>| has L^p norm at most n for each g in Gamma, and Gamma's
absolutely convex hull contains r B_X*, then ||f||_D <= n / r.
"""
import numpy as np

from vmlab import (DiscreteProbabilitySpace, SimpleFunction, SpaceDescriptor,
                   ThicknessInstance, thickness_chain_profile,
                   thickness_norm_bound, thickness_radius)

D = SpaceDescriptor(2, 2.0)
cross = ThicknessInstance(D, [[1, 0], [-1, 0], [0, 1], [0, -1]])
r = thickness_radius(cross)
print("radius of the cross:", r.lower, "at", np.round(r.witness, 6))

rng = np.random.default_rng(1)
space = DiscreteProbabilitySpace(rng.dirichlet(np.ones(5)))
f = SimpleFunction(space, D, rng.standard_normal((5, 2)))
rep = thickness_norm_bound(f, cross, 2)
print(f"Dunford norm {rep.dunford:.6f} <= {rep.level:.6f} / {rep.delta:.6f} = {rep.bound:.6f}")

# adding directions fattens the hull
angles = [np.linspace(0, np.pi, k, endpoint=False) for k in (1, 2, 4, 8)]
stages = [np.column_stack([np.cos(a), np.sin(a)]) for a in angles]
inst = ThicknessInstance.from_stages(D, stages)
print("radius along the chain:", np.round(thickness_chain_profile(inst), 6))

D3 = SpaceDescriptor(3, 2.0)
r3 = thickness_radius(ThicknessInstance(D3, np.vstack([np.eye(3), -np.eye(3)])), grid_eps=0.01)
print(f"3-d cross: {r3.lower:.5f} <= r <= {r3.upper:.5f}  (exact 1/sqrt 3 = {3 ** -0.5:.5f})")
