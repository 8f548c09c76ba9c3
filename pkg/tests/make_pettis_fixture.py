"""Regenerate fixtures/pettis_defect.json by dense sampling of the unit sphere.

Run from the repository root: ``python3 tests/make_pettis_fixture.py``.
"""
import json
import pathlib

import numpy as np

N = 3
masses = [4.0 ** -n for n in range(1, N + 1)]
masses.append(1.0 - sum(masses))
f = np.zeros((N + 1, N))
for n in range(N):
    f[n, n] = 2.0 ** (n + 1)
c = (np.array(masses)[:, None] * f).sum(axis=0)
g = f - c

# Fibonacci lattice on S^2, 200k points; the sup of ||<g, x>||_2 over it
k = np.arange(200_000) + 0.5
z = 1 - 2 * k / k.size
r = np.sqrt(1 - z * z)
phi = np.pi * (1 + 5 ** 0.5) * k
X = np.column_stack([r * np.cos(phi), r * np.sin(phi), z])
vals = np.sqrt((np.array(masses)[:, None] * (g @ X.T) ** 2).sum(axis=0))
out = {"levels": N, "p": 2, "coarsest_defect_sampled": float(vals.max()),
       "sphere_points": int(k.size), "floor": 0.9}
path = pathlib.Path(__file__).parent / "fixtures" / "pettis_defect.json"
path.write_text(json.dumps(out, indent=2) + "\n")
print(out)
