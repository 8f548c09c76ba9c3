"""A p-summing operator turns Dunford-integrable into Bochner-integrable.

||u o f||_{L^p(Y)} <= pi_p(u) ||f||_{D_p}. We use the LP constant in place of
pi_p(u) and the exact Dunford norm, and report the slack.
"""
import numpy as np

from vmlab import (DiscreteProbabilitySpace, LinearOperator, SimpleFunction,
                   SpaceDescriptor, dual_sphere, pietsch_lp_upper,
                   primal_directions, verify_composition_bound)

rng = np.random.default_rng(3)
X = SpaceDescriptor(2, np.inf)
u = LinearOperator(X, SpaceDescriptor(3, 2.0), rng.standard_normal((3, 2)))
space = DiscreteProbabilitySpace(rng.dirichlet(np.ones(6)))
f = SimpleFunction(space, X, rng.standard_normal((6, 2)))

p = 1.5
rows = space.masses[:, None] ** (1 / p) * f.values
cert = pietsch_lp_upper(u, p, dual_sphere(X, 400), np.vstack([rows, primal_directions(X, 32)]))
rep = verify_composition_bound(u, f, p, cert)
print(f"||u o f||_p = {rep.lhs:.6f}")
print(f"C * ||f||_D = {rep.constant:.6f} * {rep.dunford:.6f} = {rep.rhs:.6f}")
print("holds:", rep.holds, " slack:", f"{rep.slack:.3e}")
