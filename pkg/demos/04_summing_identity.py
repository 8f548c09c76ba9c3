"""Bracketing the 2-summing norm of the identity on l_2^d.

The basis family gives sqrt(d) from below. From above, a linear program
finds a probability measure on the dual sphere that dominates the operator
on a set of test directions. The uniform measure is optimal, but so is any
tight frame, and the LP returns a sparse one.
"""
import numpy as np

from vmlab import (LinearOperator, SpaceDescriptor, dual_sphere, pi_p_lower,
                   pietsch_lp_upper, primal_directions)

for d in (2, 3):
    D = SpaceDescriptor(d, 2.0)
    u = LinearOperator.identity(D)
    low = pi_p_lower(u, 2)
    cert = pietsch_lp_upper(u, 2, dual_sphere(D, 1000), primal_directions(D, 64))
    print(f"d={d}: {low.value:.6f} <= pi_2 <= {cert.constant:.6f}   sqrt(d)={np.sqrt(d):.6f}")
    print(f"      support of the measure: {int((cert.weights > 1e-9).sum())} points, "
          f"worst domination gap {cert.violation(u):.2e}")

# a less symmetric operator into l_1
u = LinearOperator(SpaceDescriptor(2, 2.0), SpaceDescriptor(2, 1.0), [[1.0, 2.0], [0.0, 1.0]])
low = pi_p_lower(u, 2)
cert = pietsch_lp_upper(u, 2, dual_sphere(u.domain, 1000), primal_directions(u.domain, 64))
print(f"u into l_1: {low.value:.6f} <= pi_2 <= {cert.constant:.6f}")
