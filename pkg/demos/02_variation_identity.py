"""p-variation of an indefinite integral equals the Bochner norm.

On a finite atomic space the sup over partitions is attained at the finest
one. We check that against brute force over all 4140 partitions of 8 atoms.
"""
import itertools

import numpy as np

from vmlab import (DiscreteProbabilitySpace, SimpleFunction, SpaceDescriptor,
                   bochner_norm, enumerate_partitions, indefinite_integral,
                   p_variation, partition_p_sum)

rng = np.random.default_rng(0)
space = DiscreteProbabilitySpace(rng.dirichlet(np.ones(8)))
f = SimpleFunction(space, SpaceDescriptor(3, 1.0), rng.standard_normal((8, 3)))
nu = indefinite_integral(f)

for p in (1.0, 1.5, 2.0, 3.0):
    print(f"p={p}: finest {p_variation(nu, p):.12f}  brute {p_variation(nu, p, 'brute'):.12f}"
          f"  Hoelder {p_variation(nu, p, 'holder_dual'):.12f}  Bochner {bochner_norm(f, p):.12f}")

# coarser partitions only lose mass
sums = sorted(partition_p_sum(nu, P, 2) for P in itertools.islice(enumerate_partitions(space), 0, None, 500))
print("a few partition sums at p=2:", np.round(sums, 4))
