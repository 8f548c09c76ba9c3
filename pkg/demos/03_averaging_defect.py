"""Approximating f by its block averages.

For a function that is constant on the blocks of a hidden partition, every
refinement of that partition reproduces f exactly. For the Pettis example the
coarsest average misses by a full unit in Dunford norm.
"""
import numpy as np

from vmlab import (DiscreteProbabilitySpace, Partition, SimpleFunction,
                   SpaceDescriptor, approximation_defect, enumerate_partitions,
                   is_refinement, pettis_example)

space = DiscreteProbabilitySpace([0.1, 0.2, 0.3, 0.25, 0.15])
hidden = Partition([[0, 3], [1], [2, 4]], 5)
vals = np.array([[1.0, -2.0], [0.5, 0.5], [3.0, 1.0]])[hidden.labels()]
f = SimpleFunction(space, SpaceDescriptor(2, np.inf), vals)

for P in enumerate_partitions(space):
    d = approximation_defect(f, P, 1.5)
    tag = "refines hidden" if is_refinement(P, hidden) else ""
    if tag or len(P) == 1:
        print(f"{[list(b) for b in P.blocks]!s:40} defect {d:.3e} {tag}")

g = pettis_example(3)
print("Pettis N=3, coarsest average:", approximation_defect(g, g.space.coarsest(), 2))
