"""A function into L^p'(mu) whose pairings with dual indicators are
disjointly supported unit vectors of L^p(mu): no subsequence of them
converges, so the associated operator is not compact.
"""
import numpy as np

from vmlab import KotheExampleConfig, dunford_norm, kothe_dual_witnesses, kothe_example, lp_norm, pair

cfg = KotheExampleConfig(3.0, (0.1, 0.2, 0.3, 0.4))
phi = kothe_example(cfg)
for i, g in enumerate(kothe_dual_witnesses(cfg)):
    img = pair(phi, g)
    print(f"g_{i}: image {np.round(img, 4)}  L^3 norm {lp_norm(phi.space, img, 3):.12f}")
print("Dunford norm:", dunford_norm(phi, 3).value)
