"""A Dunford-integrable function whose operator refuses to be compact.

f takes the value 2^n e_n on an atom of mass 4^-n. Every scalar pairing
<f, x*> has L^2 norm at most 1, yet the images of the basis vectors are
orthonormal, so the singular values never decay and the mass of
|<f, x*>|^2 never spreads out.
"""
import numpy as np

from vmlab import bochner_norm, dunford_norm, pettis_example, sv_profile, zfp_ui_modulus

for N in (2, 4, 8):
    f = pettis_example(N)
    print(f"N={N}: Dunford norm {dunford_norm(f, 2).value:.6f}   "
          f"Bochner norm {bochner_norm(f, 2):.6f} (= sqrt N)")

f = pettis_example(6)
print("singular values:", np.round(sv_profile(f), 12))

# eta(delta): the largest share of int |<f, x*>|^2 that fits in a set of mass delta
deltas = [4.0 ** -n for n in range(1, 7)]
rep = zfp_ui_modulus(f, 2, deltas)
for d, v, (xs, atoms) in zip(rep.deltas, rep.values, rep.witnesses):
    print(f"delta={d:.6f}  eta={v:.6f}  atoms={atoms}  x*={np.round(xs, 3)}")
print("eta stays at 1 as delta -> 0: the family is not uniformly integrable")
