"""Two-qubit gates: closed-form levels and equivalence classes.

For a fermionic two-qubit gate the whole hierarchy question collapses to
one number, phi = arg(det A / det B). Dyadic phi lands at a finite
level; multiplying by matchgates on either side cannot change phi, so
phi labels the equivalence classes, with CPHASE(phi) as the canonical
representative. Allowing Majorana insertions on top folds phi with
2 pi - phi.
"""

import numpy as np

from matchgates import (
    class_phases,
    equiv_class,
    min_level,
    named_gate,
    random_matchgate,
    random_two_qubit_at_root,
    two_qubit_min_level,
)

rng = np.random.default_rng(2)

print("planted determinant ratios: closed form vs recursive membership")
for k in (2, 3, 4, 5):
    j = 1 if k > 2 else 0
    u = random_two_qubit_at_root(rng, k, j)
    closed = two_qubit_min_level(u)
    recursive = min_level(u, k_max=6)
    print(f"  planted at level {k}: closed form {closed}, recursion {recursive}")
print()

cz = named_gate("CZ")
cls = equiv_class(cz)
print(f"CZ: phi = {cls.phi:.6f} (pi), class representative {cls.representative_name}")
m1, m2 = random_matchgate(rng), random_matchgate(rng)
dressed = equiv_class(m1 @ cz @ m2)
print(f"after dressing with random matchgates: phi = {dressed.phi:.6f} (unchanged)")
print()

print("distinct classes per level (even-gate count, then with insertions)")
for k in range(2, 7):
    t = class_phases(k)
    print(f"  level {k}: {len(t['even']):>2} classes, {len(t['generalised']):>2} generalised")
print()

u = named_gate("CPHASE", (3 * np.pi / 2,))
cls = equiv_class(u)
print("folding: CPHASE(3pi/2) and CPHASE(pi/2) merge once Majorana insertions are allowed")
print(f"  phi = {cls.phi:.6f}, generalised = {cls.generalised_phi:.6f}")
