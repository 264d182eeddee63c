"""Cochains, the differential, and cohomology groups.

Walks through the basic objects: finite groups by multiplication table,
dense cochain tables, the signed differential, classification of cochains,
and cohomology groups in invariant-factor form.
"""

import numpy as np

from arithcs import (
    Cochain,
    GModuleAction,
    ModuleOverZn,
    classify,
    cohomology,
    cyclic,
    differential,
    dihedral4,
    klein_four,
    quaternion8,
    symmetric3,
)


def triv(group, n):
    return GModuleAction.trivial(group, ModuleOverZn.cyclic(n))


# A cochain of degree i on G with values in M is a table indexed by G^i.
# The identity character of Z/4 is the degree-1 cochain g -> g:
z4 = cyclic(4)
alpha = Cochain(triv(z4, 4), 1, np.arange(4).reshape(4, 1))
print("alpha values:", alpha.values.reshape(-1).tolist())

# Its differential measures the failure of additivity; a homomorphism is a
# 1-cocycle, so d(alpha) = 0:
print("d(alpha) = 0:", differential(alpha).is_zero())

# d(d(f)) = 0 for any cochain, any group, any coefficients:
rng = np.random.default_rng(0)
for group in (z4, symmetric3(), quaternion8()):
    f = Cochain.random(triv(group, 4), 2, rng)
    print(f"d(d(f)) = 0 on a group of order {group.order}:",
          differential(differential(f)).is_zero())

# classify() is total: it reports a non-cocycle with a witness tuple, a
# coboundary with its canonical preimage, or coordinates of the class.
f = Cochain.random(triv(z4, 4), 1, rng)
print("classify(d(f)):", type(classify(differential(f))).__name__)

# Cohomology groups come with invariant factors and generating cocycles;
# these match the classical cohomology rings of the small groups (note the
# periodic dimensions 1, 2, 2, 1 for the quaternion group).
print("\nH^i(G, Z/2) invariant factors:")
for name, group in [("Z/2", cyclic(2)), ("Z/2 x Z/2", klein_four()),
                    ("S3", symmetric3()), ("D4", dihedral4()), ("Q8", quaternion8())]:
    factors = [cohomology(triv(group, 2), i).invariant_factors for i in range(4)]
    print(f"  {name:10s} H^0..H^3: {factors}")

# Coordinates are zero exactly on coboundaries, and the published generators
# hit the standard basis:
h2 = cohomology(triv(klein_four(), 2), 2)
print("\nH^2(Z/2 x Z/2, Z/2) =", h2.invariant_factors)
for i, gen in enumerate(h2.generators):
    print(f"  generator {i} coordinates:", h2.coordinates(gen))
