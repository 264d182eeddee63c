"""Cup products, the Bockstein map, and conjugation homotopies.

Shows the carry cocycle as the Bockstein of the identity character, the
standard degree-3 class on Z/n, the Leibniz rule, and the shuffle-path
homotopies h_{a,f} that trivialize the conjugation action on cohomology.
"""

import numpy as np

from arithcs import (
    Cochain,
    GModuleAction,
    ModuleOverZn,
    carry_cocycle,
    classify,
    conjugate,
    cup,
    cyclic_three_cocycle,
    differential,
    homotopy,
    shuffle_paths,
    symmetric3,
)

# The Bockstein of the identity character alpha of Z/n is the carry cocycle:
# delta(alpha)(i, j) = 1 exactly when adding i and j carries past n.
beta = carry_cocycle(5)
print("carry table mod 5 at (3, 4):", beta(3, 4), " at (1, 2):", beta(1, 2))
print("d(delta alpha) = 0:", differential(beta).is_zero())

# alpha cup delta(alpha) generates H^3(Z/n, Z/n):
for n in (2, 3, 4):
    c = cyclic_three_cocycle(n)
    print(f"class of alpha cup delta(alpha) mod {n}:", classify(c))

# The Leibniz rule holds on the nose, not just in cohomology:
rng = np.random.default_rng(1)
s3 = symmetric3()
coeffs = GModuleAction.trivial(s3, ModuleOverZn.cyclic(4))
x = Cochain.random(coeffs, 1, rng)
y = Cochain.random(coeffs, 2, rng)
lhs = differential(cup(x, y))
rhs = cup(differential(x), y) + (-1) * cup(x, differential(y))
print("Leibniz d(x u y) = dx u y - x u dy:", lhs == rhs)

# Conjugation acts on cochains by f^a = a^{-1} . f(a g a^{-1}, ...); it is
# trivial on cohomology, and the homotopy h_{a,f} witnesses that exactly:
#     h_{a,df} + d(h_{a,f}) = f^a - f
f = Cochain.random(coeffs, 3, rng)
a = 3
identity_holds = (
    homotopy([a], differential(f)) + differential(homotopy([a], f))
    == conjugate(f, a) - f
)
print("chain homotopy identity:", identity_holds)

# The h's for words multiply only up to a second homotopy h_{a,b,f};
# any 3-cocycle will do, and coboundaries are the easiest to produce:
f3 = differential(Cochain.random(coeffs, 2, rng))
a, b = 1, 4
lhs = homotopy([b], f3) - homotopy([s3.op(a, b)], f3) + conjugate(homotopy([a], f3), b)
print("h_b - h_ab + (h_a)^b = d(-h_{a,b}):", lhs == differential(-homotopy([a, b], f3)))

# Each term of h_{a_1..a_k,f} comes from a monotone lattice path; the sign
# is the parity of the number of grid squares above the path.
print("\npaths in the 3 x 2 grid:")
for path in shuffle_paths(3, 2):
    print("  ", "".join(path.steps), " squares above:", path.squares_above(), " sign:", path.sign)
