"""The groupoid addition law on divisor classes.

Inversion complements a divisor inside the zeros of the weight-2g
function through it; addition complements the union inside the zeros of
the weight-3g function and then inverts.  The genus-3 hyperelliptic
curve also has a fully explicit coordinate path through a 3x3 linear
system, cross-checked against the divisor path here.
"""

import numpy as np

from kleinian import add, add27_explicit, negate
from kleinian.addition import quotient_identity_residual_27
from kleinian.divisors import multiset_distance
from kleinian.sampling import random_curve, random_divisor
from kleinian.uniformization import divisor_to_basis

rng = np.random.default_rng(3)

curve = random_curve(3, 4, rng)
D1, D2, D3 = (random_divisor(curve, 3, rng) for _ in range(3))

S = add(curve, D1, D2)
print("sum divisor on-curve residual:", S.max_curve_residual())
print("associativity:",
      multiset_distance(add(curve, S, D3), add(curve, D1, add(curve, D2, D3))))
print("inverse axiom:", multiset_distance(add(curve, S, negate(curve, D2)), D1))

# hyperelliptic negation is the pointwise involution (x, y) -> (x, -y)
curve27 = random_curve(2, 7, rng)
E = random_divisor(curve27, 3, rng)
N = negate(curve27, E)
print("\nnegation vs involution:",
      multiset_distance(N, type(E)(curve27, [(p.x, -p.y) for p in E], validate=False)))

# the explicit coordinate path
r1, r2 = divisor_to_basis(curve27, E), divisor_to_basis(curve27, random_divisor(curve27, 3, rng))
rec_hat, gammas = add27_explicit(r1, r2, curve27)
print("explicit-path gammas:", {k: f"{v:.4f}" for k, v in gammas.items()})
print("factorization identity residual:",
      quotient_identity_residual_27(curve27, r1, r2, rec_hat, gammas))
