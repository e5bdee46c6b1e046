"""The transcendental bridge: periods, theta, and wp-values.

Everything algebraic in this package can be recomputed analytically for
hyperelliptic curves: integrate the differentials over a canonical
homology basis, locate the Riemann-constant characteristic by its
weighted vanishing, map divisors through the Abel integral, and read
wp-values off logarithmic theta derivatives.  The two routes agree to
machine precision, which is the package's strongest self-check.
"""

import numpy as np

from kleinian import abel, curve_model, period_matrices, riemann_characteristic, wp_theta
from kleinian.sampling import random_curve, random_divisor
from kleinian.uniformization import divisor_to_basis

# --- a classical constant -------------------------------------------------------
pd = period_matrices(curve_model(2, 3, {4: -1.0}))  # y^2 = x^3 - x
print("lemniscatic tau:", pd.tau[0, 0], " (expect i)")
print("Legendre residual:", pd.legendre_residual)

# --- a random genus-2 curve ----------------------------------------------------
rng = np.random.default_rng(5)
curve = random_curve(2, 5, rng)
pd = period_matrices(curve)
print("\ngenus 2: Legendre residual:", pd.legendre_residual)
print("tau:\n", np.round(pd.tau, 6))

ch = riemann_characteristic(pd)
print("Riemann-constant characteristic:", ch.eps_prime, ch.eps, " parity:", ch.parity())

D = random_divisor(curve, 2, rng)
rec = divisor_to_basis(curve, D)
u = abel(curve, D, pd)
print("\nAbel image u =", np.round(u, 8))
print("wp-values, theta route vs divisor route:")
for w in curve.gaps:
    th = wp_theta(pd, ch, u, (1, w))
    print(f"   wp(1,{w}):  {th:.10f}  vs  {rec.p[w]:.10f}   |diff| = {abs(th - rec.p[w]):.1e}")
    th3 = wp_theta(pd, ch, u, (1, 1, w))
    print(f"   wp(1,1,{w}): {th3:.10f}  vs  {rec.q[w]:.10f}   |diff| = {abs(th3 - rec.q[w]):.1e}")
