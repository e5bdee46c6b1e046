"""Algebraic models: the Jacobian relations and the Kummer quadrics.

Basis wp-values of a curve satisfy polynomial identities that cut out
the Jacobian (minus the theta divisor) as an affine variety.  For
hyperelliptic curves the relations pack into a bordered-matrix cubic
form whose order-3 minors realize the Kummer variety as a rank-1 locus.
"""

import numpy as np

from kleinian import build_H, cubic_residual, kummer_residuals, residuals_27, residuals_34
from kleinian.identities import cubic_scale, h_rank_profile, two_index_values_27
from kleinian.sampling import random_curve, random_divisor
from kleinian.uniformization import divisor_to_basis, extended_34

rng = np.random.default_rng(11)

# --- the genus-3 hyperelliptic model ------------------------------------------
curve = random_curve(2, 7, rng)
D = random_divisor(curve, 3, rng)
rec = divisor_to_basis(curve, D)
print("(2,7) model residuals (normalized):", residuals_27(rec, curve))

# --- the trigonal model ---------------------------------------------------------
curve34 = random_curve(3, 4, rng)
D34 = random_divisor(curve34, 3, rng)
rec34 = extended_34(curve34, divisor_to_basis(curve34, D34))
res = residuals_34(rec34, curve34)
print("\n(3,4) model residuals:")
for k, v in res.items():
    print(f"   {k}: {v:.2e}")

# --- matrix machinery ------------------------------------------------------------
# All two-index wp-values at the divisor, the non-basis ones derived by
# exact jet-flow derivatives, feed the bordered matrices.
vals = two_index_values_27(curve, D)
bundle = build_H(curve, vals)
cr = np.max(np.abs(cubic_residual(bundle))) / cubic_scale(bundle)
print("\ncubic form residual:", cr)
print("singular values of H (rank 3):", np.round(h_rank_profile(bundle), 12))
K, defect, minors = kummer_residuals(bundle)
print("Kummer pairing defect:", np.max(np.abs(defect)) / np.max(np.abs(K)))
print("max 2x2 minor of K (rank 1):", np.max(np.abs(minors)) / np.max(np.abs(K)) ** 2)
