"""Canonical plane curves and their weighted combinatorics.

A curve with one place at infinity is fixed by two coprime integers
(n, s) and a handful of parameters indexed by Sato weight.  This script
walks through the basic bookkeeping: gaps, ordered monomials, the
differentials, and the parametrization at infinity.
"""

import numpy as np

from kleinian import curve_model, gap_sequence, infinity_series

# Weierstrass gaps: the pole orders that no function on the curve attains.
print("gaps of (2,7):", gap_sequence(2, 7))
print("gaps of (3,4):", gap_sequence(3, 4))
print("gaps of (4,7):", gap_sequence(4, 7))

# A genus-3 hyperelliptic curve  y^2 = x^7 + l4 x^5 + ... + l14
curve = curve_model(2, 7, {4: 0.3, 6: -0.2, 14: 0.5})
print("\ngenus:", curve.genus, " family:", curve.family)
print("weight of the associated entire function:", curve.sigma_weight())

# Monomials ordered by Sato weight (wgt x = 2, wgt y = 7): the gaps are
# exactly the missing weights.
print("monomials up to weight 12:", [str(m) for m in curve.monomials_up_to(12)])

# First-kind differential numerators are the g monomials of weight
# 2g-1-w for each gap w; the second-kind partners have matching poles.
ups, rhos = curve.differential_numerators()
print("first-kind numerators:", [str(m) for m in ups])
print("second-kind numerator tables:", rhos)

# Near infinity the curve is a single branch: x = xi^-2, y = xi^-7 (1 + ...).
ser = infinity_series(curve, order=16)
print("\nexpansion coefficients of y xi^7:", np.round(ser.c[:10].real, 6))
print("|f(x(xi), y(xi)) xi^14| at xi = 0.05:", ser.residual(0.05))
