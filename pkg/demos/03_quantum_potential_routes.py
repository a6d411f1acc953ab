"""Four routes to the quantum potential on one density profile.

The same physics can be written as the Bohm closed form (two algebraic
shapes of it), as a non-local smearing of log-density by a kernel, or
as a gradient expansion of that smearing. This script computes all of
them on a bumpy periodic density and shows where they agree, how fast
the expansion closes the gap to the kernel, and what the delta kernel
degenerates to.
"""

import numpy as np

from qfluid import (Field, Grid, PhysParams, bohm_potential,
                    bohm_identity_residual, enthalpy, make_kernel, moments,
                    nonlocal_energy, series_energy)

grid = Grid(n=128, length=2.0)
x = grid.x
w = 2.0 * np.pi / grid.length
rho = Field(grid, np.exp(0.35 * np.cos(w * x) + 0.1 * np.sin(2 * w * x)))

# pick the smearing scale first, then the matching Planck constant:
# a gaussian of width s carries a2 = -s^2, and |a2| = hbar^2/(4 m kT)
s = 0.08
p = PhysParams(hbar=2.0 * np.sqrt(1.0 * 1.0 * s * s), m=1.0, kT=1.0)

# 1. the two closed forms are one identity
sqrt_form = bohm_potential(rho, p, "sqrt_form")
grad_form = bohm_potential(rho, p, "gradient_form")
print("closed forms, max |sqrt - gradient|: %.3e"
      % np.abs(sqrt_form.values - grad_form.values).max())
print("identity residual helper says:       %.3e" % bohm_identity_residual(rho, p))
print()

# 2. gradient expansion of the gaussian kernel, term by term
kern = make_kernel("gaussian", grid, width=s)
table = moments(kern, max_n=4)
target = nonlocal_energy(rho, kern, p).values
print("gaussian kernel, width %.2f (a2 = %.4f):" % (s, table.a2))
print("  terms   max |series - kernel|")
for n_terms in range(4):
    approx = series_energy(rho, table, abs(table.a2) ** 0.5, n_terms, p).values
    print("  %5d   %.3e" % (n_terms, np.abs(approx - target).max()))
print("  (zero terms is the bare enthalpy; each term buys a factor of")
print("   order (a/L_feature)^-2, measured here at twenty to thirty)")
print()

# 3. the delta kernel has no width to expand in
delta = make_kernel("delta", grid)
from_delta = nonlocal_energy(rho, delta, p).values
enth = enthalpy(rho, p).values
# enthalpy carries the +1 from the lam+1 Bernoulli head, the kernel does not
print("delta kernel minus (kT/m) ln rho:    %.3e"
      % np.abs(from_delta - (enth - p.kT / p.m)).max())
