"""What changes when the quantum potential propagates at finite speed.

The wave-operator form of the quantum potential replaces a spatial
Laplacian of sqrt(rho) with a d'Alembertian built from a short history
of the density. Three things are checked here by construction rather
than by tolerance tuning:

  1. a static history reproduces the instantaneous closed form exactly,
  2. the finite-c correction on a moving density scales as 1/c^2,
  3. the retarded kernel energy with a delta kernel collapses to the
     local enthalpy of the newest snapshot, whatever the history was.
"""

import numpy as np

from qfluid import (DensityHistory, Field, Grid, PhysParams, bohm_potential,
                    dalembert_uq, make_kernel, nonlocal_energy,
                    retarded_energy)

grid = Grid(n=128, length=1.0)
x = grid.x
base = 0.3 * np.cos(2 * np.pi * x) + 0.1 * np.sin(4 * np.pi * x)

# --- 1. static history, any c: the wave operator is all space, no time
p = PhysParams(hbar=1.0, c=3.0)
hist = DensityHistory(grid, capacity=5)
for j in range(5):
    hist.push(0.01 * j, Field(grid, base))
rho = Field(grid, np.exp(base))
diff = np.abs(dalembert_uq(hist, p).values
              - bohm_potential(rho, p, "sqrt_form").values).max()
print("static history vs closed form: max diff %.3e" % diff)
print()

# --- 2. the time part enters at 1/c^2
# same moving history throughout; the baseline is its own c -> infinity
# limit, so the difference isolates the time-derivative term
moving = DensityHistory(grid, capacity=5)
for j in range(5):
    t = 0.01 * j
    moving.push(t, Field(grid, base * (1.0 + 0.05 * t * t)))
instant = dalembert_uq(moving, PhysParams(hbar=1.0, c=1e8)).values


def correction(c):
    pc = PhysParams(hbar=1.0, c=c)
    return np.abs(dalembert_uq(moving, pc).values - instant).max()


c10, c100 = correction(10.0), correction(100.0)
print("moving density, correction to the static answer:")
print("  c = 10    %.6e" % c10)
print("  c = 100   %.6e" % c100)
print("  ratio %.4f (100 means the correction is pure 1/c^2)" % (c10 / c100))
print()

# --- 3. retarded smearing needs history reaching back L/(2c)
p_slow = PhysParams(kT=2.0, c=5.0)
hist_ret = DensityHistory(grid, capacity=30)
rng = np.random.default_rng(3)
profiles = []
for j in range(30):
    prof = base + 0.02 * rng.standard_normal(grid.n)
    profiles.append(prof)
    hist_ret.push(0.005 * j, Field(grid, prof))

delta = make_kernel("delta", grid)
got = retarded_energy(hist_ret, delta, p_slow).values
local = (p_slow.kT / p_slow.m) * profiles[-1]
print("retarded energy, delta kernel vs local enthalpy of the newest")
print("snapshot: max diff %.3e" % np.abs(got - local).max())

# with a real width and a frozen history the retarded and instantaneous
# routes must meet, since every light cone lands on the same profile
hist_static = DensityHistory(grid, capacity=30)
for j in range(30):
    hist_static.push(0.005 * j, Field(grid, base))
gauss = make_kernel("gaussian", grid, width=0.1)
ret = retarded_energy(hist_static, gauss, p_slow).values
inst = nonlocal_energy(rho, gauss, p_slow).values
print("frozen history, gaussian kernel, retarded vs instantaneous:")
print("max diff %.3e" % np.abs(ret - inst).max())
