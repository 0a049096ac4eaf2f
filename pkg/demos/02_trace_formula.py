import math

import numpy as np

from crtorsion import check_selberg, check_small_t, dynamical_theta, spectral_heat_trace, trivial_data
from crtorsion.seifert import random_data

# ### Heat trace versus closed orbits
#
# The left column sums Gaussians over the Reeb spectrum. The right column is the
# Euler term plus a sum over closed orbits. For the trivial bundle on a sphere
# base this is Jacobi's theta inversion.

hd = trivial_data(0, 1)
print(f"{'t':>6} {'spectral':>22} {'orbits':>22}")
for t in np.geomspace(0.05, 10, 7):
    lhs, _ = spectral_heat_trace(hd, t)
    theta, _ = dynamical_theta(hd, t)
    rhs = 2 * math.sqrt(math.pi / t) + theta
    print(f"{t:6.3f} {lhs:22.16f} {rhs:22.16f}")

# Same check on a random instance, as a report
hd = random_data(303)
print(check_selberg(hd, [0.05, 0.2, 1.0, 5.0, 10.0], 1e-8).table())

# ### Small t
#
# Subtracting the Euler term leaves a remainder like exp(-l^2/4t), l the shortest
# orbit with nonzero weight. The fit recovers l^2/4 (pi^2/alpha^2 for an exceptional orbit).
hd = trivial_data(0, -1, ((2, 1), (3, 1), (5, 1)))
r = check_small_t(hd)
print(r.table())
print("fitted C =", r.extra["C"], " pi^2/alpha^2 per fiber:", [math.pi**2 / a**2 for a in hd.seifert.alphas])
