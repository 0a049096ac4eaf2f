import math

import numpy as np

from crtorsion import (
    check_zeta_identity,
    fried_z_zero,
    kappa_M_rho,
    kappa_prime_zero,
    ray_singer_torsion,
    regularized_z_at_zero,
    trivial_data,
    z_rho_closed,
    z_rho_series,
)
from crtorsion.seifert import random_data

# ### Orbit sum against the closed form
#
# For Re s < 0 the orbit series converges. Its tail is summed per residue class
# with an explicit error bound.

hd = trivial_data(0, -1, ((2, 1), (3, 1), (5, 1)))
for s in (-1.5, -0.7, -1 + 0.3j, -3.2 - 2j):
    series, bound = z_rho_series(hd, s)
    print(f"s={s}: series {series:.15f}  closed {z_rho_closed(hd, s).value:.15f}  bound {bound:.1e}")
print(check_zeta_identity(hd).table())

# ### Acyclic case: Fried's value at 0
acyclic = random_data(17, acyclic=True)
print("|exp Z_F(0)| =", abs(np.exp(fried_z_zero(acyclic))), " T_RS =", ray_singer_torsion(acyclic))

# ### The limit at s = 0
#
# Gamma(s) cos(pi s/2) = 1/s - gamma + O(s). The finite part of Z_rho at 0 is
# therefore kappa'(0)/2 + gamma kappa(M, rho). It equals -ln T_RS only when
# kappa(M, rho) = 0.
for name, h in (("poincare", hd), ("acyclic", acyclic), ("random 110", random_data(110))):
    limit = regularized_z_at_zero(h)
    km = kappa_M_rho(h)
    print(f"{name:>10}: kappa_M={km:3d} limit={limit:.10f} -ln T={-math.log(ray_singer_torsion(h)):.10f} "
          f"kappa'(0)/2 + gamma kappa_M={kappa_prime_zero(h) / 2 + np.euler_gamma * km:.10f}")
