import math
from fractions import Fraction

from crtorsion import (
    kappa_eval,
    kappa_prime_zero,
    kappa_residue,
    orbifold_invariants,
    ray_singer_torsion,
    trivial_data,
)

# ### Seifert data
#
# The Poincare homology sphere fibres over the (2,3,5) orbifold sphere. With the
# trivial line bundle the holonomy is a single block with x = 0 and every
# exceptional eigenvalue equal to 1.

hd = trivial_data(0, -1, ((2, 1), (3, 1), (5, 1)))
chi_star, chi_orb, degree = orbifold_invariants(hd.seifert)
print("chi(Sigma*) =", chi_star, " chi(Sigma) =", chi_orb, " d(L) =", degree)

# ### The torsion function
#
# kappa is meromorphic with one simple pole at s = 1/2. It vanishes at s = 0.

for s in (0.0, 0.25, 1.0, 2.0, -0.75 + 1.0j):
    print(f"kappa({s}) =", kappa_eval(hd, s).value)
print("residue at 1/2:", kappa_residue(hd), "=", chi_orb, "* dim V")

# ### Ray-Singer torsion, two ways
#
# Once from Lerch's formula for kappa'(0), once as a product of determinants.

lerch = math.exp(-kappa_prime_zero(hd) / 2)
product = ray_singer_torsion(hd)
print("exp(-kappa'(0)/2) =", lerch)
print("determinant form  =", product)
print("(2 pi)^2 / 30     =", (2 * math.pi) ** 2 / 30)

# A twisted example: x = 1/2 on a sphere base gives T = |1 - e^{i pi}|^2 = 4.
from crtorsion import HolonomyBlock, HolonomyData, SeifertData

lens = HolonomyData(SeifertData(0, 2), (HolonomyBlock(Fraction(1, 2), 1),))
print("lens torsion:", ray_singer_torsion(lens))
