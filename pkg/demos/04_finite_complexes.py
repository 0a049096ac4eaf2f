import numpy as np

from crtorsion.finite_complex import (
    FiniteComplex,
    cohomology_dims,
    random_complex,
    torsion_canonical,
    torsion_via_laplacians,
)

# A one-step complex R -> R multiplying by c has torsion 1/|c|.
c = FiniteComplex((1, 1), [np.array([[2.5]])], middle=0)
print(torsion_canonical(c), torsion_via_laplacians(c, "derham"), torsion_via_laplacians(c, ("contact", 0)))

# ### Random acyclic complexes
#
# Three numbers per row. The first is the singular-value product. The second
# uses second-order Laplacians with weights k. The third uses the fourth-order
# contact Laplacians with weights w(k).

for seed, dims, n in ((1, (3, 6, 6, 3), 1), (2, (1, 3, 4, 4, 3, 1), 2), (3, (2, 2), 0)):
    c = random_complex(seed, dims, middle=n)
    print(dims, cohomology_dims(c), torsion_canonical(c), torsion_via_laplacians(c, "derham"),
          torsion_via_laplacians(c, ("contact", n)))

# Cohomology can be prescribed; the torsion then lives on the orthogonal complement of the harmonics.
c = random_complex(4, (2, 5, 4, 1), cohomology=(1, 1, 0, 0))
print(cohomology_dims(c), torsion_canonical(c), torsion_via_laplacians(c, "derham"))
