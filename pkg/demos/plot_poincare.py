"""
Boosts and the Poincare algebra
===============================

Build the ten generators of the Poincare algebra in 1+3 dimensions, compute
their structure constants and check the semidirect split.
"""

import numpy as np

from isoforge import (
    boost_generator,
    expm,
    isometry_basis,
    minkowski,
    structure_constants,
    verify_semidirect_split,
)
from isoforge.lie_algebra import jacobi_defect

metric = minkowski(3)
basis = isometry_basis(metric)
print([g.label for g in basis])

sc = structure_constants(basis)
print("closure residual", sc.max_residual)
print("jacobi defect", jacobi_defect(sc))
print(verify_semidirect_split(basis).passed)

###############################################################################
# A boost by rapidity phi mixes t and x^1 with cosh and sinh.
phi = 1.2
L = expm(boost_generator(1, 3), phi).m
print(np.round(L, 6))
print(np.cosh(phi), np.sinh(phi))

# the interval of an event is unchanged
x = np.array([2.0, 0.3, -1.0, 0.5])
eta = metric.matrix
print(x @ eta @ x, (L @ x) @ eta @ (L @ x))

###############################################################################
# For large rapidity the entries grow like e^phi / 2, so L^T eta L = eta only
# holds to about cosh(phi)^2 times machine epsilon.
for phi in (1.0, 5.0, 10.0):
    L = expm(boost_generator(1, 3), phi).m
    print(phi, np.abs(L.T @ eta @ L - eta).max())
