"""
From Killing fields to generator matrices
=========================================

Every Killing field of flat space is affine, xi(x) = a + omega x.  Here we
list the basis for R^3, turn each field into a matrix and back again.
"""

import numpy as np

from isoforge import (
    cyclic_rotation,
    enumerate_killing_basis,
    euclidean,
    extract_generator,
    induce_field,
    killing_residual,
)

metric = euclidean(3)
basis = enumerate_killing_basis(metric)
print(len(basis), "Killing fields on R^3")

# residual of the Killing equation is exactly zero for each one
for f in basis:
    print(f"{f.name:8s} {f.label:12s} residual={np.abs(killing_residual(f, metric)).max()}")

###############################################################################
# Rotations stay 3x3; a field with a constant part needs the 4x4 lift.

J1 = cyclic_rotation(metric, 1)
print(extract_generator(J1, metric).m)

P1 = basis[0]
T1 = extract_generator(P1, metric)
print(T1.lifted)
print(T1.m)

###############################################################################
# The round trip is exact, no tolerance involved.
assert all(induce_field(extract_generator(f, metric)) == f for f in basis)
