"""
Rigid motions in SE(3)
======================

Exponentiate a lifted screw generator, split the result into rotation and
translation, and check the composition law of the semidirect product.
"""

import numpy as np

from isoforge import (
    GeneratorMatrix,
    compose,
    euclidean,
    expm,
    isometry_basis,
    preserves_metric,
    se_compose_parts,
    se_decompose,
)

metric = euclidean(3)
gens = {g.label: g for g in isometry_basis(metric)}

# a screw: turn about x^3 while sliding along it
screw = GeneratorMatrix(gens["rot:1,2"].m + 0.5 * gens["trans:3"].m, True, None, metric)
E = expm(screw, np.pi / 2)
R, t = se_decompose(E)
print(np.round(R.m, 12))
print(t)

print(preserves_metric(E, samples=200, seed=1))

###############################################################################
# (R1, t1)(R2, t2) = (R1 R2, R1 t2 + t1)
E2 = expm(GeneratorMatrix(gens["rot:2,3"].m - gens["trans:1"].m, True, None, metric), 0.7)
R2, t2 = se_decompose(E2)
lhs = compose(E, E2).m
rhs = se_compose_parts(compose(R, R2), R.m @ t2 + t).m
print(np.abs(lhs - rhs).max())
