"""
Integrating a Killing field
===========================

The flow of an induced field is the one-parameter group exp(t V).  We follow
it with RK4 and compare with the matrix exponential.
"""

import numpy as np

from isoforge import (
    Point,
    cyclic_rotation,
    euclidean,
    flow_compare,
    integrate_flow,
    isometry_basis,
    lift_point,
)

metric = euclidean(3)
J1 = cyclic_rotation(metric, 1)

traj = integrate_flow(J1, Point((0.0, 1.0, 0.0)), np.pi / 2, 1000)
print(traj.end.coords)

###############################################################################
# Halving the step should cut the error of a full turn by about 2^4.
def turn_error(steps):
    end = integrate_flow(J1, Point((0.0, 1.0, 0.0)), 2 * np.pi, steps).end.coords
    return np.linalg.norm(end - [0.0, 1.0, 0.0])

print(turn_error(40) / turn_error(80))

###############################################################################
# Every lifted generator against its exponential.
rng = np.random.default_rng(0)
p0 = lift_point(rng.standard_normal(3))
for g in isometry_basis(metric):
    rep = flow_compare(g, p0, t_final=1.0, steps=10_000)
    print(f"{g.label:8s} dev={rep.max_deviation:.2e} tol={rep.tolerance:.2e}")
