"""Batch verification of every identity the package relies on.

:func:`run_suite` is what ``isoforge verify`` executes. Each check yields a
plain dict with ``name``, ``pass``, ``deviation`` and ``tolerance``.
Exact checks carry tolerance 0 and are never relaxed by an override.
"""

from __future__ import annotations

from typing import Any, Optional

import numpy as np

from .bridge import (
    GeneratorMatrix,
    extract_generator,
    generator_from_label,
    induce_field,
    isometry_basis,
)
from .flow import FLOW_TOL, flow_compare_many
from .group_exp import (
    INVARIANT_TOL,
    METRIC_SAMPLE_TOL,
    expm,
    isometry_defect,
    preserves_metric,
)
from .killing_fields import (
    AffineVectorField,
    enumerate_killing_basis,
    field_bracket,
    killing_residual,
    linear_combination,
)
from .lie_algebra import (
    CLOSURE_TOL,
    jacobi_defect,
    matrix_bracket,
    structure_constants,
    verify_semidirect_split,
)
from .metric_space import FlatMetric, Point, lift_point

__all__ = [
    "run_suite",
    "constructor_generators",
    "random_killing_fields",
    "field_deviation",
    "derivative_errors",
]


def constructor_generators(metric: FlatMetric) -> list[GeneratorMatrix]:
    """Every basis generator in its natural form: linear ones unlifted,
    translations lifted."""
    return [generator_from_label(f.name, metric.n_spatial)
            for f in enumerate_killing_basis(metric)]


def random_killing_fields(metric: FlatMetric, count: int,
                          rng: np.random.Generator) -> list[AffineVectorField]:
    basis = enumerate_killing_basis(metric)
    return [linear_combination(rng.standard_normal(len(basis)), basis, metric)
            for _ in range(count)]


def field_deviation(f: AffineVectorField, g: AffineVectorField) -> float:
    return max(float(np.max(np.abs(f.a - g.a), initial=0.0)),
               float(np.max(np.abs(f.omega - g.omega), initial=0.0)))


def derivative_errors(g: GeneratorMatrix, x: np.ndarray,
                      hs=(1e-3, 1e-4, 1e-5)) -> np.ndarray:
    """``|(exp(h g) x - x) / h - V^I(x)|`` for each step ``h``.

    ``x`` is a base-space point; lifted generators act on its lift.
    """
    f = induce_field(g)
    target = f.a + f.omega @ x
    X = lift_point(x).coords if g.lifted else x
    errs = []
    for h in hs:
        moved = expm(g, h).m @ X
        fd = (moved - X) / h
        errs.append(float(np.linalg.norm(fd[: f.d] - target)))
    return np.array(errs)


def _check(name: str, deviation: float, tolerance: float, exact: bool = False,
           **extra: Any) -> dict[str, Any]:
    ok = deviation <= tolerance if exact else deviation < tolerance
    out = {"name": name, "pass": bool(ok), "deviation": float(deviation),
           "tolerance": float(tolerance)}
    out.update(extra)
    return out


def run_suite(metric: FlatMetric, seed: int = 0, tolerance: Optional[float] = None,
              combos: int = 100, exp_samples: int = 10, flow_starts: int = 3,
              flow_steps: int = 10_000) -> list[dict[str, Any]]:
    """Run all checks for ``metric``.

    ``tolerance`` overrides every numerical tolerance. Deviations of
    numerical checks are normalised by their natural scale before
    comparison (condition number for isometries, ``1 + |p0|`` for flows).
    """
    rng = np.random.default_rng(seed)

    def tol(default: float) -> float:
        return default if tolerance is None else tolerance

    basis = enumerate_killing_basis(metric)
    gens = constructor_generators(metric)
    d = metric.d
    checks = []

    checks.append(_check("basis_count", abs(len(basis) - d * (d + 1) // 2), 0, exact=True,
                         count=len(basis)))
    res = max(float(np.max(np.abs(killing_residual(f, metric)))) for f in basis)
    checks.append(_check("killing_residual", res, 0, exact=True))

    fields = basis + random_killing_fields(metric, combos, rng)
    dev = 0.0
    for f in fields:
        back = induce_field(extract_generator(f, metric))
        dev = max(dev, field_deviation(back, f))
    checks.append(_check("round_trip_induce_extract", dev, 0, exact=True, fields=len(fields)))

    dev = 0.0
    for g in gens:
        back = extract_generator(induce_field(g), metric)
        dev = max(dev, float(np.max(np.abs(back.m - g.m))))
        if back.lifted != g.lifted:
            dev = max(dev, 1.0)
    checks.append(_check("round_trip_extract_induce", dev, 0, exact=True))

    eta = metric.matrix
    dev = max((float(np.max(np.abs(g.m.T @ eta + eta @ g.m))) for g in gens if not g.lifted),
              default=0.0)
    checks.append(_check("metric_antisymmetry", dev, 0, exact=True))

    lifted = isometry_basis(metric, lifted=True)
    dev = 0.0
    for g1 in lifted:
        for g2 in lifted:
            lhs = field_bracket(induce_field(g1), induce_field(g2))
            br = matrix_bracket(g1, g2)
            rhs = induce_field(GeneratorMatrix(-br.m, True, None, metric))
            dev = max(dev, field_deviation(lhs, rhs))
    checks.append(_check("bracket_sign_law", dev, 0, exact=True))

    sc = structure_constants(lifted, tol=np.inf)
    checks.append(_check("closure", sc.max_residual, tol(CLOSURE_TOL)))
    checks.append(_check("antisymmetry_of_constants", sc.antisymmetry_defect(), 0, exact=True))
    checks.append(_check("jacobi", jacobi_defect(sc), tol(CLOSURE_TOL)))

    split = verify_semidirect_split(lifted, strict=False, tol=tol(CLOSURE_TOL))
    for name, c in split.checks.items():
        checks.append(_check(f"semidirect_{name}", c["deviation"], tol(CLOSURE_TOL)))

    inv_dev, sample_dev = 0.0, 0.0
    ts = rng.uniform(-10.0, 10.0, size=exp_samples)
    for g in gens:
        for t in ts:
            e = expm(g, float(t))
            block = e.m[:-1, :-1] if e.lifted else e.m
            gram_dev, det_dev, scale = isometry_defect(block, metric)
            inv_dev = max(inv_dev, max(gram_dev, det_dev) / scale)
            rep = preserves_metric(e, samples=5, seed=int(rng.integers(2**31)))
            sample_dev = max(sample_dev, rep.max_deviation / rep.scale)
    checks.append(_check("isometry_invariant", inv_dev, tol(INVARIANT_TOL)))
    checks.append(_check("metric_preservation", sample_dev, tol(METRIC_SAMPLE_TOL)))

    flow_dev = 0.0
    for g in gens:
        starts = [rng.standard_normal(d) for _ in range(flow_starts)]
        pts = [lift_point(s) if g.lifted else Point(s) for s in starts]
        for rep in flow_compare_many(g, pts, 1.0, flow_steps):
            flow_dev = max(flow_dev, rep.max_deviation / (1.0 + np.linalg.norm(rep.start)))
    checks.append(_check("flow_vs_exponential", flow_dev, tol(FLOW_TOL)))

    worst_slope = 0.0
    for g in gens:
        x = rng.standard_normal(d)
        errs = derivative_errors(g, x)
        if not np.any(g.m @ g.m):
            # g^2 = 0: the quotient is exact, only rounding of size eps|x|/h remains
            if np.max(errs) > 1e-9:
                worst_slope = np.inf
            continue
        slope = np.polyfit(np.log10([1e-3, 1e-4, 1e-5]), np.log10(errs), 1)[0]
        worst_slope = max(worst_slope, abs(slope - 1.0))
    checks.append(_check("derivative_order", worst_slope, 0.1 if tolerance is None else tolerance))
    return checks
