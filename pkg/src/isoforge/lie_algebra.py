"""Commutators, structure constants and the semidirect split."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from .bridge import GeneratorMatrix, lift_generator

__all__ = [
    "StructureConstants",
    "ClosureError",
    "SemidirectSplitError",
    "SplitReport",
    "matrix_bracket",
    "expand",
    "structure_constants",
    "jacobi_defect",
    "verify_semidirect_split",
    "CLOSURE_TOL",
]

CLOSURE_TOL = 1e-10

_TRANSLATIONS = ("trans", "strans")
_LINEAR = ("rot", "lrot", "boost")


class ClosureError(ValueError):
    """A bracket of basis elements leaves the span of the basis."""


class SemidirectSplitError(ValueError):
    pass


def _compatible(g1: GeneratorMatrix, g2: GeneratorMatrix) -> None:
    if g1.size != g2.size or g1.lifted != g2.lifted:
        raise ValueError(
            f"cannot bracket {g1.label} ({g1.size}, lifted={g1.lifted}) with "
            f"{g2.label} ({g2.size}, lifted={g2.lifted})")


def matrix_bracket(g1: GeneratorMatrix, g2: GeneratorMatrix) -> GeneratorMatrix:
    """Commutator ``g1 g2 - g2 g1``."""
    _compatible(g1, g2)
    return GeneratorMatrix(g1.m @ g2.m - g2.m @ g1.m, g1.lifted,
                           f"[{g1.label},{g2.label}]", g1.metric)


def _flat_basis(basis: Sequence[GeneratorMatrix]) -> np.ndarray:
    return np.stack([g.m.ravel() for g in basis])


def expand(target: np.ndarray, basis: Sequence[GeneratorMatrix]) -> tuple[np.ndarray, float]:
    """Least-squares coefficients of ``target`` in ``basis`` and the residual norm.

    Solved through the Gram system; for integer bases with disjoint
    supports this is exact.
    """
    M = _flat_basis(basis)
    v = np.asarray(target, dtype=float).ravel()
    gram = M @ M.T
    coeffs = np.linalg.solve(gram, M @ v)
    return coeffs, float(np.linalg.norm(coeffs @ M - v))


@dataclass(frozen=True, eq=False)
class StructureConstants:
    """``c[i, j, k]`` is the coefficient of ``e_k`` in ``[e_i, e_j]``."""

    basis_labels: list
    c: np.ndarray
    max_residual: float = 0.0

    @property
    def dim(self) -> int:
        return len(self.basis_labels)

    def antisymmetry_defect(self) -> float:
        return float(np.max(np.abs(self.c + self.c.transpose(1, 0, 2)), initial=0.0))

    def to_dict(self) -> dict[str, Any]:
        return {"labels": list(self.basis_labels), "c": self.c.tolist()}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "StructureConstants":
        return cls(list(data["labels"]), np.asarray(data["c"], dtype=float))


def structure_constants(basis: Sequence[GeneratorMatrix],
                        tol: float = CLOSURE_TOL) -> StructureConstants:
    """Expand every pairwise bracket of ``basis`` back in ``basis``.

    Raises
    ------
    ClosureError
        If some bracket has expansion residual ``>= tol``.
    ValueError
        If the basis is empty, mixed in size, or linearly dependent.
    """
    if not basis:
        raise ValueError("empty basis")
    for g in basis[1:]:
        _compatible(basis[0], g)
    N = len(basis)
    if np.linalg.matrix_rank(_flat_basis(basis)) < N:
        raise ValueError("basis is linearly dependent")
    c = np.zeros((N, N, N))
    worst = 0.0
    for i in range(N):
        for j in range(i + 1, N):
            br = matrix_bracket(basis[i], basis[j])
            coeffs, res = expand(br.m, basis)
            if res >= tol:
                raise ClosureError(
                    f"[{basis[i].label}, {basis[j].label}] leaves the span "
                    f"(residual {res:.3e})")
            worst = max(worst, res)
            c[i, j] = coeffs
            c[j, i] = -coeffs
    return StructureConstants([g.label for g in basis], c, worst)


def jacobi_defect(sc: StructureConstants) -> float:
    """Largest entry of ``c^m_ij c^l_mk + c^m_jk c^l_mi + c^m_ki c^l_mj``."""
    c = sc.c
    t = np.einsum("ijm,mkl->ijkl", c, c)
    total = t + t.transpose(1, 2, 0, 3) + t.transpose(2, 0, 1, 3)
    return float(np.max(np.abs(total), initial=0.0))


@dataclass
class SplitReport:
    """Outcome of the three semidirect-split checks.

    ``checks`` maps a check name to ``{"pass": bool, "deviation": float}``.
    """

    checks: dict = field(default_factory=dict)
    offending: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(v["pass"] for v in self.checks.values())

    def to_dict(self) -> dict[str, Any]:
        return {"pass": self.passed, "checks": self.checks, "offending": self.offending}


def verify_semidirect_split(basis: Sequence[GeneratorMatrix], strict: bool = True,
                            tol: float = CLOSURE_TOL) -> SplitReport:
    """Check that translations form an abelian ideal beside a linear subalgebra.

    The three checks are
    ``abelian_translation_ideal`` (``[T, T] = 0`` and ``[L, T]`` in span T),
    ``linear_subalgebra`` (``[L, L]`` in span L) and ``closure`` (every
    bracket in the span of the whole basis). ``L`` is the set of rotation and
    boost generators. Unlifted members are lifted when translations are
    present.

    With ``strict`` a failing report raises :class:`SemidirectSplitError`.
    """
    basis = list(basis)
    if any(g.lifted for g in basis):
        basis = [lift_generator(g) for g in basis]
    trans = [g for g in basis if g.family in _TRANSLATIONS]
    linear = [g for g in basis if g.family in _LINEAR]
    if len(trans) + len(linear) != len(basis):
        unknown = [g.label for g in basis if g.family not in _TRANSLATIONS + _LINEAR]
        raise ValueError(f"basis members without a family label: {unknown}")

    report = SplitReport()

    def residual(m: np.ndarray, span: list) -> float:
        if not span:
            return float(np.linalg.norm(m))
        return expand(m, span)[1]

    def worst_of(name: str, pairs, span) -> float:
        worst = 0.0
        for g1, g2 in pairs:
            res = residual(matrix_bracket(g1, g2).m, span)
            if res >= tol:
                report.offending.append({"check": name, "pair": [g1.label, g2.label],
                                         "residual": res})
            worst = max(worst, res)
        return worst

    def record(name: str, worst: float) -> None:
        report.checks[name] = {"pass": worst < tol, "deviation": worst}

    ideal = "abelian_translation_ideal"
    tt = [(a, b) for k, a in enumerate(trans) for b in trans[k + 1:]]
    lt = [(g, t) for g in linear for t in trans]
    record(ideal, max(worst_of(ideal, tt, []), worst_of(ideal, lt, trans)))
    ll = [(a, b) for k, a in enumerate(linear) for b in linear[k + 1:]]
    record("linear_subalgebra", worst_of("linear_subalgebra", ll, linear))
    every = [(a, b) for k, a in enumerate(basis) for b in basis[k + 1:]]
    record("closure", worst_of("closure", every, basis))

    if strict and not report.passed:
        raise SemidirectSplitError(f"semidirect split fails: {report.offending}")
    return report
