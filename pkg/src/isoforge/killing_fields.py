"""Affine vector fields and the Killing basis of flat space.

Every Killing field of a flat metric is affine in the coordinates,
``xi^mu(x) = a^mu + omega^mu_nu x^nu``, so a field is stored as the pair
``(a, omega)``. Fields carry an optional ``name`` that matches the generator
label scheme used across the package (``trans:i``, ``rot:i,j``, ``strans:mu``,
``lrot:i,j``, ``boost:i``).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Any, Optional, Sequence

import numpy as np
from numpy.typing import ArrayLike

from .metric_space import FlatMetric, Point, PointLike, _coords, _frozen

__all__ = [
    "AffineVectorField",
    "evaluate_field",
    "killing_residual",
    "is_killing",
    "enumerate_killing_basis",
    "cyclic_rotation",
    "field_bracket",
    "linear_combination",
    "expand_in_basis",
    "classify",
]

KINDS = ("translation", "rotation", "boost", "mixed")


def classify(a: np.ndarray, omega: np.ndarray, lorentzian: bool) -> Optional[str]:
    """Kind of an affine field, or ``None`` for the zero field."""
    has_a = bool(np.any(a))
    has_w = bool(np.any(omega))
    if not has_a and not has_w:
        return None
    if not has_w:
        return "translation"
    if has_a:
        return "mixed"
    if not lorentzian:
        return "rotation"
    mixes_time = bool(np.any(omega[0, :]) or np.any(omega[:, 0]))
    spatial = bool(np.any(omega[1:, 1:]))
    if mixes_time and not spatial:
        return "boost"
    if spatial and not mixes_time:
        return "rotation"
    return "mixed"


@dataclass(frozen=True, eq=False)
class AffineVectorField:
    """Vector field ``a + omega @ x`` on a ``d``-dimensional flat space.

    ``label`` is the coarse kind (translation, rotation, boost, mixed);
    ``name`` is the generator label when the field is a basis element.
    """

    d: int
    a: np.ndarray
    omega: np.ndarray
    label: Optional[str] = None
    name: Optional[str] = None

    def __post_init__(self):
        a = _frozen(self.a)
        w = _frozen(self.omega)
        if a.shape != (self.d,) or w.shape != (self.d, self.d):
            raise ValueError(
                f"field of dimension {self.d} needs a: ({self.d},) and "
                f"omega: ({self.d}, {self.d}); got {a.shape}, {w.shape}")
        if self.label is not None and self.label not in KINDS:
            raise ValueError(f"unknown field label {self.label!r}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "omega", w)

    @classmethod
    def zero(cls, d: int) -> "AffineVectorField":
        return cls(d, np.zeros(d), np.zeros((d, d)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AffineVectorField):
            return NotImplemented
        return (self.d == other.d
                and np.array_equal(self.a, other.a)
                and np.array_equal(self.omega, other.omega)
                and self.label == other.label
                and self.name == other.name)

    def same_field(self, other: "AffineVectorField") -> bool:
        """Equality of the coefficients only, ignoring labels."""
        return (self.d == other.d and np.array_equal(self.a, other.a)
                and np.array_equal(self.omega, other.omega))

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        tag = self.name or self.label or "field"
        return f"AffineVectorField<{tag}>(a={self.a.tolist()}, omega={self.omega.tolist()})"

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"d": self.d, "a": self.a.tolist(),
                               "omega": self.omega.tolist(), "label": self.label}
        if self.name is not None:
            out["name"] = self.name
        return out

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "AffineVectorField":
        return cls(int(data["d"]), np.asarray(data["a"], dtype=float),
                   np.asarray(data["omega"], dtype=float),
                   data.get("label"), data.get("name"))


def _check_dim(f: AffineVectorField, metric: FlatMetric) -> None:
    if f.d != metric.d:
        raise ValueError(f"field dimension {f.d} does not match metric dimension {metric.d}")


def evaluate_field(f: AffineVectorField, x: PointLike) -> np.ndarray:
    """Components ``a + omega @ x`` at an unlifted point."""
    c = _coords(x)
    if c.shape != (f.d,):
        raise ValueError(f"point of shape {c.shape} for a field of dimension {f.d}")
    return f.a + f.omega @ c


def killing_residual(f: AffineVectorField, metric: FlatMetric) -> np.ndarray:
    """Symmetrized lowered linear part ``(eta omega) + (eta omega)^T``.

    This is the flat-space Killing operator ``d_mu xi_nu + d_nu xi_mu``;
    the constant part never contributes.
    """
    _check_dim(f, metric)
    lowered = metric.diagonal[:, None] * f.omega
    return lowered + lowered.T


def is_killing(f: AffineVectorField, metric: FlatMetric, tol: float = 0.0) -> bool:
    """Whether ``f`` solves the Killing equation.

    The default is exact comparison: residual entries are sums of stored
    coefficients. Pass ``tol=1e-12`` for fields built by floating arithmetic.
    """
    return bool(np.max(np.abs(killing_residual(f, metric)), initial=0.0) <= tol)


def _translation(metric: FlatMetric, mu: int) -> AffineVectorField:
    d = metric.d
    a = np.zeros(d)
    if metric.is_lorentzian:
        a[mu] = 1.0
        name = f"strans:{mu}"
    else:
        a[mu - 1] = 1.0
        name = f"trans:{mu}"
    return AffineVectorField(d, a, np.zeros((d, d)), "translation", name)


def _rotation(metric: FlatMetric, i: int, j: int) -> AffineVectorField:
    # x^i d_j - x^j d_i
    d, off = metric.d, metric.spatial_offset
    w = np.zeros((d, d))
    p, q = i - 1 + off, j - 1 + off
    w[q, p] = 1.0
    w[p, q] = -1.0
    prefix = "lrot" if metric.is_lorentzian else "rot"
    return AffineVectorField(d, np.zeros(d), w, "rotation", f"{prefix}:{i},{j}")


def _boost(metric: FlatMetric, i: int) -> AffineVectorField:
    # x^i d_0 + x^0 d_i
    d = metric.d
    w = np.zeros((d, d))
    w[0, i] = 1.0
    w[i, 0] = 1.0
    return AffineVectorField(d, np.zeros(d), w, "boost", f"boost:{i}")


def enumerate_killing_basis(metric: FlatMetric) -> list[AffineVectorField]:
    """The ``d(d+1)/2`` Killing fields of a flat metric.

    Order: translations, rotations in lexicographic ``(i, j)`` with ``i < j``,
    then (Lorentzian only) boosts in increasing ``i``.
    """
    n = metric.n_spatial
    if metric.is_lorentzian:
        fields = [_translation(metric, mu) for mu in range(n + 1)]
    else:
        fields = [_translation(metric, i) for i in range(1, n + 1)]
    fields += [_rotation(metric, i, j) for i, j in combinations(range(1, n + 1), 2)]
    if metric.is_lorentzian:
        fields += [_boost(metric, i) for i in range(1, n + 1)]
    return fields


def cyclic_rotation(metric: FlatMetric, i: int) -> AffineVectorField:
    """Single-index rotation ``J_i = eps_ijk x^j d_k`` in three spatial dimensions.

    ``J_1 = J_23``, ``J_2 = J_31 = -J_13``, ``J_3 = J_12``.
    """
    if metric.n_spatial != 3:
        raise ValueError("cyclic rotation aliases exist only for three spatial dimensions")
    pairs = {1: (2, 3, 1.0), 2: (1, 3, -1.0), 3: (1, 2, 1.0)}
    if i not in pairs:
        raise ValueError(f"cyclic index must be 1, 2 or 3, got {i}")
    j, k, sign = pairs[i]
    base = _rotation(metric, j, k)
    name = base.name if sign > 0 else "-" + base.name
    return AffineVectorField(base.d, base.a, sign * base.omega, "rotation", name)


def field_bracket(f: AffineVectorField, g: AffineVectorField) -> AffineVectorField:
    """Lie bracket ``[f, g]^mu = f^nu d_nu g^mu - g^nu d_nu f^mu``.

    For affine fields this closes on affine fields: the constant part is
    ``omega_g a_f - omega_f a_g`` and the linear part
    ``omega_g omega_f - omega_f omega_g``.
    """
    if f.d != g.d:
        raise ValueError("fields must have equal dimension")
    a = g.omega @ f.a - f.omega @ g.a
    w = g.omega @ f.omega - f.omega @ g.omega
    return AffineVectorField(f.d, a, w)


def linear_combination(coeffs: ArrayLike, fields: Sequence[AffineVectorField],
                       metric: Optional[FlatMetric] = None) -> AffineVectorField:
    """``sum_k c_k f_k``; labelled by kind when ``metric`` is given."""
    c = np.asarray(coeffs, dtype=float)
    if c.shape != (len(fields),) or not fields:
        raise ValueError("need one coefficient per field")
    d = fields[0].d
    a = np.zeros(d)
    w = np.zeros((d, d))
    for ck, fk in zip(c, fields):
        a = a + ck * fk.a
        w = w + ck * fk.omega
    label = classify(a, w, metric.is_lorentzian) if metric is not None else None
    return AffineVectorField(d, a, w, label)


def _flatten(f: AffineVectorField) -> np.ndarray:
    return np.concatenate([f.a, f.omega.ravel()])


def expand_in_basis(f: AffineVectorField,
                    basis: Sequence[AffineVectorField]) -> tuple[np.ndarray, float]:
    """Least-squares coefficients of ``f`` in ``basis`` and the residual norm."""
    M = np.stack([_flatten(b) for b in basis], axis=1)
    v = _flatten(f)
    coeffs, *_ = np.linalg.lstsq(M, v, rcond=None)
    return coeffs, float(np.linalg.norm(M @ coeffs - v))
