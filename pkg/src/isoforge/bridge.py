"""Matrix generators and the induced-vector-field map.

A one-parameter subgroup ``exp(tV)`` acting linearly on ``R^D`` moves a
point ``p`` along ``t -> exp(tV) p``; its velocity at ``t = 0`` is the
vector field ``V p``. For generators on the lifted space ``(x, 1)`` the
last column becomes the constant part of that field. :func:`induce_field`
computes this map and :func:`extract_generator` inverts it.

Index conventions follow the usual physics labelling: Euclidean spatial
indices run ``1..n``; spacetime indices run ``0..n``. Internally arrays are
0-based, so Euclidean ``x^i`` sits at position ``i - 1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations
from typing import Any, Optional

import numpy as np

from .killing_fields import AffineVectorField, classify, is_killing
from .metric_space import FlatMetric, _frozen, euclidean, minkowski

__all__ = [
    "GeneratorMatrix",
    "NotKillingError",
    "FAMILIES",
    "family_of",
    "rotation_generator",
    "translation_generator",
    "boost_generator",
    "lorentz_rotation_generator",
    "poincare_translation_generator",
    "generator_from_label",
    "parse_label",
    "lift_generator",
    "induce_field",
    "extract_generator",
    "isometry_basis",
]

FAMILIES = ("rot", "trans", "boost", "lrot", "strans")
_METRIC_ANTISYMMETRIC = ("rot", "boost", "lrot")
_LABEL_RE = re.compile(r"^-?(rot|trans|boost|lrot|strans):(\d+)(?:,(\d+))?$")


class NotKillingError(ValueError):
    """The field is not Killing, so no isometry generator induces it."""


def parse_label(label: str) -> tuple[str, tuple[int, ...]]:
    """Split ``"rot:2,3"`` into ``("rot", (2, 3))``."""
    m = _LABEL_RE.match(label.strip())
    if m is None:
        raise ValueError(f"unrecognised generator label {label!r}")
    family = m.group(1)
    idx = tuple(int(g) for g in m.groups()[1:] if g is not None)
    two = family in ("rot", "lrot")
    if two != (len(idx) == 2):
        raise ValueError(f"label {label!r} has the wrong number of indices")
    return family, idx


def family_of(label: Optional[str]) -> Optional[str]:
    if label is None:
        return None
    try:
        return parse_label(label)[0]
    except ValueError:
        return None


@dataclass(frozen=True, eq=False)
class GeneratorMatrix:
    """Square Lie-algebra matrix acting on column vectors.

    ``metric`` is always the base metric; a lifted generator is
    ``(metric.d + 1)``-square.
    """

    m: np.ndarray
    lifted: bool
    label: Optional[str]
    metric: FlatMetric

    def __post_init__(self):
        m = _frozen(self.m)
        D = self.metric.d + (1 if self.lifted else 0)
        if m.shape != (D, D):
            raise ValueError(f"generator must be {D}x{D}, got {m.shape}")
        if self.lifted and np.any(m[-1, :]):
            raise ValueError("lifted generator must have a zero bottom row")
        if not self.lifted and family_of(self.label) in _METRIC_ANTISYMMETRIC:
            eta = self.metric.matrix
            if np.any(m.T @ eta + eta @ m):
                raise ValueError(f"{self.label} is not metric-antisymmetric")
        object.__setattr__(self, "m", m)

    @property
    def family(self) -> Optional[str]:
        return family_of(self.label)

    @property
    def size(self) -> int:
        return self.m.shape[0]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GeneratorMatrix):
            return NotImplemented
        return (self.lifted == other.lifted and self.label == other.label
                and self.metric == other.metric and np.array_equal(self.m, other.m))

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"GeneratorMatrix<{self.label}, lifted={self.lifted}>({self.m.tolist()})"

    def to_dict(self) -> dict[str, Any]:
        return {"matrix": self.m.tolist(), "lifted": self.lifted,
                "label": self.label, "metric": self.metric.to_dict()}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "GeneratorMatrix":
        return cls(np.asarray(data["matrix"], dtype=float), bool(data["lifted"]),
                   data.get("label"), FlatMetric.from_dict(data["metric"]))


def _unit(D: int, k: int) -> np.ndarray:
    e = np.zeros(D)
    e[k] = 1.0
    return e


def _check_pair(i: int, j: int, n: int) -> None:
    if not (1 <= i < j <= n):
        raise ValueError(f"need 1 <= i < j <= n, got i={i}, j={j}, n={n}")


def rotation_generator(i: int, j: int, n: int) -> GeneratorMatrix:
    """``(A_ij)_kl = delta_il delta_jk - delta_ik delta_jl`` on ``R^n``.

    Induces ``x^i d_j - x^j d_i``.
    """
    _check_pair(i, j, n)
    ei, ej = _unit(n, i - 1), _unit(n, j - 1)
    return GeneratorMatrix(np.outer(ej, ei) - np.outer(ei, ej), False,
                           f"rot:{i},{j}", euclidean(n))


def translation_generator(i: int, n: int) -> GeneratorMatrix:
    """Lifted ``(n+1)``-square matrix with a single 1 at row ``i``, last column."""
    if not 1 <= i <= n:
        raise ValueError(f"need 1 <= i <= n, got i={i}, n={n}")
    m = np.zeros((n + 1, n + 1))
    m[i - 1, n] = 1.0
    return GeneratorMatrix(m, True, f"trans:{i}", euclidean(n))


def boost_generator(i: int, n: int) -> GeneratorMatrix:
    """``(C_i)^a_b = delta^a_0 eta_ib - delta^a_i eta_0b`` on ``R^{1+n}``.

    Induces ``x^i d_0 + x^0 d_i``.
    """
    if not 1 <= i <= n:
        raise ValueError(f"need 1 <= i <= n, got i={i}, n={n}")
    metric = minkowski(n)
    eta = metric.matrix
    e0, ei = _unit(n + 1, 0), _unit(n + 1, i)
    return GeneratorMatrix(np.outer(e0, eta[i]) - np.outer(ei, eta[0]), False,
                           f"boost:{i}", metric)


def lorentz_rotation_generator(i: int, j: int, n: int) -> GeneratorMatrix:
    """``(B_ij)^a_b = delta^a_j eta_ib - delta^a_i eta_jb`` on ``R^{1+n}``."""
    _check_pair(i, j, n)
    metric = minkowski(n)
    eta = metric.matrix
    ei, ej = _unit(n + 1, i), _unit(n + 1, j)
    return GeneratorMatrix(np.outer(ej, eta[i]) - np.outer(ei, eta[j]), False,
                           f"lrot:{i},{j}", metric)


def poincare_translation_generator(mu: int, n: int) -> GeneratorMatrix:
    """Lifted ``(n+2)``-square matrix with a single 1 at row ``mu``, last column."""
    if not 0 <= mu <= n:
        raise ValueError(f"need 0 <= mu <= n, got mu={mu}, n={n}")
    m = np.zeros((n + 2, n + 2))
    m[mu, n + 1] = 1.0
    return GeneratorMatrix(m, True, f"strans:{mu}", minkowski(n))


def generator_from_label(label: str, n: int) -> GeneratorMatrix:
    """Build a generator from its stable label, ``n`` spatial dimensions."""
    family, idx = parse_label(label)
    build = {
        "rot": rotation_generator,
        "trans": translation_generator,
        "boost": boost_generator,
        "lrot": lorentz_rotation_generator,
        "strans": poincare_translation_generator,
    }[family]
    g = build(*idx, n)
    if label.startswith("-"):
        g = GeneratorMatrix(-g.m, g.lifted, label, g.metric)
    return g


def lift_generator(g: GeneratorMatrix) -> GeneratorMatrix:
    """Zero-pad an unlifted generator to act on ``(x, 1)``."""
    if g.lifted:
        return g
    D = g.size
    m = np.zeros((D + 1, D + 1))
    m[:D, :D] = g.m
    return GeneratorMatrix(m, True, g.label, g.metric)


def induce_field(g: GeneratorMatrix) -> AffineVectorField:
    """Velocity field of ``t -> exp(t g) x`` at ``t = 0``.

    Unlifted: ``a = 0``, ``omega = g``. Lifted: the top-left block is
    ``omega`` and the top of the last column is ``a``.
    """
    if g.lifted:
        if np.any(g.m[-1, :]):
            raise ValueError("lifted generator must have a zero bottom row")
        a, w = g.m[:-1, -1], g.m[:-1, :-1]
    else:
        a, w = np.zeros(g.size), g.m
    kind = classify(a, w, g.metric.is_lorentzian)
    return AffineVectorField(g.metric.d, a, w, kind, g.label)


def extract_generator(f: AffineVectorField, metric: FlatMetric,
                      lift: Optional[bool] = None, tol: float = 0.0) -> GeneratorMatrix:
    """The unique generator whose induced field is ``f``.

    By default the result is unlifted when ``f`` has no constant part and
    lifted otherwise; ``lift=True`` forces the lifted form.

    Raises
    ------
    NotKillingError
        If ``f`` does not satisfy the Killing equation for ``metric``.
    """
    if not is_killing(f, metric, tol=tol):
        raise NotKillingError(f"{f!r} is not a Killing field of {metric}")
    has_a = bool(np.any(f.a))
    if lift is False and has_a:
        raise ValueError("a field with a constant part needs the lifted form")
    if has_a or lift:
        d = f.d
        m = np.zeros((d + 1, d + 1))
        m[:d, :d] = f.omega
        m[:d, d] = f.a
        return GeneratorMatrix(m, True, f.name, metric)
    return GeneratorMatrix(f.omega.copy(), False, f.name, metric)


def isometry_basis(metric: FlatMetric, lifted: bool = True) -> list[GeneratorMatrix]:
    """Constructor-built generators in Killing-basis order.

    With ``lifted=True`` every generator is lifted to a common size, giving
    se(n) or the Poincare algebra; otherwise translations are omitted and
    the result spans so(n) or so(1, n).
    """
    n = metric.n_spatial
    gens: list[GeneratorMatrix] = []
    if metric.is_lorentzian:
        if lifted:
            gens += [poincare_translation_generator(mu, n) for mu in range(n + 1)]
        gens += [lorentz_rotation_generator(i, j, n)
                 for i, j in combinations(range(1, n + 1), 2)]
        gens += [boost_generator(i, n) for i in range(1, n + 1)]
    else:
        if lifted:
            gens += [translation_generator(i, n) for i in range(1, n + 1)]
        gens += [rotation_generator(i, j, n) for i, j in combinations(range(1, n + 1), 2)]
    if lifted:
        gens = [lift_generator(g) for g in gens]
    return gens

