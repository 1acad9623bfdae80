"""Group elements: matrix exponential, isometry checks, semidirect structure.

Tolerances scale with the condition number of the linear block. For an
isometry ``B`` of a flat metric ``B^{-1} = eta B^T eta``, so
``cond(B) = |B|_2^2``. A boost with rapidity 10 has entries near ``1e4`` and
``B^T eta B`` cannot be formed to better than about ``1e-8`` in double
precision, so a fixed absolute bound would reject correctly-rounded
matrices. Rotations have condition number 1 and keep the absolute bound.
"""

from __future__ import annotations

import math
from dataclasses import InitVar, dataclass
from typing import Any, Optional, Union

import numpy as np
from numpy.typing import ArrayLike

from .bridge import GeneratorMatrix
from .metric_space import FlatMetric, Point, PointLike, _coords, inner, lift_point, unlift_point

__all__ = [
    "GroupElement",
    "GroupInvariantError",
    "MetricReport",
    "expm",
    "expm_matrix",
    "expm_closed",
    "identity",
    "preserves_metric",
    "compose",
    "invert",
    "apply",
    "se_decompose",
    "se_compose_parts",
    "isometry_defect",
    "EXPM_GUARD",
    "INVARIANT_TOL",
    "METRIC_SAMPLE_TOL",
]

EXPM_GUARD = 1e4
INVARIANT_TOL = 1e-10
BOTTOM_ROW_TOL = 1e-12
METRIC_SAMPLE_TOL = 1e-9


class GroupInvariantError(ValueError):
    """A matrix fails the invariants required of a group element."""


def _linear_block(m: np.ndarray, lifted: bool) -> np.ndarray:
    return m[:-1, :-1] if lifted else m


def isometry_defect(block: np.ndarray, metric: FlatMetric) -> tuple[float, float, float]:
    """``(max|B^T eta B - eta|, ||det B| - 1|, scale)`` for a linear block.

    ``scale`` is ``max(1, |B|_2^2)``, the condition number of an isometry.
    """
    eta = metric.matrix
    gram = block.T @ eta @ block
    dev = float(np.max(np.abs(gram - eta)))
    det_dev = abs(abs(float(np.linalg.det(block))) - 1.0)
    scale = max(1.0, float(np.linalg.norm(block, 2)) ** 2)
    return dev, det_dev, scale


@dataclass(frozen=True, eq=False)
class GroupElement:
    """Invertible matrix together with the flat metric it should preserve.

    Construction validates invertibility, the lifted bottom row and the
    isometry condition. Pass ``check=False`` to wrap an arbitrary matrix,
    e.g. to exercise the failure path of :func:`preserves_metric`.
    """

    m: np.ndarray
    lifted: bool
    metric: FlatMetric
    check: InitVar[bool] = True

    def __post_init__(self, check: bool):
        m = np.array(self.m, dtype=np.float64)
        m.setflags(write=False)
        D = self.metric.d + (1 if self.lifted else 0)
        if m.shape != (D, D):
            raise GroupInvariantError(f"element must be {D}x{D}, got {m.shape}")
        object.__setattr__(self, "m", m)
        if check:
            self.validate()

    def validate(self, tol: float = INVARIANT_TOL) -> None:
        m = self.m
        if not np.all(np.isfinite(m)):
            raise GroupInvariantError("non-finite entries")
        if self.lifted:
            bottom = np.zeros(m.shape[0])
            bottom[-1] = 1.0
            if np.max(np.abs(m[-1] - bottom)) > BOTTOM_ROW_TOL:
                raise GroupInvariantError(f"lifted bottom row is {m[-1].tolist()}")
        dev, det_dev, scale = isometry_defect(_linear_block(m, self.lifted), self.metric)
        if dev > tol * scale:
            raise GroupInvariantError(
                f"isometry defect {dev:.3e} exceeds {tol:.1e} x {scale:.3e}")
        if det_dev > tol * scale:
            raise GroupInvariantError(f"|det| deviates from 1 by {det_dev:.3e}")

    @property
    def size(self) -> int:
        return self.m.shape[0]

    @property
    def det(self) -> float:
        return float(np.linalg.det(self.m))

    def __repr__(self) -> str:
        return f"GroupElement(lifted={self.lifted}, m={self.m.tolist()})"

    def to_dict(self) -> dict[str, Any]:
        return {"matrix": self.m.tolist(), "lifted": self.lifted,
                "metric": self.metric.to_dict(), "det": self.det}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "GroupElement":
        return cls(np.asarray(data["matrix"], dtype=float), bool(data["lifted"]),
                   FlatMetric.from_dict(data["metric"]))


def identity(metric: FlatMetric, lifted: bool = False) -> GroupElement:
    return GroupElement(np.eye(metric.d + (1 if lifted else 0)), lifted, metric)


def expm_matrix(A: ArrayLike) -> np.ndarray:
    """``exp(A)`` by scaling and squaring around a Taylor core.

    ``A`` is scaled by ``2^-k`` until its 1-norm is at most 0.5, the series
    is summed until the next term no longer changes the sum, and the result
    is squared ``k`` times.
    """
    A = np.asarray(A, dtype=np.float64)
    norm = float(np.linalg.norm(A, 1))
    k = 0
    if norm > 0.5:
        k = int(math.ceil(math.log2(norm / 0.5)))
    X = A / (2.0 ** k)
    S = np.eye(A.shape[0])
    term = np.eye(A.shape[0])
    for j in range(1, 40):
        term = term @ X / j
        S = S + term
        if not np.any(term) or np.linalg.norm(term, 1) <= 1e-17 * np.linalg.norm(S, 1):
            break
    for _ in range(k):
        S = S @ S
    return S


def expm(g: GeneratorMatrix, t: float = 1.0) -> GroupElement:
    """``exp(t g)`` as a group element.

    Raises ``ValueError`` when ``|t| |g|_1`` exceeds ``EXPM_GUARD``; boost
    entries grow like ``e^{|t|}`` and would overflow.
    """
    size = abs(t) * float(np.linalg.norm(g.m, 1))
    if not np.isfinite(size) or size > EXPM_GUARD:
        raise ValueError(f"|t| |g| = {size:.3e} exceeds the guard {EXPM_GUARD:.0e}")
    return GroupElement(expm_matrix(t * g.m), g.lifted, g.metric)


def _single_plane(block: np.ndarray) -> Optional[tuple[int, int]]:
    nz = np.argwhere(block != 0)
    if len(nz) != 2:
        return None
    (p, q), (r, s) = nz
    if (p, q) != (s, r) or p == q:
        return None
    return int(p), int(q)


def expm_closed(g: GeneratorMatrix, t: float = 1.0) -> GroupElement:
    """Closed-form exponential for single-plane rotations and boosts and for
    translations.

    Translation generators square to zero, so ``exp(t g) = I + t g``
    exactly. A rotation in the ``(p, q)`` plane gives cos/sin entries; a
    boost in the ``(0, i)`` plane gives cosh/sinh.
    """
    m = g.m
    D = m.shape[0]
    if g.lifted:
        block, column = m[:-1, :-1], m[:-1, -1]
        if not np.any(block):
            return GroupElement(np.eye(D) + t * m, True, g.metric)
        if np.any(column):
            raise ValueError("closed form needs a pure rotation, boost or translation")
    else:
        block = m
    plane = _single_plane(block)
    if plane is None:
        raise ValueError(f"{g.label} is not a single-plane rotation or boost")
    p, q = plane
    out = np.eye(D)
    if block[q, p] == -block[p, q]:
        theta = t * block[q, p]
        c, s = math.cos(theta), math.sin(theta)
        out[p, p] = out[q, q] = c
        out[q, p] = s
        out[p, q] = -s
    elif block[q, p] == block[p, q] and g.metric.is_lorentzian and 0 in (p, q):
        phi = t * block[p, q]
        out[p, p] = out[q, q] = math.cosh(phi)
        out[p, q] = out[q, p] = math.sinh(phi)
    else:
        raise ValueError(f"{g.label} is not a single-plane rotation or boost")
    return GroupElement(out, g.lifted, g.metric)


@dataclass(frozen=True)
class MetricReport:
    max_deviation: float
    scale: float
    tolerance: float
    samples: int
    seed: int
    lifted: bool

    @property
    def passed(self) -> bool:
        return self.max_deviation < self.tolerance * self.scale

    def to_dict(self) -> dict[str, Any]:
        return {"pass": self.passed, "max_deviation": self.max_deviation,
                "scale": self.scale, "tolerance": self.tolerance,
                "samples": self.samples, "seed": self.seed, "lifted": self.lifted}


def apply(e: GroupElement, x: PointLike) -> Point:
    """Image of a point. Lifted elements accept base-space points."""
    if isinstance(x, Point) and x.lifted:
        if not e.lifted:
            raise ValueError("lifted point needs a lifted element")
        return lift_point(unlift_point(e.m @ x.coords))
    c = _coords(x)
    if e.lifted:
        return unlift_point(e.m @ lift_point(c).coords)
    return Point(e.m @ c)


def preserves_metric(e: GroupElement, samples: int = 100, seed: int = 0,
                     tol: float = METRIC_SAMPLE_TOL) -> MetricReport:
    """Sampled check that ``e`` preserves the metric.

    Unlifted elements are tested on ``inner(e x, e y)`` against
    ``inner(x, y)``. Lifted elements act affinely, so they are tested on
    coordinate differences: ``(e x - e y)`` against ``(x - y)`` and likewise
    for a second pair. ``scale`` is the largest absolute term sum met, the
    natural size of rounding error in the inner products.
    """
    rng = np.random.default_rng(seed)
    d = e.metric.d
    eta = e.metric.diagonal
    worst, scale = 0.0, 1.0
    for _ in range(samples):
        if e.lifted:
            pts = rng.standard_normal((4, d))
            img = np.array([apply(e, p).coords for p in pts])
            u, v = pts[0] - pts[1], pts[2] - pts[3]
            eu, ev = img[0] - img[1], img[2] - img[3]
        else:
            u, v = rng.standard_normal((2, d))
            eu, ev = e.m @ u, e.m @ v
        dev = abs(inner(e.metric, eu, ev) - inner(e.metric, u, v))
        worst = max(worst, dev)
        scale = max(scale, float(np.sum(np.abs(eta * eu * ev))))
    return MetricReport(worst, scale, tol, samples, seed, e.lifted)


def _match(e1: GroupElement, e2: GroupElement) -> None:
    if e1.size != e2.size or e1.lifted != e2.lifted or e1.metric != e2.metric:
        raise ValueError("group elements differ in size, lift status or metric")


def compose(e1: GroupElement, e2: GroupElement) -> GroupElement:
    """Product ``e1 e2`` (apply ``e2`` first)."""
    _match(e1, e2)
    return GroupElement(e1.m @ e2.m, e1.lifted, e1.metric)


def invert(e: GroupElement) -> GroupElement:
    return GroupElement(np.linalg.inv(e.m), e.lifted, e.metric)


def se_decompose(e: GroupElement) -> tuple[GroupElement, np.ndarray]:
    """Split a lifted element into its linear part and translation vector."""
    if not e.lifted:
        raise ValueError("se_decompose needs a lifted element")
    return GroupElement(e.m[:-1, :-1], False, e.metric), e.m[:-1, -1].copy()


def se_compose_parts(R: Union[GroupElement, ArrayLike], t: ArrayLike,
                     metric: Optional[FlatMetric] = None) -> GroupElement:
    """Lifted element ``[[R, t], [0, 1]]``.

    These satisfy ``(R1, t1)(R2, t2) = (R1 R2, R1 t2 + t1)``.
    """
    if isinstance(R, GroupElement):
        if R.lifted:
            raise ValueError("linear part must be unlifted")
        metric = R.metric
        block = R.m
    else:
        if metric is None:
            raise ValueError("metric required when R is a plain array")
        block = np.asarray(R, dtype=float)
    t = np.asarray(t, dtype=float)
    d = metric.d
    if block.shape != (d, d) or t.shape != (d,):
        raise ValueError("linear part and translation do not match the metric dimension")
    m = np.eye(d + 1)
    m[:d, :d] = block
    m[:d, d] = t
    return GroupElement(m, True, metric)
