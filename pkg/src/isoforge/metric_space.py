"""Flat diagonal metrics, points, and the homogeneous lift.

Only the Euclidean signature ``(0, d)`` and the Lorentzian signature
``(1, d - 1)`` are supported. The single negative entry of a Lorentzian
metric always sits at index 0, so spacetime coordinates are ordered
``(x^0, x^1, ..., x^n)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Union

import numpy as np
from numpy.typing import ArrayLike

__all__ = [
    "Signature",
    "FlatMetric",
    "Point",
    "SignatureError",
    "LiftError",
    "make_metric",
    "euclidean",
    "minkowski",
    "inner",
    "lift_point",
    "unlift_point",
    "LIFT_TOL",
]

LIFT_TOL = 1e-12


class SignatureError(ValueError):
    """Raised for signatures outside the Euclidean/Lorentzian scope."""


class LiftError(ValueError):
    """Raised when a point violates the homogeneous-lift invariant."""


def _frozen(a: ArrayLike) -> np.ndarray:
    arr = np.array(a, dtype=np.float64)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class Signature:
    negatives: int
    positives: int

    def __post_init__(self):
        if self.negatives < 0 or self.positives < 1:
            raise SignatureError(
                f"invalid signature ({self.negatives}, {self.positives})")

    @property
    def dim(self) -> int:
        return self.negatives + self.positives

    @property
    def is_lorentzian(self) -> bool:
        return self.negatives == 1


@dataclass(frozen=True)
class FlatMetric:
    """Diagonal flat metric ``diag(-1, ..., -1, +1, ..., +1)``."""

    signature: Signature

    @property
    def d(self) -> int:
        return self.signature.dim

    @property
    def is_lorentzian(self) -> bool:
        return self.signature.is_lorentzian

    @property
    def diagonal(self) -> np.ndarray:
        s = self.signature
        return np.array([-1.0] * s.negatives + [1.0] * s.positives)

    @property
    def matrix(self) -> np.ndarray:
        return np.diag(self.diagonal)

    @property
    def spatial_offset(self) -> int:
        """Array index of spatial coordinate ``x^1``, minus one.

        Euclidean coordinates are labelled ``1..n`` and stored at ``0..n-1``;
        Lorentzian ones are labelled ``0..n`` and stored at ``0..n``. So the
        spatial index ``i`` lives at array position ``i - 1 + offset``.
        """
        return self.signature.negatives

    @property
    def n_spatial(self) -> int:
        return self.signature.positives

    def to_dict(self) -> dict[str, Any]:
        return {"signature": {"neg": self.signature.negatives,
                              "pos": self.signature.positives}}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "FlatMetric":
        sig = data["signature"]
        return make_metric(Signature(int(sig["neg"]), int(sig["pos"])))


@dataclass(frozen=True, eq=False)
class Point:
    """A coordinate point, optionally in the lifted space ``(x, 1)``."""

    coords: np.ndarray = field()
    lifted: bool = False

    def __post_init__(self):
        c = _frozen(self.coords)
        if c.ndim != 1 or c.size == 0:
            raise ValueError("point coordinates must be a non-empty 1-d array")
        if self.lifted and c[-1] != 1.0:
            raise LiftError(f"lifted point must end in 1, got {c[-1]!r}")
        object.__setattr__(self, "coords", c)

    @property
    def dim(self) -> int:
        return self.coords.size

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Point):
            return NotImplemented
        return (self.lifted == other.lifted
                and np.array_equal(self.coords, other.coords))

    def __hash__(self) -> int:
        return hash((self.lifted, self.coords.tobytes()))

    def __repr__(self) -> str:
        return f"Point({self.coords.tolist()}, lifted={self.lifted})"

    def to_dict(self, metric: FlatMetric) -> dict[str, Any]:
        out = metric.to_dict()
        out["coords"] = self.coords.tolist()
        out["lifted"] = self.lifted
        return out

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> tuple["Point", FlatMetric]:
        metric = FlatMetric.from_dict(data)
        point = cls(np.asarray(data["coords"], dtype=float),
                    bool(data.get("lifted", False)))
        expected = metric.d + (1 if point.lifted else 0)
        if point.dim != expected:
            raise ValueError(f"point has {point.dim} coords, metric expects {expected}")
        return point, metric


PointLike = Union[Point, ArrayLike]


def make_metric(signature: Signature) -> FlatMetric:
    """Build the flat metric of the given signature.

    Raises
    ------
    SignatureError
        If more than one negative entry is requested.
    """
    if signature.negatives > 1:
        raise SignatureError(
            "only Euclidean (0, d) and Lorentzian (1, d-1) signatures are supported")
    return FlatMetric(signature)


def euclidean(n: int) -> FlatMetric:
    """``(R^n, delta)``."""
    return make_metric(Signature(0, n))


def minkowski(n: int) -> FlatMetric:
    """``(R^{1+n}, eta)`` with ``n`` spatial dimensions."""
    return make_metric(Signature(1, n))


def _coords(x: PointLike) -> np.ndarray:
    if isinstance(x, Point):
        if x.lifted:
            raise LiftError("expected an unlifted point")
        return x.coords
    return np.asarray(x, dtype=np.float64)


def inner(metric: FlatMetric, x: PointLike, y: PointLike) -> float:
    """Bilinear form ``sum_mu eta_mumu x^mu y^mu``."""
    xc, yc = _coords(x), _coords(y)
    if xc.shape != (metric.d,) or yc.shape != (metric.d,):
        raise ValueError(
            f"dimension mismatch: metric d={metric.d}, got {xc.shape} and {yc.shape}")
    return float(np.dot(metric.diagonal * xc, yc))


def lift_point(x: PointLike) -> Point:
    """Append the homogeneous coordinate 1."""
    if isinstance(x, Point) and x.lifted:
        raise LiftError("point is already lifted")
    c = _coords(x)
    return Point(np.append(c, 1.0), lifted=True)


def unlift_point(x: PointLike) -> Point:
    """Drop the homogeneous coordinate.

    Raw arrays are read as lifted coordinates, e.g. the image of a lifted
    point under a matrix. Their last entry must be within ``LIFT_TOL`` of 1;
    anything else means a non-affine matrix was applied.
    """
    if isinstance(x, Point):
        if not x.lifted:
            raise LiftError("point is not lifted")
        return Point(x.coords[:-1])
    c = np.asarray(x, dtype=np.float64)
    if c.ndim != 1 or c.size < 2:
        raise LiftError("lifted coordinates need at least two entries")
    if abs(c[-1] - 1.0) > LIFT_TOL:
        raise LiftError(f"last lifted coordinate is {c[-1]!r}, not 1")
    return Point(c[:-1])
