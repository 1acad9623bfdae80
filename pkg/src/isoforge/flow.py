"""RK4 integration of Killing flows, compared against the exponential action.

The flow of an induced field solves ``dx/dt = a + omega x``. Integrating it
numerically is independent of the matrix exponential, so agreement between
the two is a check on both.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import IO, Any, Iterator, Optional, Sequence

import numpy as np

from .bridge import GeneratorMatrix, induce_field
from .group_exp import expm
from .jsonio import dumps
from .killing_fields import AffineVectorField
from .metric_space import LIFT_TOL, Point

__all__ = [
    "Trajectory",
    "FlowReport",
    "FlowDivergenceError",
    "integrate_flow",
    "integrate_batch",
    "flow_compare",
    "flow_compare_many",
    "flow_tolerance",
    "FLOW_TOL",
    "trajectory_lines",
    "write_trajectory",
]

FLOW_TOL = 1e-7


class FlowDivergenceError(ArithmeticError):
    """Non-finite state, or the lift coordinate drifted away from 1."""


@dataclass(frozen=True, eq=False)
class Trajectory:
    t: np.ndarray
    x: np.ndarray
    lifted: bool

    def __len__(self) -> int:
        return len(self.t)

    @property
    def end(self) -> Point:
        return Point(self.x[-1], lifted=self.lifted)

    def points(self) -> list[Point]:
        return [Point(row, lifted=self.lifted) for row in self.x]


@dataclass(frozen=True)
class FlowReport:
    label: Optional[str]
    start: tuple
    t_final: float
    steps: int
    max_deviation: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.max_deviation < self.tolerance

    def to_dict(self) -> dict[str, Any]:
        return {"label": self.label, "start": list(self.start), "t_final": self.t_final,
                "steps": self.steps, "max_deviation": self.max_deviation,
                "tolerance": self.tolerance, "pass": self.passed}


def _rk4(f: AffineVectorField, X0: np.ndarray, t_final: float, steps: int,
         lifted: bool) -> np.ndarray:
    # X0: (batch, D); returns (steps + 1, batch, D)
    if steps < 1:
        raise ValueError("steps must be at least 1")
    d = f.d
    a, wT = f.a, f.omega.T
    h = t_final / steps

    def rhs(X):
        out = np.zeros_like(X)
        out[:, :d] = a + X[:, :d] @ wT
        return out

    out = np.empty((steps + 1,) + X0.shape)
    X = X0.astype(np.float64, copy=True)
    out[0] = X
    with np.errstate(over="ignore", invalid="ignore"):
        for k in range(1, steps + 1):
            k1 = rhs(X)
            k2 = rhs(X + 0.5 * h * k1)
            k3 = rhs(X + 0.5 * h * k2)
            k4 = rhs(X + h * k3)
            X = X + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            if not np.all(np.isfinite(X)):
                raise FlowDivergenceError(f"non-finite state at step {k}")
            if lifted and np.max(np.abs(X[:, -1] - 1.0)) > LIFT_TOL:
                raise FlowDivergenceError(f"lift coordinate drifted at step {k}")
            out[k] = X
    return out


def _check_start(f: AffineVectorField, shape: tuple, lifted: bool) -> None:
    expected = f.d + (1 if lifted else 0)
    if shape[-1] != expected:
        raise ValueError(f"start point has {shape[-1]} coords, expected {expected}")


def integrate_flow(f: AffineVectorField, p0: Point, t_final: float,
                   steps: int) -> Trajectory:
    """Fixed-step classical RK4 on ``dx/dt = f(x)``.

    A lifted ``p0`` is integrated in the lifted space with the extra
    coordinate held at 1; a drift beyond ``1e-12`` raises.
    """
    _check_start(f, p0.coords.shape, p0.lifted)
    xs = _rk4(f, p0.coords[None, :], t_final, steps, p0.lifted)[:, 0, :]
    return Trajectory(np.linspace(0.0, t_final, steps + 1), xs, p0.lifted)


def integrate_batch(f: AffineVectorField, starts: np.ndarray, t_final: float,
                    steps: int, lifted: bool = False) -> np.ndarray:
    """Vectorised :func:`integrate_flow` over ``starts`` of shape ``(k, D)``.

    Returns an array of shape ``(steps + 1, k, D)``.
    """
    starts = np.atleast_2d(np.asarray(starts, dtype=float))
    _check_start(f, starts.shape, lifted)
    return _rk4(f, starts, t_final, steps, lifted)


def flow_tolerance(p0: np.ndarray) -> float:
    return FLOW_TOL * (1.0 + float(np.linalg.norm(p0)))


def _sample_indices(steps: int, samples: int) -> np.ndarray:
    return np.unique(np.linspace(0, steps, min(samples, steps) + 1).round().astype(int))


def flow_compare_many(g: GeneratorMatrix, starts: Sequence[Point], t_final: float = 1.0,
                      steps: int = 10_000, samples: int = 100) -> list[FlowReport]:
    """One :class:`FlowReport` per start point, sharing a single batched run.

    The deviation is the largest distance between the RK4 state and
    ``expm(g, t_k) p0`` over ``samples`` evenly spaced steps, endpoints
    included.
    """
    if not starts:
        return []
    for p in starts:
        if p.lifted != g.lifted:
            raise ValueError("start points must be lifted exactly when the generator is")
    f = induce_field(g)
    P0 = np.stack([p.coords for p in starts])
    traj = integrate_batch(f, P0, t_final, steps, lifted=g.lifted)
    dev = np.zeros(len(starts))
    for k in _sample_indices(steps, samples):
        tk = t_final * k / steps
        exact = P0 @ expm(g, tk).m.T
        dev = np.maximum(dev, np.linalg.norm(traj[k] - exact, axis=1))
    return [FlowReport(g.label, tuple(p.coords.tolist()), float(t_final), steps,
                       float(dk), flow_tolerance(p.coords))
            for p, dk in zip(starts, dev)]


def flow_compare(g: GeneratorMatrix, p0: Point, t_final: float = 1.0,
                 steps: int = 10_000, samples: int = 100) -> FlowReport:
    """Compare the RK4 flow of ``induce_field(g)`` with ``expm(g, t) p0``.

    Passes when the deviation stays below ``1e-7 (1 + |p0|)``.
    """
    return flow_compare_many(g, [p0], t_final, steps, samples)[0]


def trajectory_lines(traj: Trajectory, stride: int = 1) -> Iterator[str]:
    """JSON lines ``{"t": ..., "x": [...]}``, every ``stride``-th step plus the end."""
    if stride < 1:
        raise ValueError("stride must be at least 1")
    idx = list(range(0, len(traj), stride))
    if idx[-1] != len(traj) - 1:
        idx.append(len(traj) - 1)
    for k in idx:
        yield dumps({"t": float(traj.t[k]), "x": traj.x[k].tolist()}, indent=0)


def write_trajectory(traj: Trajectory, fh: IO[str], stride: int = 1) -> None:
    for line in trajectory_lines(traj, stride):
        fh.write(line + "\n")
