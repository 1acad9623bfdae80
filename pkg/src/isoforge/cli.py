"""Command-line interface.

Exit codes: 0 success, 1 a verification check failed, 2 usage or
configuration error. Every document carries ``{"version": 1}``.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from typing import Any, Optional, Sequence

import numpy as np

from .bridge import extract_generator, generator_from_label, induce_field, isometry_basis, parse_label
from .flow import integrate_flow, trajectory_lines
from .group_exp import apply, expm
from .jsonio import dumps
from .killing_fields import enumerate_killing_basis
from .lie_algebra import jacobi_defect, structure_constants, verify_semidirect_split
from .metric_space import FlatMetric, Point, euclidean, lift_point, minkowski
from .suite import run_suite

VERSION = 1
SEED_ENV = "ISOFORGE_SEED"
_LORENTZ_FAMILIES = ("boost", "lrot", "strans")


class ConfigError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    dim: int
    signature: str
    seed: int
    tolerance: Optional[float]
    out: Optional[str]

    @property
    def metric(self) -> FlatMetric:
        return minkowski(self.dim) if self.signature == "lorentz" else euclidean(self.dim)


def _parse_floats(text: str) -> np.ndarray:
    try:
        return np.array([float(v) for v in text.split(",")])
    except ValueError:
        raise ConfigError(f"expected comma-separated numbers, got {text!r}") from None


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--dim", type=int, default=3,
                        help="number of spatial dimensions n (>= 2)")
    common.add_argument("--signature", choices=("euclidean", "lorentz"), default=None)
    common.add_argument("--seed", type=int, default=None,
                        help=f"random seed (falls back to ${SEED_ENV}, then 0)")
    common.add_argument("--tolerance", type=float, default=None,
                        help="override the floating-point tolerances (exact checks stay exact)")
    common.add_argument("--out", default=None, help="write output here instead of stdout")

    p = argparse.ArgumentParser(prog="isoforge",
                                description="Killing fields, generators and isometry groups "
                                            "of flat spaces.")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("generators", parents=[common],
                   help="labelled generator basis with Killing fields")
    sub.add_parser("verify", parents=[common], help="run the full property suite")
    sub.add_parser("structure-constants", parents=[common],
                   help="structure constants and semidirect split")
    for name, helptext in (("exp", "exponentiate a generator"),
                           ("flow", "RK4 trajectory of a generator's induced field")):
        sp = sub.add_parser(name, parents=[common], help=helptext)
        sp.add_argument("--generator", required=True,
                        help="rot:i,j | trans:i | boost:i | lrot:i,j | strans:mu")
        sp.add_argument("--t", type=float, default=1.0)
        if name == "exp":
            sp.add_argument("--apply", default=None, help="base-space point, e.g. 0,1,0")
        else:
            sp.add_argument("--start", required=True, help="base-space start point")
            sp.add_argument("--steps", type=int, default=1000)
            sp.add_argument("--stride", type=int, default=1)
    return p


def _config(ns: argparse.Namespace) -> RunConfig:
    if ns.dim < 2:
        raise ConfigError(f"--dim must be at least 2, got {ns.dim}")
    signature = ns.signature
    if getattr(ns, "generator", None) is not None:
        try:
            family, _ = parse_label(ns.generator)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        implied = "lorentz" if family in _LORENTZ_FAMILIES else "euclidean"
        if signature is not None and signature != implied:
            raise ConfigError(f"generator {ns.generator} needs --signature {implied}")
        signature = implied
    seed = ns.seed
    if seed is None:
        env = os.environ.get(SEED_ENV)
        try:
            seed = int(env) if env is not None else 0
        except ValueError:
            raise ConfigError(f"${SEED_ENV} must be an integer, got {env!r}") from None
    return RunConfig(ns.command, ns.dim, signature or "euclidean", seed, ns.tolerance, ns.out)


def _header(cfg: RunConfig) -> dict[str, Any]:
    return {"version": VERSION, "command": cfg.command, "dim": cfg.dim,
            "signature": cfg.signature, "seed": cfg.seed}


def cmd_generators(cfg: RunConfig) -> tuple[dict, int]:
    metric = cfg.metric
    entries = []
    for f in enumerate_killing_basis(metric):
        g = extract_generator(f, metric)
        built = generator_from_label(f.name, cfg.dim)
        entries.append({
            "label": f.name,
            "generator": g.to_dict(),
            "field": f.to_dict(),
            "round_trip_field": induce_field(g) == f,
            "round_trip_generator": extract_generator(induce_field(built), metric) == built,
            "matches_constructor": g == built,
        })
    doc = _header(cfg)
    doc["count"] = len(entries)
    doc["generators"] = entries
    ok = all(e["round_trip_field"] and e["round_trip_generator"] and e["matches_constructor"]
             for e in entries)
    return doc, 0 if ok else 1


def cmd_verify(cfg: RunConfig) -> tuple[dict, int]:
    checks = run_suite(cfg.metric, seed=cfg.seed, tolerance=cfg.tolerance)
    doc = _header(cfg)
    doc["pass"] = all(c["pass"] for c in checks)
    doc["checks"] = checks
    return doc, 0 if doc["pass"] else 1


def cmd_structure_constants(cfg: RunConfig) -> tuple[dict, int]:
    basis = isometry_basis(cfg.metric, lifted=True)
    sc = structure_constants(basis)
    split = verify_semidirect_split(basis, strict=False)
    doc = _header(cfg)
    doc["structure_constants"] = sc.to_dict()
    doc["closure_residual"] = sc.max_residual
    doc["jacobi_defect"] = jacobi_defect(sc)
    doc["semidirect_split"] = split.to_dict()
    return doc, 0 if split.passed else 1


def _generator(cfg: RunConfig, label: str):
    try:
        return generator_from_label(label, cfg.dim)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def cmd_exp(cfg: RunConfig, label: str, t: float, point: Optional[str]) -> tuple[dict, int]:
    g = _generator(cfg, label)
    try:
        e = expm(g, t)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    doc = _header(cfg)
    doc.update({"generator": label, "t": t, "element": e.to_dict()})
    if point is not None:
        x = _parse_floats(point)
        if x.size != cfg.metric.d:
            raise ConfigError(f"--apply needs {cfg.metric.d} coordinates, got {x.size}")
        doc["point"] = x.tolist()
        doc["image"] = apply(e, x).coords.tolist()
    return doc, 0


def cmd_flow(cfg: RunConfig, label: str, t: float, start: str, steps: int,
             stride: int) -> tuple[list[str], int]:
    g = _generator(cfg, label)
    x = _parse_floats(start)
    if x.size != cfg.metric.d:
        raise ConfigError(f"--start needs {cfg.metric.d} coordinates, got {x.size}")
    if steps < 1 or stride < 1:
        raise ConfigError("--steps and --stride must be positive")
    p0 = lift_point(x) if g.lifted else Point(x)
    traj = integrate_flow(induce_field(g), p0, t, steps)
    head = _header(cfg)
    head.update({"generator": label, "t_final": t, "steps": steps, "stride": stride})
    return [dumps(head, indent=0)] + list(trajectory_lines(traj, stride)), 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _parser()
    ns = parser.parse_args(argv)
    try:
        cfg = _config(ns)
        if cfg.command == "generators":
            doc, code = cmd_generators(cfg)
        elif cfg.command == "verify":
            doc, code = cmd_verify(cfg)
        elif cfg.command == "structure-constants":
            doc, code = cmd_structure_constants(cfg)
        elif cfg.command == "exp":
            doc, code = cmd_exp(cfg, ns.generator, ns.t, ns.apply)
        else:
            doc, code = cmd_flow(cfg, ns.generator, ns.t, ns.start, ns.steps, ns.stride)
    except ConfigError as exc:
        parser.exit(2, f"isoforge: error: {exc}\n")
    text = "\n".join(doc) if isinstance(doc, list) else dumps(doc)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
