"""Deterministic JSON emission with 17 significant digits for floats."""

from __future__ import annotations

import json
import math
from typing import Any

import numpy as np

__all__ = ["dumps", "format_float"]


def format_float(x: float) -> str:
    if not math.isfinite(x):
        # JSON has no inf/nan; callers only hit this on diverged runs.
        return "null"
    return format(x, ".17g")


def _emit(obj: Any, indent: int, level: int, out: list) -> None:
    pad = "\n" + " " * (indent * (level + 1)) if indent else ""
    end = "\n" + " " * (indent * level) if indent else ""
    sep = "," if indent else ", "
    if isinstance(obj, (bool, np.bool_)):
        out.append("true" if obj else "false")
    elif obj is None:
        out.append("null")
    elif isinstance(obj, (int, np.integer)):
        out.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        out.append(format_float(float(obj)))
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, np.ndarray):
        _emit(obj.tolist(), indent, level, out)
    elif isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{")
        for k, (key, value) in enumerate(obj.items()):
            if k:
                out.append(sep)
            out.append(pad + json.dumps(str(key)) + ": ")
            _emit(value, indent, level + 1, out)
        out.append(end + "}")
    elif isinstance(obj, (list, tuple)):
        if not obj:
            out.append("[]")
            return
        # numeric rows stay on one line
        flat = all(not isinstance(v, (dict, list, tuple, np.ndarray)) for v in obj)
        if flat:
            out.append("[" + ", ".join(_scalar(v) for v in obj) + "]")
            return
        out.append("[")
        for k, value in enumerate(obj):
            if k:
                out.append(sep)
            out.append(pad)
            _emit(value, indent, level + 1, out)
        out.append(end + "]")
    else:
        raise TypeError(f"cannot serialise {type(obj).__name__}")


def _scalar(v: Any) -> str:
    out: list = []
    _emit(v, 0, 0, out)
    return "".join(out)


def dumps(obj: Any, indent: int = 2) -> str:
    """Serialise ``obj``; floats are written with ``%.17g`` so they round-trip."""
    out: list = []
    _emit(obj, indent, 0, out)
    return "".join(out)
