"""Deterministic JSON output: floats with 17 significant digits, sorted keys.

Non-finite floats are written as the strings "inf", "-inf" and "nan" so the
output stays valid JSON.
"""
import json
import math
from numbers import Integral, Real

import numpy as np

__all__ = ["to_jsonable", "dumps", "write_json"]


def _float(v: float) -> str:
    if math.isnan(v):
        return '"nan"'
    if math.isinf(v):
        return '"inf"' if v > 0 else '"-inf"'
    s = format(v, ".17g")
    if s.lstrip("-").isdigit():
        s += ".0"
    return s


def to_jsonable(obj):
    """Convert results objects (with ``to_dict``), numpy values and complex numbers."""
    if hasattr(obj, "to_dict"):
        return to_jsonable(obj.to_dict())
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, np.ndarray):
        return [to_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, Integral):
        return int(obj)
    if isinstance(obj, Real):
        return float(obj)
    return obj


def _emit(v, indent, level, out):
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if v is None or isinstance(v, bool) or isinstance(v, str) or isinstance(v, int):
        out.append(json.dumps(v))
    elif isinstance(v, float):
        out.append(_float(v))
    elif isinstance(v, dict):
        if not v:
            out.append("{}")
            return
        out.append("{\n")
        for i, k in enumerate(sorted(v)):
            out.append(pad + json.dumps(k) + ": ")
            _emit(v[k], indent, level + 1, out)
            out.append(",\n" if i < len(v) - 1 else "\n")
        out.append(end + "}")
    elif isinstance(v, list):
        if not v:
            out.append("[]")
            return
        if all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in v):
            out.append("[" + ", ".join(_float(x) if isinstance(x, float) else str(x)
                                        for x in v) + "]")
            return
        out.append("[\n")
        for i, x in enumerate(v):
            out.append(pad)
            _emit(x, indent, level + 1, out)
            out.append(",\n" if i < len(v) - 1 else "\n")
        out.append(end + "]")
    else:
        raise TypeError(f"cannot serialise {type(v).__name__}")


def dumps(obj, indent: int = 2) -> str:
    out = []
    _emit(to_jsonable(obj), indent, 0, out)
    return "".join(out) + "\n"


def write_json(obj, path) -> None:
    with open(path, "w") as fh:
        fh.write(dumps(obj))
