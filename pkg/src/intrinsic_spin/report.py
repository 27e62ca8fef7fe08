"""Check reports and their deterministic serialization."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np

SCHEMA_VERSION = 1


@dataclass
class CheckReport:
    """Outcome of one invariance or covariance check.

    ``passed`` is derived: it holds exactly when ``max_residual <= tolerance``
    (a NaN residual never passes).
    """

    check: str
    tolerance: float
    max_residual: float
    samples: list[tuple[dict[str, Any], float]] = field(default_factory=list)
    metadata: dict[str, Any] = field(default_factory=dict)
    passed: bool = field(init=False)

    def __post_init__(self):
        self.max_residual = float(self.max_residual)
        self.tolerance = float(self.tolerance)
        self.passed = bool(self.max_residual <= self.tolerance)

    @classmethod
    def from_samples(cls, check: str, samples, tolerance: float, **metadata) -> "CheckReport":
        samples = list(samples)
        worst = max((r for _, r in samples), default=0.0, key=lambda r: (math.isnan(r), r))
        return cls(check, tolerance, worst, samples, dict(metadata))

    def to_dict(self, include_samples: bool = True) -> dict[str, Any]:
        out = {
            "check": self.check,
            "tolerance": self.tolerance,
            "max_residual": self.max_residual,
            "passed": self.passed,
            "metadata": self.metadata,
        }
        if include_samples:
            out["samples"] = [{"inputs": inputs, "residual": r} for inputs, r in self.samples]
        return out


def _plain(obj):
    if isinstance(obj, CheckReport):
        return _plain(obj.to_dict())
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        return float(obj)
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    return obj


def _encode(obj, indent: int, level: int) -> str:
    pad = "\n" + " " * (indent * (level + 1))
    end = "\n" + " " * (indent * level)
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return json.dumps(obj)
    if isinstance(obj, float):
        # non-finite values become null so the output stays strict JSON
        return format(obj, ".17g") if math.isfinite(obj) else "null"
    if isinstance(obj, list):
        if not obj:
            return "[]"
        return "[" + ",".join(pad + _encode(v, indent, level + 1) for v in obj) + end + "]"
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = (pad + json.dumps(k) + ": " + _encode(v, indent, level + 1) for k, v in obj.items())
        return "{" + ",".join(items) + end + "}"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj, indent: int = 2) -> str:
    """Serialize to JSON with every float written to 17 significant digits."""
    return _encode(_plain(obj), indent, 0) + "\n"
