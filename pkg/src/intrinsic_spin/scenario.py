"""Scenario files driving the command-line suites."""
from __future__ import annotations

import json
from dataclasses import dataclass, replace
from dataclasses import field as dc_field
from importlib import resources
from pathlib import Path
from typing import Any

import numpy as np

from . import minkowski as mk
from .em_coupling import EMField
from .spin_algebra import SpinValue

DEFAULT_TOLERANCES = {
    "casimir": 1e-9,
    "identity": 1e-9,
    "covariance": 1e-9,
    "closed_form": 1e-10,
    "su2": 1e-10,
    "reconstruction": 1e-9,
    "quantum": 1e-9,
    "classical": 1e-6,
    "step": 1e-4,
    "em": 1e-9,
    "nr_exponent_low": 1.8,
    "nr_exponent_high": 2.2,
    "nr_coefficient_rtol": 0.01,
}


class ScenarioError(ValueError):
    """Malformed scenario; the message names the offending field."""


@dataclass(frozen=True)
class BoostSpec:
    axis: tuple[float, float, float]
    rapidity: float | None = None
    angle: float | None = None

    def matrix(self) -> np.ndarray:
        if self.rapidity is not None:
            return mk.boost_along(self.axis, self.rapidity)
        return mk.rotation(self.axis, self.angle)

    def label(self) -> str:
        ax = ",".join(format(a, "g") for a in self.axis)
        if self.rapidity is not None:
            return f"boost[{ax}]({format(self.rapidity, 'g')})"
        return f"rot[{ax}]({format(self.angle, 'g')})"


@dataclass(frozen=True)
class Scenario:
    spin: SpinValue
    mass: float
    momenta: tuple[tuple[float, float, float], ...]
    boosts: tuple[BoostSpec, ...]
    field: EMField | None = None
    seed: int = 0
    tolerances: dict[str, float] = dc_field(default_factory=lambda: dict(DEFAULT_TOLERANCES))
    state: dict[str, Any] | None = None
    nr_direction: tuple[float, float, float] = (0.6, 0.0, 0.8)
    random_samples: int = 20

    def tol(self, name: str) -> float:
        return self.tolerances[name]

    def with_overrides(self, seed: int | None = None, tolerances: dict[str, float] | None = None) -> "Scenario":
        tols = dict(self.tolerances)
        for name, value in (tolerances or {}).items():
            if name not in tols:
                raise ScenarioError(f"tolerances: unknown name {name!r}")
            tols[name] = float(value)
        return replace(self, seed=self.seed if seed is None else int(seed), tolerances=tols)


def _vector3(value, where: str) -> tuple[float, float, float]:
    try:
        vec = tuple(float(x) for x in value)
    except (TypeError, ValueError):
        raise ScenarioError(f"{where}: expected three numbers, got {value!r}") from None
    if len(vec) != 3 or not all(np.isfinite(vec)):
        raise ScenarioError(f"{where}: expected three finite numbers, got {value!r}")
    return vec


def _number(value, where: str) -> float:
    if isinstance(value, bool):
        raise ScenarioError(f"{where}: expected a number, got {value!r}")
    try:
        x = float(value)
    except (TypeError, ValueError):
        raise ScenarioError(f"{where}: expected a number, got {value!r}") from None
    if not np.isfinite(x):
        raise ScenarioError(f"{where}: must be finite")
    return x


def parse_scenario(data: dict[str, Any]) -> Scenario:
    if not isinstance(data, dict):
        raise ScenarioError("scenario: top level must be a JSON object")
    try:
        spin = SpinValue.of(data.get("spin", "1/2"))
    except (ValueError, TypeError) as exc:
        raise ScenarioError(f"spin: {exc}") from None
    mass = _number(data.get("mass", 1.0), "mass")
    if mass <= 0:
        raise ScenarioError(f"mass: must be positive, got {mass}")
    momenta_raw = data.get("momenta", [[0.0, 0.0, 0.0]])
    if not isinstance(momenta_raw, list) or not momenta_raw:
        raise ScenarioError("momenta: expected a non-empty list of 3-vectors")
    momenta = tuple(_vector3(p, f"momenta[{i}]") for i, p in enumerate(momenta_raw))
    boosts_raw = data.get("boosts", [])
    if not isinstance(boosts_raw, list):
        raise ScenarioError("boosts: expected a list")
    boosts = []
    for i, b in enumerate(boosts_raw):
        where = f"boosts[{i}]"
        if not isinstance(b, dict) or "axis" not in b:
            raise ScenarioError(f"{where}: expected an object with 'axis' and 'rapidity' or 'angle'")
        axis = _vector3(b["axis"], f"{where}.axis")
        if np.linalg.norm(axis) == 0:
            raise ScenarioError(f"{where}.axis: must be non-zero")
        if ("rapidity" in b) == ("angle" in b):
            raise ScenarioError(f"{where}: give exactly one of 'rapidity' or 'angle'")
        if "rapidity" in b:
            boosts.append(BoostSpec(axis, rapidity=_number(b["rapidity"], f"{where}.rapidity")))
        else:
            boosts.append(BoostSpec(axis, angle=_number(b["angle"], f"{where}.angle")))
    fld = None
    if data.get("field") is not None:
        f = data["field"]
        if not isinstance(f, dict):
            raise ScenarioError("field: expected an object with E, B, alpha")
        fld = EMField(_vector3(f.get("E", [0, 0, 0]), "field.E"), _vector3(f.get("B", [0, 0, 0]), "field.B"),
                      _number(f.get("alpha", 1.0), "field.alpha"))
    seed = data.get("seed", 0)
    if isinstance(seed, bool) or not isinstance(seed, int):
        raise ScenarioError(f"seed: expected an integer, got {seed!r}")
    tolerances = dict(DEFAULT_TOLERANCES)
    for name, value in (data.get("tolerances") or {}).items():
        if name not in tolerances:
            raise ScenarioError(f"tolerances: unknown name {name!r}")
        tolerances[name] = _number(value, f"tolerances.{name}")
    state = data.get("state")
    if state is not None and not isinstance(state, dict):
        raise ScenarioError("state: expected an object with 'terms'")
    nr_direction = _vector3(data.get("nr_direction", (0.6, 0.0, 0.8)), "nr_direction")
    random_samples = data.get("random_samples", 20)
    if isinstance(random_samples, bool) or not isinstance(random_samples, int) or random_samples < 0:
        raise ScenarioError("random_samples: expected a non-negative integer")
    return Scenario(spin, mass, momenta, tuple(boosts), fld, seed, tolerances, state, nr_direction, random_samples)


def load_scenario(path: str | Path | None = None) -> Scenario:
    """Read a scenario file, or the bundled default when ``path`` is None."""
    try:
        if path is None:
            text = resources.files("intrinsic_spin").joinpath("data/default_scenario.json").read_text()
        else:
            text = Path(path).read_text()
    except OSError as exc:
        raise ScenarioError(f"scenario: cannot read {path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"scenario: invalid JSON ({exc.msg} at line {exc.lineno})") from None
    return parse_scenario(data)
