"""Result records for identity checks and property-suite trials."""

from __future__ import annotations

import math
from dataclasses import dataclass, field


def _py(value):
    """Coerce numpy scalars/containers to plain JSON-serializable Python."""
    if isinstance(value, dict):
        return {str(k): _py(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_py(v) for v in value]
    if isinstance(value, bool):
        return value
    if isinstance(value, (int,)):
        return int(value)
    if hasattr(value, "item"):
        return _py(value.item())
    if isinstance(value, float):
        # JSON carries no infinities; they appear only as the string "inf".
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        if math.isnan(value):
            return "nan"
        return value
    return value


def format_float(value: float) -> str:
    """Stable decimal form used in report payloads ('inf' for infinity)."""
    if math.isinf(value):
        return "inf"
    return repr(float(value))


@dataclass
class CheckReport:
    """Residuals of one identity check against their tolerances."""

    name: str
    residuals: dict[str, float]
    tolerances: dict[str, float]
    passed: bool
    info: dict = field(default_factory=dict)

    @classmethod
    def from_residuals(cls, name: str, residuals: dict[str, float],
                       tolerances: dict[str, float],
                       info: dict | None = None) -> "CheckReport":
        res = {k: float(v) for k, v in residuals.items()}
        passed = all(res[k] <= tolerances[k] for k in res)
        return cls(name, res, {k: float(v) for k, v in tolerances.items()},
                   passed, dict(info or {}))

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "residuals": _py(self.residuals),
            "tolerances": _py(self.tolerances),
            "passed": self.passed,
            "info": _py(self.info),
        }


@dataclass
class TrialReport:
    """One property-suite trial: provenance, instance summary, residuals."""

    suite: str
    trial_index: int
    generator: str
    instance: dict
    residuals: dict[str, float]
    tolerances: dict[str, float]
    passed: bool
    info: dict = field(default_factory=dict)

    @classmethod
    def from_check(cls, suite: str, trial_index: int, generator: str,
                   instance: dict, check: CheckReport) -> "TrialReport":
        return cls(suite, trial_index, generator, dict(instance),
                   check.residuals, check.tolerances, check.passed,
                   check.info)

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "trial_index": self.trial_index,
            "generator": self.generator,
            "instance": _py(self.instance),
            "residuals": _py(self.residuals),
            "tolerances": _py(self.tolerances),
            "passed": self.passed,
            "info": _py(self.info),
        }
