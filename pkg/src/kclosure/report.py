"""Machine-readable verification reports shared by the library and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

ARTIFACT_VERSION = "0.1.0"

__all__ = ["ARTIFACT_VERSION", "Check", "VerificationReport"]


@dataclass
class Check:
    description: str
    expected: Any
    observed: Any
    passed: bool

    @classmethod
    def equal(cls, description: str, expected: Any, observed: Any) -> "Check":
        return cls(description, expected, observed, expected == observed)

    def to_json(self) -> dict:
        return {
            "description": self.description,
            "expected": self.expected,
            "observed": self.observed,
            "pass": self.passed,
        }


@dataclass
class VerificationReport:
    """Outcome of one verification campaign.

    Reports are deterministic given the inputs and artifact version; only
    `wall_time` varies between runs. The campaign passes iff every check
    passes.
    """

    campaign: str
    inputs: dict[str, Any]
    checks: list[Check]
    wall_time: float
    data: dict[str, Any] = field(default_factory=dict)
    artifact_version: str = ARTIFACT_VERSION

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {
            "campaign": self.campaign,
            "artifact_version": self.artifact_version,
            "inputs": self.inputs,
            "data": self.data,
            "checks": [c.to_json() for c in self.checks],
            "pass": self.passed,
            "wall_time": self.wall_time,
        }

    def text_summary(self) -> str:
        lines = [f"campaign: {self.campaign}"]
        for key, value in self.inputs.items():
            lines.append(f"  input {key} = {value}")
        for key, value in self.data.items():
            lines.append(f"  {key} = {value}")
        for c in self.checks:
            mark = "ok  " if c.passed else "FAIL"
            lines.append(f"  [{mark}] {c.description}: expected {c.expected}, observed {c.observed}")
        verdict = "PASS" if self.passed else "FAIL"
        lines.append(f"{verdict} ({len(self.checks)} checks, {self.wall_time:.3f}s)")
        return "\n".join(lines)
