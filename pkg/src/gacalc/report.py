"""Residual-check records and report rendering (text table and JSON)."""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .algebra import Multivector


def residual(lhs: Multivector, rhs: Multivector) -> float:
    """Max coefficient deviation, normalized by max(1, |lhs|, |rhs|)."""
    num = float(np.max(np.abs(lhs.coeffs - rhs.coeffs)))
    den = max(1.0, lhs.norm_inf(), rhs.norm_inf())
    return num / den


def scalar_residual(lhs: float, rhs: float) -> float:
    return abs(lhs - rhs) / max(1.0, abs(lhs), abs(rhs))


@dataclass
class CheckResult:
    name: str
    paper_eq: str
    samples: int
    max_residual: float
    tolerance: float

    def __post_init__(self):
        self.samples = int(self.samples)
        self.max_residual = float(self.max_residual)
        self.tolerance = float(self.tolerance)

    @property
    def passed(self) -> bool:
        return self.max_residual < self.tolerance

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "paper_eq": self.paper_eq,
            "samples": self.samples,
            "max_residual": self.max_residual,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }


@dataclass
class Report:
    fixture: str
    seed: int
    checks: list[CheckResult]

    def __post_init__(self):
        self.checks = sorted(self.checks, key=lambda c: c.name)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "fixture": self.fixture,
            "seed": self.seed,
            "checks": [c.to_dict() for c in self.checks],
            "pass": self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_text(self) -> str:
        name_w = max([len(c.name) for c in self.checks] + [5])
        eq_w = max([len(c.paper_eq) for c in self.checks] + [3])
        lines = [
            f"fixture: {self.fixture}   seed: {self.seed}",
            f"{'check':<{name_w}}  {'eq':<{eq_w}}  {'samples':>7}  {'max residual':>13}  {'tolerance':>10}  status",
        ]
        for c in self.checks:
            status = "PASS" if c.passed else "FAIL"
            lines.append(
                f"{c.name:<{name_w}}  {c.paper_eq:<{eq_w}}  {c.samples:>7}  "
                f"{c.max_residual:>13.3e}  {c.tolerance:>10.1e}  {status}"
            )
        lines.append(f"overall: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines) + "\n"
