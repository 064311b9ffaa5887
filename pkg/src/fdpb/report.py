"""Residual bookkeeping for the numerical audits."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from .matrix import Tolerance, max_abs


@dataclass(frozen=True)
class Check:
    name: str
    residual: float
    threshold: float

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.residual)) and self.residual <= self.threshold

    def line(self) -> str:
        flag = "PASS" if self.passed else "FAIL"
        return f"{flag}  {self.name:<44s} residual={self.residual:.3e}  (tol {self.threshold:.1e})"

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "residual": self.residual,
            "threshold": self.threshold,
            "pass": self.passed,
        }


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[Check, ...] = ()

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    @property
    def first_failure(self) -> Check | None:
        return next(iter(self.failures), None)

    @property
    def max_residual(self) -> float:
        return max((c.residual for c in self.checks), default=0.0)

    def __iter__(self) -> Iterator[Check]:
        return iter(self.checks)

    def __len__(self) -> int:
        return len(self.checks)

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def __add__(self, other: "ValidationReport") -> "ValidationReport":
        return ValidationReport(self.checks + other.checks)

    def lines(self) -> list[str]:
        return [c.line() for c in self.checks]

    def to_dict(self) -> dict:
        return {"pass": self.passed, "checks": [c.to_dict() for c in self.checks]}


class ReportBuilder:
    """Accumulates residuals ``max|lhs - rhs|`` against ``tol.bound(scale)``."""

    def __init__(self, tol: Tolerance):
        self.tol = tol
        self._checks: list[Check] = []

    def residual(self, name: str, value: float, scale: float = 1.0) -> None:
        self._checks.append(Check(name, float(value), self.tol.bound(scale)))

    def equal(self, name: str, lhs, rhs=0.0, scale: float | None = None) -> None:
        lhs = np.asarray(lhs)
        diff = lhs - rhs
        if scale is None:
            scale = max(max_abs(lhs), max_abs(rhs), 1.0)
        self.residual(name, max_abs(diff), scale)

    def extend(self, checks: Iterable[Check]) -> None:
        self._checks.extend(checks)

    def build(self) -> ValidationReport:
        return ValidationReport(tuple(self._checks))
