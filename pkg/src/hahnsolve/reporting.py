"""Uniform result objects for sample-based axiom and assumption checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class CheckReport:
    """Outcome of running one named check over a batch of samples.

    ``violations`` carries one human-readable record per failing sample;
    ``skipped`` counts samples where the check's hypothesis was vacuous.
    """

    name: str
    checked: int
    violations: tuple[Any, ...] = ()
    skipped: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations

    def summary(self) -> str:
        status = "pass" if self.ok else "FAIL"
        extra = f", {self.skipped} skipped" if self.skipped else ""
        return (
            f"{self.name}: {status} "
            f"({self.checked} checked, {len(self.violations)} violations{extra})"
        )


@dataclass
class CheckSuite:
    """Ordered collection of reports with an overall verdict."""

    reports: list[CheckReport] = field(default_factory=list)

    def add(self, report: CheckReport) -> CheckReport:
        self.reports.append(report)
        return report

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.reports)

    def summary_lines(self) -> list[str]:
        return [r.summary() for r in self.reports]
