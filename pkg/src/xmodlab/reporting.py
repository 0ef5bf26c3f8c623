"""Validation reports with per-rule witnesses.

Every validator scans its witness space in lexicographic index order and
records, for each violated rule, only the first witness found.  Reports are
immutable and JSON-serializable, so identical inputs always produce
byte-identical reports.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Violation:
    rule: str
    witness: tuple[int, ...]
    message: str = ""

    def to_json(self) -> dict:
        return {"rule": self.rule, "witness": list(self.witness), "message": self.message}


@dataclass(frozen=True)
class ValidationReport:
    subject: str
    violations: tuple[Violation, ...] = field(default_factory=tuple)

    @property
    def valid(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "subject": self.subject,
            "valid": self.valid,
            "violations": [v.to_json() for v in self.violations],
        }

    def summary(self) -> str:
        if self.valid:
            return f"{self.subject}: valid"
        lines = [f"{self.subject}: INVALID ({len(self.violations)} rule(s) violated)"]
        for v in self.violations:
            msg = f" {v.message}" if v.message else ""
            lines.append(f"  {v.rule} at {v.witness}{msg}")
        return "\n".join(lines)


class ReportBuilder:
    """Collects first-witness violations, optionally under a rule prefix."""

    def __init__(self, subject: str):
        self.subject = subject
        self._violations: list[Violation] = []
        self._seen: set[str] = set()

    def add(self, rule: str, witness: tuple[int, ...], message: str = "") -> None:
        if rule not in self._seen:
            self._seen.add(rule)
            self._violations.append(Violation(rule, tuple(witness), message))

    def merge(self, other: ValidationReport, prefix: str) -> None:
        for v in other.violations:
            rule = f"{prefix}:{v.rule}" if prefix else v.rule
            self.add(rule, v.witness, v.message)

    def build(self) -> ValidationReport:
        return ValidationReport(self.subject, tuple(self._violations))
