"""Validation findings: rule violations reported as data, not exceptions."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Finding:
    """One violated rule, naming the offending element."""

    rule: str
    message: str

    def __str__(self) -> str:
        return f"{self.rule}: {self.message}"


@dataclass
class ValidationReport:
    findings: list[Finding] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.findings

    def add(self, rule: str, message: str) -> None:
        self.findings.append(Finding(rule, message))

    def raise_if_failed(self, what: str = "value") -> None:
        """Raise ModelError when any finding was recorded."""
        if self.findings:
            from .errors import ModelError

            details = "; ".join(str(f) for f in self.findings)
            raise ModelError(f"invalid {what}: {details}")

    def __str__(self) -> str:
        if not self.findings:
            return "ok"
        return "\n".join(str(f) for f in self.findings)
