"""Uniform result record for the verification routines."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class CheckReport:
    """Outcome of one named suite of exact identity checks.

    ``checks`` counts individual identities tested; ``failures`` holds one
    human-readable counterexample string per failed identity.
    """

    name: str
    checks: int = 0
    failures: list[str] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, ok: bool, describe: str) -> None:
        self.checks += 1
        if not ok:
            self.failures.append(describe)

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "checks": self.checks,
            "failures": list(self.failures),
            "details": dict(self.details),
        }
