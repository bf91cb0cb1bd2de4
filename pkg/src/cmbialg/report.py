"""Diagnostic reports returned by the checking operations."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Failure:
    check: str
    where: tuple
    detail: str = ""

    def __str__(self) -> str:
        loc = ",".join(str(w) for w in self.where)
        return f"{self.check}[{loc}]" + (f": {self.detail}" if self.detail else "")


@dataclass
class Report:
    """Outcome of a family of identity checks.

    ``checked`` counts instances that were evaluated, ``skipped`` those that
    could not be (for instance a product leaving the truncation range).
    """

    name: str
    failures: list[Failure] = field(default_factory=list)
    checked: int = 0
    skipped: int = 0

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, check: str, where: tuple, detail: str = "") -> None:
        self.failures.append(Failure(check, tuple(where), detail))

    def record(self, holds: bool, check: str, where: tuple, detail: str = "") -> bool:
        self.checked += 1
        if not holds:
            self.fail(check, where, detail)
        return holds

    def merge(self, other: Report) -> Report:
        self.failures.extend(other.failures)
        self.checked += other.checked
        self.skipped += other.skipped
        return self

    def summary(self) -> str:
        state = "ok" if self.ok else f"{len(self.failures)} failures"
        return f"{self.name}: {state} ({self.checked} checked, {self.skipped} skipped)"
