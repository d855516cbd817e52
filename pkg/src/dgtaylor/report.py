"""Check results shared by every verifier in the package."""

from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any


@dataclass
class Violation:
    location: str
    lhs: str = ""
    rhs: str = ""

    def to_json(self) -> dict:
        return {"location": self.location, "lhs": self.lhs, "rhs": self.rhs}


@dataclass
class CheckResult:
    name: str
    violations: list[Violation] = field(default_factory=list)
    timing: float = 0.0
    # free-form findings that are not violations (e.g. the d_sigma monomials)
    details: dict[str, Any] = field(default_factory=dict)
    checked: int = 0

    @property
    def passed(self) -> bool:
        return not self.violations

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def add(self, location: str, lhs: Any = "", rhs: Any = "") -> None:
        self.violations.append(Violation(location, str(lhs), str(rhs)))

    def to_json(self, timing: bool = False) -> dict:
        out = {
            "name": self.name,
            "status": self.status,
            "violations": [v.to_json() for v in self.violations],
        }
        if self.details:
            out["details"] = self.details
        if timing:
            out["timing"] = round(self.timing, 6)
        return out

    def summary(self) -> str:
        line = f"[{'PASS' if self.passed else 'FAIL'}] {self.name}"
        if self.checked:
            line += f" ({self.checked} cases)"
        if self.violations:
            line += f": {len(self.violations)} violation(s)"
        return line

    @contextmanager
    def timed(self):
        t0 = time.perf_counter()
        try:
            yield self
        finally:
            self.timing += time.perf_counter() - t0


@dataclass
class Report:
    command: str
    seed: int | None = None
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def extend(self, results) -> None:
        self.checks.extend(results)

    def to_json(self, timing: bool = False) -> dict:
        return {
            "command": self.command,
            "seed": self.seed,
            "checks": [c.to_json(timing) for c in self.checks],
            "summary": {
                "total": len(self.checks),
                "failed": sum(not c.passed for c in self.checks),
            },
        }

    def text(self) -> str:
        lines = [c.summary() for c in self.checks]
        for c in self.checks:
            for v in c.violations[:5]:
                lines.append(f"    {c.name} @ {v.location}: lhs={v.lhs} rhs={v.rhs}")
        failed = sum(not c.passed for c in self.checks)
        lines.append(f"{len(self.checks) - failed}/{len(self.checks)} checks passed")
        return "\n".join(lines)
