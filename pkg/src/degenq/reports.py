"""Report containers shared by the verification suites and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field

PASS = "pass"
FAIL = "fail"
VACUOUS = "vacuous"
UNSUPPORTED = "unsupported"


@dataclass
class CheckResult:
    suite: str
    name: str
    status: str
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.status != FAIL


@dataclass
class Report:
    checks: list[CheckResult] = field(default_factory=list)

    def add(self, suite: str, name: str, passed: bool, detail: str = "") -> CheckResult:
        r = CheckResult(suite, name, PASS if passed else FAIL, detail)
        self.checks.append(r)
        return r

    def note(self, suite: str, name: str, status: str, detail: str = "") -> CheckResult:
        r = CheckResult(suite, name, status, detail)
        self.checks.append(r)
        return r

    def extend(self, other: Report) -> None:
        self.checks.extend(other.checks)

    @property
    def all_passed(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.ok]

    @property
    def unsupported(self) -> list[CheckResult]:
        return [c for c in self.checks if c.status == UNSUPPORTED]

    def counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for c in self.checks:
            out[c.status] = out.get(c.status, 0) + 1
        return out
