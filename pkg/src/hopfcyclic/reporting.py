"""Uniform pass/fail reporting for axiom and identity suites.

Every verifier in the package returns a CheckReport: an ordered list of named
checks, each pass/fail with an optional human-readable witness (the basis
element or identity instance that failed).  Reports render to text lines and
to JSON-compatible dicts; a report is truthy iff every check passed.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class CheckResult:
    name: str
    passed: bool
    witness: str | None = None

    def line(self) -> str:
        mark = "ok" if self.passed else "FAIL"
        suffix = f"  [{self.witness}]" if self.witness else ""
        return f"{mark:4s} {self.name}{suffix}"

    def to_json(self) -> dict:
        out = {"name": self.name, "pass": self.passed}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class CheckReport:
    title: str
    checks: list = field(default_factory=list)

    def add(self, name: str, passed: bool, witness: str | None = None) -> bool:
        self.checks.append(CheckResult(name, bool(passed), witness if not passed else None))
        return bool(passed)

    def merge(self, other: "CheckReport", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(
                CheckResult(prefix + c.name if prefix else c.name, c.passed, c.witness)
            )

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def __bool__(self) -> bool:
        return self.ok

    @property
    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]

    def lines(self) -> list:
        return [f"== {self.title} ==" ] + [c.line() for c in self.checks]

    def to_json(self) -> dict:
        return {
            "title": self.title,
            "pass": self.ok,
            "checks": [c.to_json() for c in self.checks],
        }

    def require(self, context: str = "") -> "CheckReport":
        """Raise ValueError with the first failure if the report is not clean."""
        if not self.ok:
            first = self.failures[0]
            where = f"{context}: " if context else ""
            wit = f" ({first.witness})" if first.witness else ""
            raise ValueError(f"{where}{self.title}: check '{first.name}' failed{wit}")
        return self
