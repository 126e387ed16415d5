"""Structured verdicts with per-axiom diagnostics."""

from __future__ import annotations

from dataclasses import dataclass, field

from .linalg import Matrix


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class Report:
    subject: str
    checks: list[Check] = field(default_factory=list)
    certificates: dict[str, Matrix] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __bool__(self) -> bool:
        return self.passed

    def add(self, name: str, passed: bool, detail: str = "") -> bool:
        self.checks.append(Check(name, bool(passed), detail))
        return bool(passed)

    def equal(self, name: str, lhs: Matrix, rhs: Matrix) -> bool:
        """Record whether two matrices agree, naming the first bad entry."""
        if lhs.shape != rhs.shape:
            return self.add(name, False, f"shape {lhs.shape} vs {rhs.shape}")
        diff = lhs.first_difference(rhs)
        if diff is None:
            return self.add(name, True)
        i, j, a, b = diff
        f = lhs.field
        return self.add(name, False, f"first difference at ({i},{j}): {f.format(a)} != {f.format(b)}")

    def extend(self, other: Report, prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.passed, c.detail))

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def get(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_text(self) -> str:
        lines = [f"{self.subject}: {'PASS' if self.passed else 'FAIL'}"]
        for c in self.checks:
            mark = "ok  " if c.passed else "FAIL"
            lines.append(f"  [{mark}] {c.name}" + (f" -- {c.detail}" if c.detail else ""))
        return "\n".join(lines)
