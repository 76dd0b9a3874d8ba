"""Check results and their deterministic text rendering."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


def fmt(value: Any) -> str:
    """Fixed rendering: floats at 12 significant digits, containers recursively."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.12g}"
    if isinstance(value, complex):
        return f"{value.real:.12g}{value.imag:+.12g}j"
    if isinstance(value, (tuple, list)):
        return "(" + ",".join(fmt(v) for v in value) + ")"
    if isinstance(value, (set, frozenset)):
        return "{" + ",".join(fmt(v) for v in sorted(value)) + "}"
    return str(value)


@dataclass
class Check:
    name: str
    passed: bool
    measured: dict = field(default_factory=dict)
    tolerance: float | None = None
    detail: str = ""

    @property
    def status(self) -> str:
        return "PASS" if self.passed else "FAIL"

    def line(self) -> str:
        parts = [f"{self.status} {self.name}"]
        parts += [f"{k}={fmt(v)}" for k, v in self.measured.items()]
        if self.tolerance is not None:
            parts.append(f"tol={fmt(self.tolerance)}")
        if self.detail:
            parts.append(f"-- {self.detail}")
        return " ".join(parts)

    def to_json(self) -> dict:
        out = {"name": self.name, "status": self.status}
        out["measured"] = {k: _jsonable(v) for k, v in self.measured.items()}
        if self.tolerance is not None:
            out["tolerance"] = self.tolerance
        if self.detail:
            out["detail"] = self.detail
        return out


def _jsonable(v):
    if isinstance(v, (set, frozenset)):
        return sorted(_jsonable(x) for x in v)
    if isinstance(v, (tuple, list)):
        return [_jsonable(x) for x in v]
    if isinstance(v, complex):
        return [v.real, v.imag]
    return v


@dataclass
class Report:
    title: str
    checks: list[Check] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def add(self, name: str, passed: bool, tolerance: float | None = None, detail: str = "", **measured) -> Check:
        check = Check(name, bool(passed), measured, tolerance, detail)
        self.checks.append(check)
        return check

    def extend(self, other: "Report", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.passed, c.measured, c.tolerance, c.detail))
        for n in other.notes:
            if n not in self.notes:
                self.notes.append(n)

    def render(self) -> str:
        lines = [f"# {self.title}"]
        lines += [f"# note: {n}" for n in self.notes]
        lines += [c.line() for c in self.checks]
        lines.append(f"# {'PASS' if self.passed else 'FAIL'} {len(self.checks) - len(self.failures)}/{len(self.checks)} checks")
        return "\n".join(lines)
