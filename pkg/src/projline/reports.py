"""Structured pass/fail reports with deterministic JSON round-tripping.

Every checker in this package returns one of these types instead of a
bare bool so that callers always get counts and witnesses.  Reports
serialize to plain dicts; ``from_dict(to_dict(r)) == r`` holds exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

PASS = "pass"
FAIL = "fail"
VACUOUS = "vacuous"


@dataclass
class CheckReport:
    """Outcome of a single named check.

    ``checked`` counts examined instances, ``failures`` counts all
    violations found, ``witnesses`` keeps a deterministic capped sample
    of human-readable violation descriptions.
    """

    name: str
    status: str
    checked: int
    failures: int
    witnesses: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.status != FAIL

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "status": self.status,
            "checked": self.checked,
            "failures": self.failures,
            "witnesses": list(self.witnesses),
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "CheckReport":
        return cls(
            name=d["name"],
            status=d["status"],
            checked=int(d["checked"]),
            failures=int(d["failures"]),
            witnesses=[str(w) for w in d["witnesses"]],
        )

    def render(self) -> str:
        head = f"{self.name}: {self.status.upper()} (checked={self.checked}"
        if self.failures:
            head += f", failures={self.failures}"
        head += ")"
        lines = [head]
        for w in self.witnesses:
            lines.append(f"  witness: {w}")
        return "\n".join(lines)


def make_check(name: str, checked: int, failures: int, witnesses: list[str]) -> CheckReport:
    if checked == 0:
        status = VACUOUS
    elif failures:
        status = FAIL
    else:
        status = PASS
    return CheckReport(name, status, checked, failures, witnesses)


@dataclass
class ReportGroup:
    """An ordered collection of checks run against one subject."""

    name: str
    checks: list[CheckReport] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str) -> CheckReport:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "ReportGroup":
        return cls(
            name=d["name"],
            checks=[CheckReport.from_dict(c) for c in d["checks"]],
        )

    def render(self) -> str:
        lines = [c.render() for c in self.checks]
        lines.append(f"{self.name}: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)


@dataclass
class TableRowReport:
    """Aggregate result for one row of the rapport identity table.

    Witness records use the fixed shape
    ``{"row", "frame", "expected", "got", "pass"}``.
    """

    row: str
    checked: int
    failures: int
    witnesses: list[dict[str, Any]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def to_dict(self) -> dict[str, Any]:
        return {
            "row": self.row,
            "checked": self.checked,
            "failures": self.failures,
            "witnesses": [dict(w) for w in self.witnesses],
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "TableRowReport":
        return cls(
            row=d["row"],
            checked=int(d["checked"]),
            failures=int(d["failures"]),
            witnesses=[dict(w) for w in d["witnesses"]],
        )


@dataclass
class TableReport:
    """Results of sweeping the identity table over a whole field."""

    field_name: str
    rows: list[TableRowReport] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)

    def row(self, name: str) -> TableRowReport:
        for r in self.rows:
            if r.row == name:
                return r
        raise KeyError(name)

    def to_dict(self) -> dict[str, Any]:
        return {
            "field": self.field_name,
            "passed": self.passed,
            "rows": [r.to_dict() for r in self.rows],
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "TableReport":
        return cls(
            field_name=d["field"],
            rows=[TableRowReport.from_dict(r) for r in d["rows"]],
        )

    def render(self) -> str:
        lines = []
        for r in self.rows:
            state = "PASS" if r.passed else "FAIL"
            lines.append(f"{r.row}: {state} (checked={r.checked}, failures={r.failures})")
            for w in r.witnesses:
                lines.append(f"  witness: {w}")
        lines.append(f"table over {self.field_name}: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)
