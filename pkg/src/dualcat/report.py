"""Uniform pass/fail reports for the validators."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

PASS, FAIL, SKIP = "pass", "fail", "skip"


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str
    witness: str | None = None

    @property
    def ok(self) -> bool:
        return self.status != FAIL

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"name": self.name, "status": self.status}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class Report:
    title: str
    results: list[CheckResult] = field(default_factory=list)

    def add(self, name: str, ok: bool, witness: str | None = None) -> CheckResult:
        res = CheckResult(name, PASS if ok else FAIL, None if ok else witness)
        self.results.append(res)
        return res

    def skip(self, name: str, why: str) -> None:
        self.results.append(CheckResult(name, SKIP, why))

    def extend(self, other: Report, prefix: str = "") -> None:
        for r in other.results:
            self.results.append(CheckResult(prefix + r.name, r.status, r.witness))

    @property
    def valid(self) -> bool:
        return all(r.ok for r in self.results)

    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if not r.ok]

    def __getitem__(self, name: str) -> CheckResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def to_dict(self) -> dict[str, Any]:
        return {
            "checks": [r.to_dict() for r in self.results],
            "title": self.title,
            "valid": self.valid,
        }

    def format(self) -> str:
        lines = [f"{self.title}: {'valid' if self.valid else 'INVALID'}"]
        for r in self.results:
            line = f"  {r.status.upper():4}  {r.name}"
            if r.witness:
                line += f"  ({r.witness})"
            lines.append(line)
        return "\n".join(lines)
