"""Check records and reports shared by the verification entry points."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

SCHEMA_VERSION = 1
PASS, FAIL, UNKNOWN = "pass", "fail", "unknown"


@dataclass
class Check:
    id: str
    anchor: str
    status: str
    witness: Any = None

    @property
    def ok(self) -> bool:
        return self.status == PASS

    def to_json(self) -> dict:
        out = {"id": self.id, "anchor": self.anchor, "status": self.status}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class Report:
    suite: str
    checks: list[Check] = field(default_factory=list)
    seed: int | None = None
    timing: dict[str, float] = field(default_factory=dict)
    data: dict[str, Any] = field(default_factory=dict)

    def add(self, id: str, anchor: str, ok: bool | None, witness: Any = None) -> Check:
        status = UNKNOWN if ok is None else (PASS if ok else FAIL)
        check = Check(id, anchor, status, witness if status != PASS else None)
        self.checks.append(check)
        return check

    def extend(self, other: "Report", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.id, c.anchor, c.status, c.witness))
        self.timing.update({prefix + k: v for k, v in other.timing.items()})

    @property
    def counts(self) -> dict[str, int]:
        out = {PASS: 0, FAIL: 0, UNKNOWN: 0}
        for c in self.checks:
            out[c.status] += 1
        return out

    @property
    def passed(self) -> bool:
        """True iff nothing failed and nothing is left unknown."""
        return all(c.status == PASS for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.status != PASS]

    def to_json(self, timing: bool = True) -> dict:
        out = {
            "schema": SCHEMA_VERSION,
            "suite": self.suite,
            "seed": self.seed,
            "summary": self.counts,
            "passed": self.passed,
            "checks": [c.to_json() for c in self.checks],
        }
        if self.data:
            out["data"] = self.data
        if timing:
            out["timing"] = {k: round(v, 4) for k, v in self.timing.items()}
        return out

    def dumps(self, timing: bool = True) -> str:
        return json.dumps(self.to_json(timing), indent=2, sort_keys=False)

    def summary_line(self) -> str:
        c = self.counts
        return f"{self.suite}: {c[PASS]} pass, {c[FAIL]} fail, {c[UNKNOWN]} unknown"
