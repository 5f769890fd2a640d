"""Check results with text/JSON rendering and the exit-code contract."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

PASS = "PASS"
FAIL = "FAIL"
INCONCLUSIVE = "INCONCLUSIVE"

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INCONCLUSIVE = 2
EXIT_USAGE = 3


@dataclass
class Check:
    name: str
    status: str
    details: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> dict:
        return {"name": self.name, "status": self.status, "details": list(self.details)}


def status_of(ok: bool, conclusive: bool = True) -> str:
    if ok:
        return PASS
    return FAIL if conclusive else INCONCLUSIVE


@dataclass
class Report:
    title: str
    checks: list = field(default_factory=list)
    body: list = field(default_factory=list)

    def add(self, name: str, status: str, details=None) -> Check:
        chk = Check(name, status, list(details or []))
        self.checks.append(chk)
        return chk

    def extend(self, other: "Report", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.status, c.details))

    def get(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    @property
    def status(self) -> str:
        states = {c.status for c in self.checks}
        if FAIL in states:
            return FAIL
        if INCONCLUSIVE in states:
            return INCONCLUSIVE
        return PASS

    @property
    def ok(self) -> bool:
        return self.status == PASS

    def exit_code(self) -> int:
        return {PASS: EXIT_OK, FAIL: EXIT_FAIL, INCONCLUSIVE: EXIT_INCONCLUSIVE}[self.status]

    def to_text(self) -> str:
        lines = [self.title] if self.title else []
        lines += list(self.body)
        for c in self.checks:
            for d in c.details:
                lines.append(f"  [{c.name}] {d}")
        lines += [f"CHECK {c.name} {c.status}" for c in self.checks]
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        doc = {"title": self.title, "body": list(self.body), "status": self.status,
               "checks": [c.to_dict() for c in self.checks]}
        return json.dumps(doc, indent=2) + "\n"

    def render(self, fmt: str = "text") -> str:
        return self.to_json() if fmt == "json" else self.to_text()
