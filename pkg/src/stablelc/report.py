"""Verification report objects shared by the cohomology and verification layers."""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass
class Check:
    name: str
    passed: bool
    degree: int | None = None
    detail: str = ""

    def to_json(self) -> dict:
        out = {"check": self.name, "pass": self.passed}
        if self.degree is not None:
            out["degree"] = self.degree
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class VerifyReport:
    suite: str
    instance: str
    window: tuple
    checks: list = field(default_factory=list)
    wall_time: float = 0.0
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, degree: int | None = None, detail: str = "") -> Check:
        c = Check(name, bool(passed), degree, detail)
        self.checks.append(c)
        return c

    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]

    def to_json(self, with_time: bool = False) -> dict:
        out = {
            "suite": self.suite,
            "instance": self.instance,
            "window": list(self.window),
            "verdict": "pass" if self.passed else "fail",
            "checks": [c.to_json() for c in self.checks],
        }
        if self.extra:
            out["extra"] = self.extra
        if with_time:
            out["wall_time"] = round(self.wall_time, 4)
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def summary(self) -> str:
        bad = self.failures()
        head = f"[{'PASS' if not bad else 'FAIL'}] {self.suite} on {self.instance} window {list(self.window)}"
        lines = [head, f"  {len(self.checks) - len(bad)}/{len(self.checks)} checks passed"]
        for c in bad[:10]:
            where = f" @ degree {c.degree}" if c.degree is not None else ""
            lines.append(f"  failed {c.name}{where}: {c.detail}")
        return "\n".join(lines)
