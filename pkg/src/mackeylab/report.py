"""Check reports shared by the model checkers and the CLI."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from . import __version__


@dataclass
class Finding:
    item: str
    expected: Any
    got: Any

    @property
    def ok(self) -> bool:
        return self.expected == self.got

    def to_json(self) -> dict:
        return {"item": self.item, "expected": self.expected, "got": self.got}


@dataclass
class CheckReport:
    check: str
    params: dict = field(default_factory=dict)
    details: list[Finding] = field(default_factory=list)
    elapsed: float = 0.0

    def expect(self, item: str, expected: Any, got: Any) -> bool:
        f = Finding(item, expected, got)
        self.details.append(f)
        return f.ok

    def extend(self, other: CheckReport, prefix: str = "") -> None:
        for f in other.details:
            self.details.append(Finding(prefix + f.item, f.expected, f.got))

    @property
    def passed(self) -> bool:
        return all(f.ok for f in self.details)

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def failures(self) -> list[Finding]:
        return [f for f in self.details if not f.ok]

    def to_json(self, timing: bool = False) -> dict:
        out = {
            "check": self.check,
            "params": dict(sorted(self.params.items())),
            "status": self.status,
            "details": [f.to_json() for f in self.details],
            "version": __version__,
        }
        if timing:
            out["elapsed_s"] = round(self.elapsed, 6)
        return out

    def dumps(self, timing: bool = False) -> str:
        return json.dumps(self.to_json(timing), indent=2, sort_keys=False)

    def to_text(self, verbose: bool = False) -> str:
        params = " ".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        lines = [f"[{self.status.upper()}] {self.check} {params}".rstrip()]
        shown = self.details if verbose else self.failures()
        for f in shown:
            mark = "ok " if f.ok else "BAD"
            lines.append(f"  {mark} {f.item}: expected {f.expected!r}, got {f.got!r}")
        if not verbose:
            lines.append(f"  {len(self.details) - len(shown)}/{len(self.details)} findings ok")
        return "\n".join(lines)
