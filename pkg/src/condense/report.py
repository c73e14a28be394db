from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional


@dataclass
class CheckReport:
    """Outcome of an axiom check: pass/fail, how much was checked, first failure."""

    name: str
    ok: bool = True
    checked: int = 0
    failure: Optional[str] = None
    details: dict = field(default_factory=dict)

    def fail(self, msg: str) -> "CheckReport":
        if self.ok:
            self.ok = False
            self.failure = msg
        return self

    def __bool__(self):
        return self.ok

    def summary(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        s = f"{self.name}: {status} (instances: {self.checked})"
        if self.failure:
            s += f" first failure: {self.failure}"
        return s

    def to_json(self) -> dict:
        return {"name": self.name, "ok": self.ok, "checked": self.checked, "failure": self.failure}
