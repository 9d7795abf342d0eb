"""Check reports emitted by the verification harness."""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass
class CheckReport:
    check: str
    params: dict
    error: object  # float, or the string "exact"
    passed: bool
    deviation_flags: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "check": self.check,
            "params": {k: str(v) for k, v in self.params.items()},
            "error": self.error,
            "pass": self.passed,
            "deviation_flags": list(self.deviation_flags),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())
