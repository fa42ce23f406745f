"""Run reports emitted by the command-line driver."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "lbca run report",
    "type": "object",
    "required": ["command", "input_digest", "ok", "verdicts"],
    "additionalProperties": False,
    "properties": {
        "command": {"enum": ["present", "groebner", "complex", "singular", "oracle"]},
        "input_digest": {"type": "string", "pattern": "^(sha256:[0-9a-f]{64}|none)$"},
        "ok": {"type": "boolean"},
        "verdicts": {"type": "object"},
        "timings": {
            "type": "object",
            "additionalProperties": {"type": "number", "minimum": 0},
        },
    },
}


def digest(data: bytes | None) -> str:
    if data is None:
        return "none"
    return "sha256:" + hashlib.sha256(data).hexdigest()


@dataclass
class RunReport:
    command: str
    input_digest: str
    verdicts: dict
    ok: bool = True
    timings: dict[str, float] = field(default_factory=dict)

    def to_dict(self, with_timings: bool = False) -> dict:
        out = {
            "command": self.command,
            "input_digest": self.input_digest,
            "ok": self.ok,
            "verdicts": self.verdicts,
        }
        if with_timings:
            out["timings"] = {k: round(v, 6) for k, v in self.timings.items()}
        return out

    def to_json(self, with_timings: bool = False) -> str:
        return json.dumps(self.to_dict(with_timings), indent=2, sort_keys=True)
