"""Versioned machine reports and their human-readable rendering."""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass, field

SCHEMA = "report-v1"
VERDICTS = ("pass", "fail", "inapplicable", "inconclusive")


@dataclass
class Check:
    name: str
    verdict: str
    evidence: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")


@dataclass
class Report:
    command: str
    inputs: list = field(default_factory=list)
    checks: list = field(default_factory=list)
    seed: int | None = None
    timing: float | None = None
    schema: str = SCHEMA

    def add(self, name, verdict, /, **evidence) -> Check:
        c = Check(name, verdict, evidence)
        self.checks.append(c)
        return c

    @property
    def exit_code(self) -> int:
        return 1 if any(c.verdict == "fail" for c in self.checks) else 0

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, d):
        d = dict(d)
        if d.get("schema") != SCHEMA:
            raise ValueError(f"unsupported report schema {d.get('schema')!r}")
        d["checks"] = [Check(**c) for c in d.get("checks", [])]
        return cls(**d)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls.from_dict(json.loads(text))

    def to_text(self) -> str:
        lines = [f"{self.command} ({self.schema})"]
        for inp in self.inputs:
            lines.append(f"input: {inp.get('source')} [{inp.get('digest', '')[:12]}]")
        if self.seed is not None:
            lines.append(f"seed: {self.seed}")
        for c in self.checks:
            lines.append(f"[{c.verdict.upper()}] {c.name}")
            _render(c.evidence, lines, "    ")
        if self.timing is not None:
            lines.append(f"time: {self.timing:.3f}s")
        return "\n".join(lines) + "\n"


def _render(value, lines, indent):
    if isinstance(value, dict):
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v and not _is_flat_list(v):
                lines.append(f"{indent}{k}:")
                _render(v, lines, indent + "  ")
            elif isinstance(v, str) and "\n" in v:
                lines.append(f"{indent}{k}: |")
                lines.extend(indent + "  " + ln for ln in v.rstrip("\n").split("\n"))
            else:
                lines.append(f"{indent}{k}: {_inline(v)}")
    elif isinstance(value, list):
        for v in value:
            if isinstance(v, dict) or (isinstance(v, list) and not _is_flat_list(v)):
                lines.append(f"{indent}-")
                _render(v, lines, indent + "  ")
            else:
                lines.append(f"{indent}- {_inline(v)}")
    else:
        lines.append(f"{indent}{value}")


def _is_flat_list(v):
    return (
        isinstance(v, list)
        and all(not isinstance(x, (dict, list)) for x in v)
        and len(_inline(v)) <= 72
    )


def _inline(v):
    if isinstance(v, list):
        return "[" + ", ".join(str(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{}"
    return str(v)


def digest(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()
