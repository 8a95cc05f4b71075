"""Tables and verification reports, serialized deterministically to CSV or JSON.

CSV numbers use 17 significant digits so a parsed table reproduces the
float64 values exactly.  Footer lines start with ``#``.  JSON uses the
shortest round-trip repr; non-finite numbers become the strings ``"inf"``,
``"-inf"`` and ``"nan"`` so that the output stays standard JSON.
"""

from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass, field
from typing import Any, Optional, Sequence

from . import __version__

TOOL = "powerkneading"


def fmt_num(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def jsonable(value: Any) -> Any:
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, float):
        if math.isfinite(value):
            return value
        return "nan" if math.isnan(value) else ("inf" if value > 0 else "-inf")
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    try:
        return jsonable(float(value))
    except (TypeError, ValueError):
        return str(value)


def dump_json(obj: Any) -> str:
    return json.dumps(jsonable(obj), indent=2, allow_nan=False) + "\n"


@dataclass
class Table:
    name: str
    columns: Sequence[str]
    rows: list[Sequence[Any]]
    summary: dict = field(default_factory=dict)
    passed: Optional[bool] = None

    def footer(self) -> list[str]:
        return [f"{k}: {fmt_num(v)}" for k, v in self.summary.items()]

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write(",".join(self.columns) + "\n")
        for row in self.rows:
            buf.write(",".join(_csv_cell(v) for v in row) + "\n")
        for line in self.footer():
            buf.write(f"# {line}\n")
        return buf.getvalue()

    def to_json(self) -> str:
        return dump_json(
            {
                "table": self.name,
                "columns": list(self.columns),
                "rows": [list(r) for r in self.rows],
                "summary": self.summary,
            }
        )


def _csv_cell(value: Any) -> str:
    text = fmt_num(value)
    if any(ch in text for ch in ',"\n'):
        return '"' + text.replace('"', '""') + '"'
    return text


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    passed: bool
    metric: str
    value: Any
    threshold: Any
    samples: int
    detail: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "suite": self.suite,
            "name": self.name,
            "status": "pass" if self.passed else "fail",
            "metric": self.metric,
            "value": self.value,
            "threshold": self.threshold,
            "samples": self.samples,
            "detail": self.detail,
        }


@dataclass
class VerificationReport:
    suite: str
    seed: int
    config: dict
    checks: list[Check]
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def as_dict(self) -> dict:
        return {
            "tool": TOOL,
            "version": __version__,
            "suite": self.suite,
            "status": "pass" if self.passed else "fail",
            "seed": self.seed,
            "config": self.config,
            "checks": [c.as_dict() for c in self.checks],
            "notes": list(self.notes),
        }

    def to_json(self) -> str:
        return dump_json(self.as_dict())

    def to_csv(self) -> str:
        table = Table(
            self.suite,
            ("suite", "name", "status", "metric", "value", "threshold", "samples"),
            [
                (c.suite, c.name, "pass" if c.passed else "fail", c.metric, c.value, c.threshold, c.samples)
                for c in self.checks
            ],
            {"status": "pass" if self.passed else "fail", "seed": self.seed, "version": __version__},
        )
        out = table.to_csv()
        return out + "".join(f"# note: {n}\n" for n in self.notes)


def merge(suite: str, seed: int, config: dict, parts: Sequence[VerificationReport]) -> VerificationReport:
    checks, notes = [], []
    for part in parts:
        checks.extend(part.checks)
        notes.extend(part.notes)
    return VerificationReport(suite, seed, config, checks, notes)
