"""Check records emitted by every verification routine."""

from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterator

import jsonschema

from .exact.poly import MultiPoly
from .exact.rational import format_rational

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"
_SEVERITY = {PASS: 0, INCONCLUSIVE: 1, FAIL: 2}

RECORD_SCHEMA = {
    "type": "object",
    "required": ["check", "status", "paper_ref", "elapsed_ms"],
    "properties": {
        "check": {"type": "string"},
        "status": {"enum": [PASS, FAIL, INCONCLUSIVE]},
        "paper_ref": {"type": "string"},
        "witness": {},
        "elapsed_ms": {"type": "integer", "minimum": 0},
        "notes": {"type": "array", "items": {"type": "string"}},
    },
    "additionalProperties": False,
    "if": {"properties": {"status": {"const": FAIL}}},
    "then": {"required": ["witness"], "properties": {"witness": {"not": {"enum": [None, {}, [], ""]}}}},
}


def jsonable(obj: Any) -> Any:
    """Convert exact values (Fractions, polynomials, tuples, sets) to JSON-ready data."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (str, int)):
        return obj
    if isinstance(obj, Fraction):
        return format_rational(obj)
    if isinstance(obj, MultiPoly):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k) if not isinstance(k, str) else k: jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, (set, frozenset)):
        return sorted((jsonable(v) for v in obj), key=repr)
    if hasattr(obj, "to_json"):
        return obj.to_json()
    return str(obj)


@dataclass
class CheckReport:
    check: str
    status: str
    paper_ref: str
    witness: Any = None
    elapsed_ms: int = 0
    notes: list[str] = field(default_factory=list)

    def __post_init__(self):
        if self.status not in _SEVERITY:
            raise ValueError(f"unknown status {self.status!r}")
        if self.status == FAIL and not self.witness:
            raise ValueError(f"failed check {self.check!r} must carry a witness")

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_json(self) -> dict:
        out = {
            "check": self.check,
            "status": self.status,
            "paper_ref": self.paper_ref,
            "elapsed_ms": int(self.elapsed_ms),
        }
        if self.witness is not None:
            out["witness"] = jsonable(self.witness)
        if self.notes:
            out["notes"] = list(self.notes)
        return out

    @classmethod
    def from_json(cls, data: dict) -> "CheckReport":
        validate_record(data)
        return cls(
            check=data["check"],
            status=data["status"],
            paper_ref=data["paper_ref"],
            witness=data.get("witness"),
            elapsed_ms=data["elapsed_ms"],
            notes=list(data.get("notes", [])),
        )

    def text_line(self) -> str:
        line = f"[{self.status.upper():>12}] {self.check} ({self.elapsed_ms} ms)"
        if self.status != PASS and self.witness is not None:
            line += " witness=" + json.dumps(jsonable(self.witness), sort_keys=True)[:400]
        return line


def validate_record(data: dict) -> None:
    jsonschema.validate(data, RECORD_SCHEMA)


def worst_status(statuses) -> str:
    statuses = list(statuses)
    if not statuses:
        return PASS
    return max(statuses, key=_SEVERITY.__getitem__)


class _Timer:
    ms: int = 0


@contextmanager
def stopwatch() -> Iterator[_Timer]:
    t = _Timer()
    start = time.perf_counter()
    try:
        yield t
    finally:
        t.ms = int((time.perf_counter() - start) * 1000)
