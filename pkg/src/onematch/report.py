"""Check records and the audit report."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

PASS, FAIL, VACUOUS = "pass", "fail", "vacuous"

_RELATIONS = {
    "<=": lambda a, b: a <= b,
    ">=": lambda a, b: a >= b,
    "==": lambda a, b: a == b,
}


@dataclass
class CheckRecord:
    name: str
    status: str
    lhs: int
    rhs: int
    relation: str = "<="
    witness: Any = None
    reason: str | None = None

    def to_json(self) -> dict:
        out = {"name": self.name, "status": self.status, "lhs": self.lhs,
               "rhs": self.rhs, "relation": self.relation}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.reason is not None:
            out["reason"] = self.reason
        return out

    def __str__(self) -> str:
        tail = f"  ({self.reason})" if self.reason else ""
        return f"[{self.status:7}] {self.name}: {self.lhs} {self.relation} {self.rhs}{tail}"


def compare(name: str, lhs: int, relation: str, rhs: int, *, witness: Any = None,
            reason: str | None = None) -> CheckRecord:
    """Record ``lhs relation rhs``; a failing record always carries a witness.

    A witness passed by the caller is kept on passing records too.
    """
    ok = _RELATIONS[relation](lhs, rhs)
    if not ok and witness is None:
        witness = {"lhs": lhs, "rhs": rhs}
    return CheckRecord(name, PASS if ok else FAIL, int(lhs), int(rhs), relation,
                       _jsonable(witness), reason)


def assertion(name: str, violations: list, *, reason: str | None = None) -> CheckRecord:
    """Zero-violation check: lhs counts violations, rhs is 0."""
    witness = [_jsonable(v) for v in violations[:10]] if violations else None
    return CheckRecord(name, FAIL if violations else PASS, len(violations), 0, "==",
                       witness, reason)


def vacuous(name: str, reason: str, lhs: int = 0, rhs: int = 0,
            relation: str = "<=") -> CheckRecord:
    return CheckRecord(name, VACUOUS, int(lhs), int(rhs), relation, None, reason)


def _jsonable(x: Any) -> Any:
    if isinstance(x, (tuple, list)):
        return [_jsonable(y) for y in x]
    if isinstance(x, (set, frozenset)):
        return sorted(_jsonable(y) for y in x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    return x


@dataclass
class AuditReport:
    instance: dict
    records: list[CheckRecord] = field(default_factory=list)
    matching: list[tuple[int, int]] = field(default_factory=list)
    sets: dict = field(default_factory=dict)

    def add(self, record: CheckRecord) -> CheckRecord:
        self.records.append(record)
        return record

    def get(self, name: str) -> CheckRecord:
        for r in self.records:
            if r.name == name:
                return r
        raise KeyError(name)

    def names(self) -> list[str]:
        return [r.name for r in self.records]

    @property
    def failed(self) -> list[CheckRecord]:
        return [r for r in self.records if r.status == FAIL]

    @property
    def ok(self) -> bool:
        return not self.failed

    def to_json(self) -> dict:
        return {
            "instance": self.instance,
            "matching": {"edges": [list(e) for e in self.matching]},
            "sets": _jsonable(self.sets),
            "records": [r.to_json() for r in self.records],
            "ok": self.ok,
        }
