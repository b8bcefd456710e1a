"""Verification records and deterministic report emission (CSV / JSON)."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Iterable


def fmt17(x: float) -> str:
    """Serialize a float with 17 significant digits (round-trip safe)."""
    return format(float(x), ".17g")


def _canon_params(params: dict[str, Any]) -> str:
    def default(o):
        return str(o)

    return json.dumps(params, sort_keys=True, separators=(",", ":"), default=default)


@dataclass(frozen=True)
class VerificationRecord:
    """One checked inequality: lhs <= rhs with margin = rhs - lhs."""

    check_id: str
    params: dict[str, Any] = field(default_factory=dict)
    lhs: float = 0.0
    rhs: float = 0.0
    margin: float = 0.0
    passed: bool = False

    @staticmethod
    def build(check_id: str, params: dict[str, Any], lhs: float, rhs: float,
              passed: bool | None = None) -> "VerificationRecord":
        margin = rhs - lhs
        if passed is None:
            passed = margin >= 0
        return VerificationRecord(check_id, params, float(lhs), float(rhs), float(margin), bool(passed))

    def sort_key(self) -> tuple[str, str]:
        return (self.check_id, _canon_params(self.params))

    def as_dict(self) -> dict[str, Any]:
        return {
            "check_id": self.check_id,
            "params": self.params,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "margin": self.margin,
            "pass": self.passed,
        }


CSV_HEADER = "check_id,params,lhs,rhs,margin,pass"


def emit_csv(records: Iterable[VerificationRecord]) -> str:
    rows = [CSV_HEADER]
    for r in sorted(records, key=VerificationRecord.sort_key):
        params = _canon_params(r.params).replace('"', '""')
        rows.append(
            f'{r.check_id},"{params}",{fmt17(r.lhs)},{fmt17(r.rhs)},{fmt17(r.margin)},{str(r.passed).lower()}'
        )
    return "\n".join(rows) + "\n"


def emit_json(records: Iterable[VerificationRecord]) -> str:
    payload = [r.as_dict() for r in sorted(records, key=VerificationRecord.sort_key)]

    def default(o):
        return str(o)

    return json.dumps(payload, sort_keys=True, indent=2, default=default) + "\n"


def emit_report(records: Iterable[VerificationRecord], fmt: str = "csv") -> str:
    if fmt == "csv":
        return emit_csv(records)
    if fmt == "json":
        return emit_json(records)
    raise ValueError(f"unknown report format: {fmt}")


def all_passed(records: Iterable[VerificationRecord]) -> bool:
    return all(r.passed for r in records)
