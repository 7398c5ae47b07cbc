"""Check reports shared by the verifiers and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any


def _jsonable(x: Any) -> Any:
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else x.numerator
    if hasattr(x, "to_json_obj"):
        return x.to_json_obj()
    if isinstance(x, dict):
        return {(k if isinstance(k, str) else str(_jsonable(k))): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


@dataclass
class CheckReport:
    check: str
    n: int | None
    passed: bool
    witness: dict | None = None
    subject: str | None = None
    alpha: Any = None
    beta: Any = None
    details: dict = field(default_factory=dict)

    def __bool__(self):
        return self.passed

    def to_json_obj(self) -> dict:
        obj = {"check": self.check, "n": self.n, "pass": self.passed}
        if self.subject is not None:
            obj["subject"] = self.subject
        obj["witness"] = _jsonable(self.witness)
        if self.alpha is not None:
            obj["alpha"] = _jsonable(self.alpha)
        if self.beta is not None:
            obj["beta"] = _jsonable(self.beta)
        if self.details:
            obj["details"] = _jsonable(self.details)
        return obj
