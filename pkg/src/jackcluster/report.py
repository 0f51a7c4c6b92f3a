"""Structured pass/fail records for named identity checks."""

from __future__ import annotations

from dataclasses import dataclass


VERDICTS = ("holds", "fails", "not-applicable",
            "conjecture-consistent", "conjecture-violated")


@dataclass(frozen=True)
class IdentityCase:
    identity: str
    params: dict

    def key(self):
        return (self.identity,
                tuple(sorted((k, _freeze(v)) for k, v in self.params.items())))


def _freeze(v):
    if isinstance(v, (list, tuple)):
        return tuple(_freeze(x) for x in v)
    return v


@dataclass
class IdentityReport:
    case: IdentityCase
    verdict: str
    anchor: str = ""
    witness_poly: str | None = None
    witness_constant: str | None = None
    detail: str = ""
    timing_ms: float = 0.0

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")
        if self.verdict in ("fails", "conjecture-violated") \
                and not (self.witness_poly or self.witness_constant or self.detail):
            raise ValueError("failing verdict requires a witness")

    def ok(self):
        return self.verdict in ("holds", "not-applicable", "conjecture-consistent")

    def to_dict(self):
        return {
            "identity": self.case.identity,
            "params": {k: list(v) if isinstance(v, (tuple, list)) else v
                       for k, v in self.case.params.items()},
            "verdict": self.verdict,
            "anchor": self.anchor,
            "witness_poly": self.witness_poly,
            "witness_constant": self.witness_constant,
            "detail": self.detail,
            "timing_ms": self.timing_ms,
        }
