"""Verdicts and the certificates attached to them.

Certificates are plain data; serialization keeps every rational as a string
so JSON round-trips are exact.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .exterior import GaussianRational


class Status(str, enum.Enum):
    MEMBER = "Member"
    NONMEMBER = "NonMember"
    UNKNOWN = "Unknown"


def _q(x) -> str:
    if isinstance(x, GaussianRational):
        return str(x)
    return str(Fraction(x))


def _jsonable(obj):
    if isinstance(obj, (Fraction, GaussianRational)):
        return _q(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    if isinstance(obj, float):
        return repr(obj)
    return obj


@dataclass
class PsdCertificate:
    """Elementary symmetric functions of the eigenvalues, all nonnegative."""

    e: list[Fraction]
    matrix: str = "real"

    def to_dict(self):
        return {"kind": "PsdCertificate", "matrix": self.matrix, "e": [_q(x) for x in self.e]}


@dataclass
class CounterexampleVector:
    """An exact point where the defining quantity is negative.

    ``kind`` says what the vector feeds: ``hermitian`` (a vector ``w`` with
    ``w^* h w < 0``), ``linear-forms`` (1-forms ``l_j`` with a negative top
    pairing), ``divisor-pair`` (``(a, b)`` with a negative intersection
    against ``theta_{a,1} theta_{b,1}``) or ``coefficients`` (a failed
    inequality on coordinates).
    """

    kind: str
    vector: Any
    value: Fraction

    def to_dict(self):
        return {"kind": "CounterexampleVector", "type": self.kind, "vector": _jsonable(self.vector), "value": _q(self.value)}


@dataclass
class Decomposition:
    """Nonnegative weights on generators that re-expand to the class."""

    terms: list[tuple[Fraction, Any]]

    def to_dict(self):
        return {
            "kind": "Decomposition",
            "terms": [{"weight": _q(w), "generator": _jsonable(gen)} for w, gen in self.terms],
        }


@dataclass
class InequalityReport:
    checks: dict[str, bool]
    parts: dict[str, Any] = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return all(self.checks.values())

    def to_dict(self):
        return {"kind": "InequalityReport", "checks": dict(self.checks), "parts": _jsonable(self.parts)}


@dataclass
class ConeVerdict:
    status: Status
    cone: str
    certificate: Any = None
    rule: str = ""
    supported: bool = False
    extra: dict = field(default_factory=dict)

    @property
    def is_member(self) -> bool:
        return self.status is Status.MEMBER

    @property
    def is_nonmember(self) -> bool:
        return self.status is Status.NONMEMBER

    def to_dict(self) -> dict:
        out = {
            "cone": self.cone,
            "status": self.status.value,
            "rule": self.rule,
            "certificate": _jsonable(self.certificate),
        }
        if self.status is Status.MEMBER and self.supported:
            out["strength"] = "supported"
        elif self.status is not Status.UNKNOWN:
            out["strength"] = "certified"
        if self.extra:
            out["extra"] = _jsonable(self.extra)
        return out
