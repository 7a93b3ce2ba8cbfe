"""JSON documents for canonical classes.

A document looks like ``{"g": 2, "degree": 2, "coeffs": {"t1*t2": "4", "l^2": "-1"}}``.
Monomial keys are ``t1^i*t2^j*l^k`` in that order with exponent-1 markers
and zero-exponent factors optional; ``1`` is the degree-0 monomial.
Rationals are strings ``<int>`` or ``<int>/<posint>``.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

from .canring import MAX_G, CanonicalClass, format_monomial

_RATIONAL = re.compile(r"-?\d+(/[1-9]\d*)?")
_FACTOR = re.compile(r"(t1|t2|l)(?:\^(\d+))?")
_ORDER = {"t1": 0, "t2": 1, "l": 2}


class DocumentError(ValueError):
    """Parse or validation failure, with a 1-based position when known."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)


def _position(text: str, needle: str) -> tuple[int | None, int | None]:
    idx = text.find(needle)
    if idx < 0:
        return None, None
    return text.count("\n", 0, idx) + 1, idx - (text.rfind("\n", 0, idx) + 1) + 1


def parse_monomial(key: str) -> tuple[int, int, int]:
    """``"t1^2*l"`` -> ``(2, 0, 1)``."""
    if key == "1":
        return (0, 0, 0)
    exps = [0, 0, 0]
    last = -1
    for part in key.split("*"):
        m = _FACTOR.fullmatch(part)
        if not m:
            raise ValueError(f"bad monomial factor {part!r} in {key!r}")
        pos = _ORDER[m.group(1)]
        if pos <= last:
            raise ValueError(f"factors of {key!r} must appear once each, in the order t1, t2, l")
        last = pos
        exps[pos] = int(m.group(2)) if m.group(2) is not None else 1
    return tuple(exps)


def parse_rational(s) -> Fraction:
    if not isinstance(s, str) or not _RATIONAL.fullmatch(s):
        raise ValueError(f"bad rational {s!r}; expected \"<int>\" or \"<int>/<posint>\"")
    return Fraction(s)


def _reject_duplicates(pairs):
    out = {}
    for k, v in pairs:
        if k in out:
            raise ValueError(f"duplicate key {k!r}")
        out[k] = v
    return out


def loads(text: str) -> CanonicalClass:
    """Parse a class document; every failure raises :class:`DocumentError`."""
    try:
        doc = json.loads(text, object_pairs_hook=_reject_duplicates)
    except json.JSONDecodeError as exc:
        raise DocumentError(exc.msg, exc.lineno, exc.colno) from None
    except ValueError as exc:
        key = str(exc).split("'")[1] if "'" in str(exc) else ""
        raise DocumentError(str(exc), *_last_position(text, f'"{key}"')) from None
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object", 1, 1)
    unknown = set(doc) - {"g", "degree", "coeffs"}
    if unknown:
        name = sorted(unknown)[0]
        raise DocumentError(f"unknown field {name!r}", *_position(text, f'"{name}"'))
    for field in ("g", "degree", "coeffs"):
        if field not in doc:
            raise DocumentError(f"missing field {field!r}", 1, 1)
    g, degree, coeffs = doc["g"], doc["degree"], doc["coeffs"]
    if not isinstance(g, int) or isinstance(g, bool) or not 1 <= g <= MAX_G:
        raise DocumentError(f"g must be an integer in 1..{MAX_G}", *_position(text, '"g"'))
    if not isinstance(degree, int) or isinstance(degree, bool) or not 0 <= degree <= 2 * g:
        raise DocumentError(f"degree must be an integer in 0..{2 * g}", *_position(text, '"degree"'))
    if not isinstance(coeffs, dict):
        raise DocumentError("coeffs must be an object", *_position(text, '"coeffs"'))
    parsed = {}
    for key, value in coeffs.items():
        where = _position(text, json.dumps(key))
        try:
            mono = parse_monomial(key)
        except ValueError as exc:
            raise DocumentError(str(exc), *where) from None
        if sum(mono) != degree:
            raise DocumentError(f"monomial {key!r} has degree {sum(mono)}, expected {degree}", *where)
        if mono in parsed:
            raise DocumentError(f"duplicate monomial {key!r}", *_last_position(text, json.dumps(key)))
        try:
            parsed[mono] = parse_rational(value)
        except ValueError as exc:
            raise DocumentError(str(exc), *where) from None
    return CanonicalClass.from_monomials(g, degree, parsed)


def _last_position(text: str, needle: str) -> tuple[int | None, int | None]:
    idx = text.rfind(needle)
    if idx < 0:
        return None, None
    return text.count("\n", 0, idx) + 1, idx - (text.rfind("\n", 0, idx) + 1) + 1


def load(path: str) -> CanonicalClass:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def to_document(x: CanonicalClass) -> dict:
    return {
        "g": x.g,
        "degree": x.degree,
        "coeffs": {format_monomial(m): str(c) for m, c in sorted(x.coeffs.items(), reverse=True) if c},
    }


def dumps(x: CanonicalClass) -> str:
    return json.dumps(to_document(x), indent=2)
