"""Univariate rational polynomials and exact nonnegativity on the real line."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence


class UniPoly:
    """Polynomial with rational coefficients, ascending degree order."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __call__(self, x) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "UniPoly") -> "UniPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return UniPoly([x + y for x, y in zip(a, b)])

    def __neg__(self) -> "UniPoly":
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other) -> "UniPoly":
        if not isinstance(other, UniPoly):
            return UniPoly([c * other for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def derivative(self) -> "UniPoly":
        return UniPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [Fraction(0)] * max(len(rem) - len(other.coeffs) + 1, 0)
        d = other.degree
        while len(rem) - 1 >= d and rem:
            shift = len(rem) - 1 - d
            f = rem[-1] / other.lead
            q[shift] = f
            for i, c in enumerate(other.coeffs):
                rem[i + shift] -= f * c
            rem.pop()
            while rem and rem[-1] == 0:
                rem.pop()
        return UniPoly(q), UniPoly(rem)

    def monic(self) -> "UniPoly":
        return self * (1 / self.lead) if self.coeffs else self

    def to_list(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    def __repr__(self):
        return f"UniPoly({[str(c) for c in self.coeffs]})"


def gcd(p: UniPoly, q: UniPoly) -> UniPoly:
    while not q.is_zero():
        p, q = q, p.divmod(q)[1]
    return p.monic()


def squarefree_part(p: UniPoly) -> UniPoly:
    if p.degree <= 0:
        return p
    return p.divmod(gcd(p, p.derivative()))[0]


def sturm_sequence(p: UniPoly) -> list[UniPoly]:
    seq = [p, p.derivative()]
    while not seq[-1].is_zero():
        seq.append(-seq[-2].divmod(seq[-1])[1])
    return seq[:-1]


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def sign_changes(seq: Sequence[UniPoly], x) -> int:
    signs = [_sign(q(x)) for q in seq]
    signs = [s for s in signs if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _sign_changes_at_infinity(seq: Sequence[UniPoly], positive: bool) -> int:
    signs = []
    for q in seq:
        s = _sign(q.lead)
        if not positive and q.degree % 2 == 1:
            s = -s
        if s:
            signs.append(s)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_real_roots(p: UniPoly, lo=None, hi=None) -> int:
    """Distinct real roots in ``(lo, hi]`` (whole line when bounds are None)."""
    if p.is_zero():
        raise ValueError("zero polynomial has infinitely many roots")
    seq = sturm_sequence(squarefree_part(p))
    left = _sign_changes_at_infinity(seq, False) if lo is None else sign_changes(seq, lo)
    right = _sign_changes_at_infinity(seq, True) if hi is None else sign_changes(seq, hi)
    return left - right


def root_bound(p: UniPoly) -> Fraction:
    """Cauchy bound: every real root lies in ``(-B, B)``."""
    lead = abs(p.lead)
    return 1 + max((abs(c) / lead for c in p.coeffs[:-1]), default=Fraction(0))


def isolate_roots(p: UniPoly) -> list[tuple[Fraction, Fraction]]:
    """Disjoint open intervals ``(lo, hi)``, each holding exactly one real root.

    Endpoints are never roots, so ``p`` has a constant nonzero sign between
    consecutive intervals.
    """
    sf = squarefree_part(p)
    if sf.degree <= 0:
        return []
    seq = sturm_sequence(sf)
    bound = root_bound(sf)

    def count(lo, hi):
        return sign_changes(seq, lo) - sign_changes(seq, hi)

    out = []
    stack = [(-bound, bound)]
    while stack:
        lo, hi = stack.pop()
        n = count(lo, hi)
        if n == 0:
            continue
        if n == 1:
            out.append((lo, hi))
            continue
        mid = _split_point(sf, lo, hi)
        stack.append((mid, hi))
        stack.append((lo, mid))
    return sorted(out)


def _split_point(sf: UniPoly, lo: Fraction, hi: Fraction) -> Fraction:
    width = hi - lo
    for num, den in ((1, 2), (1, 3), (2, 3), (2, 5), (3, 5), (3, 7), (4, 7)):
        mid = lo + width * num / den
        if sf(mid) != 0:
            return mid
    raise ArithmeticError("could not find a non-root split point")


@dataclass
class SturmTranscript:
    """Evidence for a nonnegativity decision, re-checkable with :func:`check_transcript`."""

    poly: list[str]
    squarefree: list[str]
    sequence: list[list[str]]
    intervals: list[tuple[str, str]]
    samples: list[tuple[str, str]] = field(default_factory=list)
    nonnegative: bool = True
    witness: str | None = None

    def to_dict(self) -> dict:
        return {
            "kind": "SturmTranscript",
            "poly": self.poly,
            "squarefree": self.squarefree,
            "sequence": self.sequence,
            "intervals": [list(iv) for iv in self.intervals],
            "samples": [list(s) for s in self.samples],
            "nonnegative": self.nonnegative,
            "witness": self.witness,
        }


def poly_nonneg(p: UniPoly) -> tuple[bool, Fraction | None, SturmTranscript]:
    """Decide ``p(b) >= 0`` for every real ``b``.

    Between consecutive real roots of the square-free part ``p`` has constant
    sign, and every such gap contains an endpoint of an isolating interval.
    Evaluating ``p`` at those endpoints (or at 0 when there are no real
    roots) therefore settles the question exactly.  On failure the returned
    witness is a rational ``b`` with ``p(b) < 0``.
    """
    if p.is_zero():
        return True, None, SturmTranscript([], [], [], [], [], True, None)
    sf = squarefree_part(p)
    intervals = isolate_roots(p)
    points = sorted({e for iv in intervals for e in iv}) or [Fraction(0)]
    samples = [(x, p(x)) for x in points]
    witness = next((x for x, v in samples if v < 0), None)
    transcript = SturmTranscript(
        poly=p.to_list(),
        squarefree=sf.to_list(),
        sequence=[q.to_list() for q in sturm_sequence(sf)] if sf.degree > 0 else [sf.to_list()],
        intervals=[(str(a), str(b)) for a, b in intervals],
        samples=[(str(x), str(v)) for x, v in samples],
        nonnegative=witness is None,
        witness=None if witness is None else str(witness),
    )
    return witness is None, witness, transcript


def check_transcript(p: UniPoly, transcript: SturmTranscript) -> bool:
    """Re-validate a transcript from scratch (independent recomputation of root counts)."""
    if p.is_zero():
        return transcript.nonnegative
    if [Fraction(c) for c in transcript.poly] != list(p.coeffs):
        return False
    if transcript.witness is not None:
        return p(Fraction(transcript.witness)) < 0 and not transcript.nonnegative
    intervals = [(Fraction(a), Fraction(b)) for a, b in transcript.intervals]
    total = count_real_roots(p)
    if total != len(intervals):
        return False
    for lo, hi in intervals:
        if p(lo) == 0 or p(hi) == 0 or count_real_roots(p, lo, hi) != 1:
            return False
    for (_, hi), (lo, _) in zip(intervals, intervals[1:]):
        if hi > lo:
            return False
    points = sorted({e for iv in intervals for e in iv}) or [Fraction(0)]
    return all(p(x) > 0 for x in points)
