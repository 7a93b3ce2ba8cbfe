"""Exact exterior algebra of complex differential forms.

Everything here is exact: coefficients are Gaussian rationals built on
:class:`fractions.Fraction`.  A :class:`Multivector` is an element of the
exterior algebra on ``dim`` ordered generators, stored sparsely as a map from
bitmask to coefficient.  A :class:`Form` on ``V = C^{2g}`` is the special case
with generators ``dz_1..dz_{2g}, dzbar_1..dzbar_{2g}`` in that order, so the
normal form of every monomial is ``dz_I ^ dzbar_J`` with ``I`` and ``J``
ascending.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator, Sequence


class GaussianRational:
    """An element ``re + i*im`` of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    @classmethod
    def coerce(cls, value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, complex):
            raise TypeError("complex floats are not exact; pass GaussianRational")
        return cls(value, 0)

    def conj(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __add__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, GaussianRational):
            return GaussianRational(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        if isinstance(other, (int, Fraction)):
            return GaussianRational(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        num = self * o.conj()
        return GaussianRational(num.re / n, num.im / n)

    def __rtruediv__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pow__(self, k: int):
        if k < 0:
            return GaussianRational(1) / (self ** (-k))
        out = GaussianRational(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


def _coerce_or_none(value):
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (int, Fraction)):
        return GaussianRational(value, 0)
    return None


I = GaussianRational(0, 1)
ONE = GaussianRational(1, 0)


def i_power(k: int) -> GaussianRational:
    return [ONE, I, GaussianRational(-1), GaussianRational(0, -1)][k % 4]


def merge_sign(a: int, b: int) -> int:
    """Sign of reordering ``e_A ^ e_B`` into ascending order (disjoint masks)."""
    inversions = 0
    while b:
        low = b & -b
        inversions += (a & ~((low << 1) - 1)).bit_count()
        b ^= low
    return -1 if inversions & 1 else 1


def sort_sign(indices: Sequence[int]) -> int:
    """Sign of the permutation sorting ``indices``; 0 if an index repeats."""
    if len(set(indices)) != len(indices):
        return 0
    inversions = sum(
        1 for x, y in combinations(range(len(indices)), 2) if indices[x] > indices[y]
    )
    return -1 if inversions & 1 else 1


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def bits_of(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


class Multivector:
    """Sparse element of the exterior algebra on ``dim`` generators.

    Coefficients may be any exact ring elements supporting ``+``, ``*`` and
    truthiness (``Fraction`` or :class:`GaussianRational`).  Values are
    treated as immutable.
    """

    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms: dict | None = None):
        self.dim = dim
        self.terms = {m: c for m, c in (terms or {}).items() if c}

    def _like(self, terms: dict) -> "Multivector":
        return Multivector(self.dim, terms)

    @classmethod
    def basis(cls, dim: int, indices: Sequence[int], coeff=Fraction(1)) -> "Multivector":
        """``coeff * e_{i1} ^ ... ^ e_{ik}`` (0-based indices, any order)."""
        s = sort_sign(indices)
        if s == 0:
            return cls(dim)
        if any(not 0 <= i < dim for i in indices):
            raise ValueError(f"index out of range for dimension {dim}")
        return cls(dim, {mask_of(indices): coeff * s})

    def _check(self, other: "Multivector"):
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def wedge(self, other: "Multivector") -> "Multivector":
        self._check(other)
        out: dict = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                if ma & mb:
                    continue
                c = ca * cb
                if merge_sign(ma, mb) < 0:
                    c = -c
                key = ma | mb
                prev = out.get(key)
                out[key] = c if prev is None else prev + c
        return self._like(out)

    def __xor__(self, other):
        return self.wedge(other)

    def power(self, k: int) -> "Multivector":
        out = self._like({0: self._one()})
        for _ in range(k):
            out = out.wedge(self)
        return out

    def _one(self):
        for c in self.terms.values():
            return c * 0 + 1
        return Fraction(1)

    def __add__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            prev = out.get(m)
            out[m] = c if prev is None else prev + c
        return self._like(out)

    def __sub__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return self._like({m: -c for m, c in self.terms.items()})

    def scale(self, s) -> "Multivector":
        return self._like({m: c * s for m, c in self.terms.items()})

    def __mul__(self, s):
        if isinstance(s, Multivector):
            return NotImplemented
        return self.scale(s)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        return self.dim == other.dim and not (self - other).terms

    def __hash__(self):
        return hash((self.dim, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set[int]:
        return {m.bit_count() for m in self.terms}

    def homogeneous_part(self, degree: int) -> "Multivector":
        return self._like({m: c for m, c in self.terms.items() if m.bit_count() == degree})

    def coefficient(self, indices: Sequence[int]):
        s = sort_sign(indices)
        c = self.terms.get(mask_of(indices))
        if s == 0 or c is None:
            return 0
        return c if s > 0 else -c

    def items(self) -> Iterator[tuple[tuple[int, ...], object]]:
        for m in sorted(self.terms):
            yield tuple(bits_of(m)), self.terms[m]

    def __repr__(self):
        body = " + ".join(f"({c})e{list(idx)}" for idx, c in self.items()) or "0"
        return f"Multivector(dim={self.dim}: {body})"


class Form(Multivector):
    """A complex form on ``V = C^n`` with Gaussian-rational coefficients.

    Usually ``n = 2g`` (the tangent space of ``A x A``); pass ``n=`` for any
    other dimension, in which case ``g`` may be None.  Generator ``p``
    (0-based) is ``dz_{p+1}`` for ``p < n`` and ``dzbar_{p-n+1}`` otherwise.
    """

    __slots__ = ("g", "n")

    def __init__(self, g: int | None, terms: dict | None = None, *, n: int | None = None):
        if n is None:
            if g is None or g < 1:
                raise ValueError("g must be >= 1")
            n = 2 * g
        elif n < 1 or (g is not None and n != 2 * g):
            raise ValueError("inconsistent dimensions")
        self.n = n
        self.g = n // 2 if n % 2 == 0 else None
        super().__init__(2 * n, terms)

    def _like(self, terms):
        return Form(None, terms, n=self.n)

    def _one(self):
        return ONE

    def _check(self, other):
        if not isinstance(other, Form) or other.n != self.n:
            raise ValueError("forms live on different spaces (dimension mismatch)")

    @classmethod
    def zero(cls, g: int | None, n: int | None = None) -> "Form":
        return cls(g, n=n)

    @classmethod
    def one(cls, g: int | None, n: int | None = None) -> "Form":
        return cls(g, {0: ONE}, n=n)

    @classmethod
    def monomial(cls, g: int | None, holo: Sequence[int], anti: Sequence[int], coeff=1, n: int | None = None) -> "Form":
        """``coeff * dz_holo ^ dzbar_anti`` with 1-based indices in any order."""
        n = 2 * g if n is None else n
        for i in list(holo) + list(anti):
            if not 1 <= i <= n:
                raise ValueError(f"coordinate index {i} outside 1..{n}")
        s = sort_sign(list(holo)) * sort_sign(list(anti))
        if s == 0:
            return cls(None, n=n)
        mask = mask_of(i - 1 for i in holo) | mask_of(n + j - 1 for j in anti)
        c = GaussianRational.coerce(coeff)
        return cls(None, {mask: c if s > 0 else -c}, n=n)

    @classmethod
    def linear(cls, g: int | None, coeffs: Sequence, conjugate: bool = False) -> "Form":
        """The 1-form ``sum c_j dz_j`` (or ``sum c_j dzbar_j``); ``g=None`` takes ``n = len(coeffs)``."""
        n = len(coeffs) if g is None else 2 * g
        if len(coeffs) != n:
            raise ValueError(f"expected {n} coefficients")
        off = n if conjugate else 0
        return cls(None, {1 << (off + j): GaussianRational.coerce(c) for j, c in enumerate(coeffs)}, n=n)

    def split(self, mask: int) -> tuple[int, int]:
        n = self.n
        return mask & ((1 << n) - 1), mask >> n

    def bidegrees(self) -> set[tuple[int, int]]:
        return {tuple(m.bit_count() for m in self.split(mask)) for mask in self.terms}

    def bidegree_part(self, p: int, q: int) -> "Form":
        return self._like(
            {
                m: c
                for m, c in self.terms.items()
                if tuple(x.bit_count() for x in self.split(m)) == (p, q)
            }
        )

    def conj(self) -> "Form":
        # conj(c dz_I ^ dzbar_J) = conj(c) (-1)^{|I||J|} dz_J ^ dzbar_I
        n = self.n
        out = {}
        for m, c in self.terms.items():
            hol, anti = self.split(m)
            cc = c.conj()
            if (hol.bit_count() * anti.bit_count()) & 1:
                cc = -cc
            out[anti | (hol << n)] = cc
        return self._like(out)

    def coeff(self, holo: Sequence[int], anti: Sequence[int]) -> GaussianRational:
        """Coefficient of ``dz_holo ^ dzbar_anti`` (1-based, ascending)."""
        n = self.n
        mask = mask_of(i - 1 for i in holo) | mask_of(n + j - 1 for j in anti)
        return self.terms.get(mask, GaussianRational(0))

    def __repr__(self):
        n = self.n
        parts = []
        for m in sorted(self.terms):
            hol, anti = self.split(m)
            h = ",".join(str(i + 1) for i in bits_of(hol))
            a = ",".join(str(j + 1) for j in bits_of(anti))
            parts.append(f"({self.terms[m]}) dz[{h}]^dzb[{a}]")
        return f"Form(n={self.n}: " + (" + ".join(parts) or "0") + ")"


def wedge(f: Form, h: Form) -> Form:
    return f.wedge(h)


def wedge_all(forms: Iterable[Form]) -> Form:
    it = iter(forms)
    out = next(it)
    for f in it:
        out = out.wedge(f)
    return out


def is_real_kk(f: Form, k: int | None = None) -> bool:
    """True iff ``f`` is a real form of pure bidegree ``(k, k)``."""
    bideg = f.bidegrees()
    if k is None:
        if len(bideg) > 1:
            return False
        if bideg:
            p, q = next(iter(bideg))
            if p != q:
                return False
    elif bideg - {(k, k)}:
        return False
    return f.conj() == f


def positive_rank_one(g: int | None, coeffs: Sequence) -> Form:
    """``i l ^ lbar`` for ``l = sum c_j dz_j`` (``g=None``: on ``C^len(coeffs)``)."""
    ell = Form.linear(g, coeffs)
    ell_bar = Form.linear(g, [GaussianRational.coerce(c).conj() for c in coeffs], conjugate=True)
    return ell.wedge(ell_bar).scale(I)


@lru_cache(maxsize=None)
def _omega0_coefficient(n: int) -> GaussianRational:
    f = wedge_all(Form.monomial(None, [j], [j], I, n=n) for j in range(1, n + 1))
    (c,) = f.terms.values()
    return c


def omega0(g: int | None, n: int | None = None) -> Form:
    """The orientation form ``(i dz_1^dzbar_1) ^ ... ^ (i dz_n^dzbar_n)``."""
    n = 2 * g if n is None else n
    full = (1 << (2 * n)) - 1
    return Form(None, {full: _omega0_coefficient(n)}, n=n)


def top_coefficient(f: Form) -> GaussianRational:
    """Complex ``c`` with ``f = c * omega0``; ``f`` must be of top degree."""
    full = (1 << (2 * f.n)) - 1
    if any(m != full for m in f.terms):
        raise ValueError("top_scalar needs a form of bidegree (n, n)")
    c = f.terms.get(full)
    if c is None:
        return GaussianRational(0)
    return c / _omega0_coefficient(f.n)


def top_scalar(f: Form) -> Fraction:
    """Rational ``c`` with ``f = c * omega0``.

    Raises ``ValueError`` for forms that are not of top degree, or whose top
    coefficient is not real (such forms are not real).
    """
    c = top_coefficient(f)
    if c.im != 0:
        raise ValueError(f"top coefficient {c} is not real")
    return c.re


CANONICAL_NAMES = ("theta1", "theta2", "lambda")


@lru_cache(maxsize=None)
def canonical_form(g: int, which: str) -> Form:
    """Coordinate expression of ``theta1``, ``theta2`` or ``lambda`` on ``C^{2g}``."""
    if g < 1:
        raise ValueError("g must be >= 1")
    out = Form(g)
    if which in ("theta1", "t1"):
        for j in range(1, g + 1):
            out = out + Form.monomial(g, [j], [j], I)
    elif which in ("theta2", "t2"):
        for j in range(g + 1, 2 * g + 1):
            out = out + Form.monomial(g, [j], [j], I)
    elif which in ("lambda", "l"):
        for j in range(1, g + 1):
            out = out + Form.monomial(g, [j], [g + j], I)
            out = out + Form.monomial(g, [g + j], [j], I)
    else:
        raise ValueError(f"unknown canonical class {which!r}")
    return out


def kk_basis(n: int, k: int) -> list[tuple[int, ...]]:
    """Lexicographic k-subsets of ``1..n``: the coordinates of ``wedge^k V``."""
    return [tuple(c) for c in combinations(range(1, n + 1), k)]


def hermitian_coefficients(f: Form, k: int) -> tuple[list[tuple[int, ...]], list[list[GaussianRational]]]:
    """Hermitian matrix ``h`` of a real (k,k)-form, ``f = i^{k^2} sum h_IJ dz_I ^ dzbar_J``.

    Rows and columns are indexed by :func:`kk_basis` in lexicographic order.
    """
    if f.bidegrees() - {(k, k)}:
        raise ValueError(f"form is not of bidegree ({k},{k})")
    labels = kk_basis(f.n, k)
    pos = {mask_of(i - 1 for i in lab): idx for idx, lab in enumerate(labels)}
    scale = i_power(-k * k)
    zero = GaussianRational(0)
    h = [[zero] * len(labels) for _ in labels]
    for m, c in f.terms.items():
        hol, anti = f.split(m)
        h[pos[hol]][pos[anti]] = c * scale
    return labels, h
