"""The canonical subring generated by theta1, theta2, lambda on A x A.

Classes are stored in a monomial basis ``theta1^i theta2^j lambda^k``.  All
products are computed in the exterior model (:mod:`abelcone.exterior`) and
re-extracted in the basis, so the ring structure is never assumed, only
observed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Mapping

from .exterior import Form, canonical_form, i_power, top_scalar

Monomial = tuple[int, int, int]

MAX_G = 4


def monomials(r: int) -> list[Monomial]:
    """Degree-r monomials ordered by lambda-degree, then decreasing theta1-degree.

    For ``r = 2`` this is ``theta1^2, theta1 theta2, theta2^2, theta1 lambda,
    theta2 lambda, lambda^2``.
    """
    out = []
    for k in range(r + 1):
        for i in range(r - k, -1, -1):
            out.append((i, r - k - i, k))
    return out


def expected_dimension(g: int, r: int) -> int:
    """``dim N^r_can`` from the decomposition into ``mu^i * Sym^{2r-4i} W``."""
    if not 0 <= r <= 2 * g:
        return 0
    s = min(r, 2 * g - r)
    return sum(2 * s - 4 * i + 1 for i in range(s // 2 + 1))


def _rational(c) -> Fraction:
    if c.im != 0:
        raise ArithmeticError("expected a real coefficient")
    return c.re


class _Model:
    """Per-g cache of monomial forms, bases and extraction data."""

    def __init__(self, g: int):
        self.g = g
        self.gens = [canonical_form(g, w) for w in ("theta1", "theta2", "lambda")]
        self._powers: dict[tuple[int, int], Form] = {}
        self._forms: dict[Monomial, Form] = {}
        self._bases: dict[int, tuple] = {}
        self._reduced: dict[Monomial, dict[Monomial, Fraction]] = {}

    def power(self, which: int, e: int) -> Form:
        key = (which, e)
        if key not in self._powers:
            if e == 0:
                self._powers[key] = Form.one(self.g)
            else:
                self._powers[key] = self.power(which, e - 1).wedge(self.gens[which])
        return self._powers[key]

    def form(self, m: Monomial) -> Form:
        if m not in self._forms:
            i, j, k = m
            self._forms[m] = self.power(0, i).wedge(self.power(1, j)).wedge(self.power(2, k))
        return self._forms[m]

    def _vector(self, f: Form, r: int) -> dict[int, Fraction]:
        # degree-r canonical forms have coefficients in i^r * Q
        unit = _I_POWERS[r % 4]
        return {m: _rational(c * unit) for m, c in f.terms.items()}

    def basis(self, r: int):
        """(basis monomials, pivot masks, inverse of the pivot block)."""
        if r in self._bases:
            return self._bases[r]
        chosen: list[Monomial] = []
        rows: list[dict[int, Fraction]] = []
        echelon: list[tuple[int, dict[int, Fraction]]] = []
        for m in monomials(r):
            vec = self._vector(self.form(m), r)
            red = dict(vec)
            for piv, row in echelon:
                c = red.get(piv)
                if c:
                    for key, val in row.items():
                        red[key] = red.get(key, 0) - c * val
                    red = {key: val for key, val in red.items() if val}
            if red:
                piv = min(red)
                inv = 1 / red[piv]
                row = {key: val * inv for key, val in red.items()}
                # keep the echelon reduced on existing pivots
                echelon = [
                    (p, _axpy(rw, -rw.get(piv, 0), row)) if rw.get(piv) else (p, rw)
                    for p, rw in echelon
                ]
                echelon.append((piv, row))
                chosen.append(m)
                rows.append(vec)
        pivots = [p for p, _ in echelon]
        block = [[row.get(p, Fraction(0)) for p in pivots] for row in rows]
        data = (tuple(chosen), tuple(pivots), _inverse(block), tuple(rows))
        self._bases[r] = data
        return data

    def extract(self, f: Form, r: int, check: bool = True) -> dict[Monomial, Fraction]:
        """Coordinates of a degree-r form in the monomial basis."""
        chosen, pivots, inv, rows = self.basis(r)
        vec = self._vector(f, r)
        rhs = [vec.get(p, Fraction(0)) for p in pivots]
        coeffs = [sum((rhs[a] * inv[a][b] for a in range(len(pivots))), Fraction(0)) for b in range(len(chosen))]
        if check:
            recon: dict[int, Fraction] = {}
            for c, row in zip(coeffs, rows):
                if c:
                    for key, val in row.items():
                        recon[key] = recon.get(key, 0) + c * val
            recon = {key: val for key, val in recon.items() if val}
            if recon != vec:
                raise ValueError("form is not in the canonical subspace")
        return {m: c for m, c in zip(chosen, coeffs) if c}

    def reduce(self, m: Monomial) -> dict[Monomial, Fraction]:
        if m not in self._reduced:
            r = sum(m)
            if r > 2 * self.g:
                self._reduced[m] = {}
            else:
                self._reduced[m] = self.extract(self.form(m), r, check=True)
        return self._reduced[m]


# multiplying by i^{-r} makes the coefficients of a degree-r canonical form rational
_I_POWERS = [i_power(-r) for r in range(4)]


def _axpy(y: dict, a, x: dict) -> dict:
    out = dict(y)
    for key, val in x.items():
        out[key] = out.get(key, 0) + a * val
    return {key: val for key, val in out.items() if val}


def _inverse(mat: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(mat)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(mat)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


@lru_cache(maxsize=None)
def model(g: int) -> _Model:
    if not 1 <= g <= MAX_G:
        raise ValueError(f"g must be in 1..{MAX_G}")
    return _Model(g)


def basis(g: int, r: int) -> tuple[Monomial, ...]:
    if not 0 <= r <= 2 * g:
        raise ValueError(f"degree {r} outside 0..{2 * g}")
    return model(g).basis(r)[0]


@dataclass(frozen=True, eq=False)
class CanonicalClass:
    """A class in ``N^r_can(A x A)``, coordinates over :func:`basis`.

    ``overflow`` marks a product whose degree exceeds ``2g``; such a class is
    zero.
    """

    g: int
    degree: int
    coeffs: Mapping[Monomial, Fraction] = field(default_factory=dict)
    overflow: bool = False

    @classmethod
    def from_monomials(cls, g: int, degree: int, coeffs: Mapping[Monomial, object]) -> "CanonicalClass":
        """Build a class from arbitrary monomials, reducing into the basis."""
        out: dict[Monomial, Fraction] = {}
        for m, c in coeffs.items():
            m = tuple(int(e) for e in m)
            if len(m) != 3 or min(m) < 0 or sum(m) != degree:
                raise ValueError(f"monomial {m} does not have degree {degree}")
            c = Fraction(c)
            if not c:
                continue
            for b, v in model(g).reduce(m).items():
                out[b] = out.get(b, 0) + c * v
        return cls(g, degree, {b: v for b, v in out.items() if v})

    @classmethod
    def zero(cls, g: int, degree: int) -> "CanonicalClass":
        return cls(g, degree, {})

    def __post_init__(self):
        if not self.overflow:
            if not 0 <= self.degree <= 2 * self.g:
                raise ValueError(f"degree {self.degree} outside 0..{2 * self.g}")
            allowed = set(basis(self.g, self.degree))
            bad = set(self.coeffs) - allowed
            if bad:
                raise ValueError(f"monomials {sorted(bad)} are not basis monomials; use from_monomials")
        object.__setattr__(self, "coeffs", {m: Fraction(c) for m, c in self.coeffs.items() if c})

    def _compatible(self, other: "CanonicalClass"):
        if self.g != other.g:
            raise ValueError("classes live on different A x A (g mismatch)")

    def __add__(self, other):
        if not isinstance(other, CanonicalClass):
            return NotImplemented
        self._compatible(other)
        if self.degree != other.degree:
            raise ValueError("cannot add classes of different degree")
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = out.get(m, 0) + c
        return CanonicalClass(self.g, self.degree, out, self.overflow)

    def __neg__(self):
        return CanonicalClass(self.g, self.degree, {m: -c for m, c in self.coeffs.items()}, self.overflow)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, CanonicalClass):
            return mul(self, other)
        if isinstance(other, (int, Fraction)):
            return CanonicalClass(self.g, self.degree, {m: c * other for m, c in self.coeffs.items()}, self.overflow)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, k: int):
        out = one(self.g)
        for _ in range(k):
            out = mul(out, self)
        return out

    def __eq__(self, other):
        if not isinstance(other, CanonicalClass):
            return NotImplemented
        return (self.g, self.degree, dict(self.coeffs)) == (other.g, other.degree, dict(other.coeffs))

    def __hash__(self):
        return hash((self.g, self.degree, frozenset(self.coeffs.items())))

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, m: Monomial) -> Fraction:
        return self.coeffs.get(m, Fraction(0))

    def vector(self) -> list[Fraction]:
        """Coordinates in basis order."""
        return [self.coefficient(m) for m in basis(self.g, self.degree)]

    @property
    def scalar(self) -> Fraction:
        """Degree-``2g`` class as a multiple of the orientation class."""
        if self.overflow:
            return Fraction(0)
        if self.degree != 2 * self.g:
            raise ValueError("only top-degree classes have a scalar value")
        return sum(
            (c * top_scalar(model(self.g).form(m)) for m, c in self.coeffs.items()),
            Fraction(0),
        )

    def to_form(self) -> Form:
        out = Form(self.g)
        for m, c in self.coeffs.items():
            out = out + model(self.g).form(m).scale(c)
        return out

    def __repr__(self):
        if not self.coeffs:
            return f"CanonicalClass(g={self.g}, degree={self.degree}, 0)"
        return f"CanonicalClass(g={self.g}, degree={self.degree}, {format_class(self)})"


def format_monomial(m: Monomial) -> str:
    parts = []
    for name, e in zip(("t1", "t2", "l"), m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) or "1"


def format_class(x: CanonicalClass) -> str:
    terms = [f"{c}*{format_monomial(m)}" for m, c in x.coeffs.items()]
    return " + ".join(terms) or "0"


def from_form(f: Form, degree: int) -> CanonicalClass:
    """Re-extract a canonical class from its form (raises if not canonical)."""
    return CanonicalClass(f.g, degree, model(f.g).extract(f, degree, check=True))


def mul(x: CanonicalClass, y: CanonicalClass) -> CanonicalClass:
    """Exact product; a product beyond top degree is the zero class flagged ``overflow``."""
    x._compatible(y)
    g = x.g
    r = x.degree + y.degree
    if r > 2 * g or x.overflow or y.overflow:
        return CanonicalClass(g, r, {}, overflow=True)
    out: dict[Monomial, Fraction] = {}
    m_ = model(g)
    for mx, cx in x.coeffs.items():
        for my, cy in y.coeffs.items():
            prod = (mx[0] + my[0], mx[1] + my[1], mx[2] + my[2])
            for b, v in m_.reduce(prod).items():
                out[b] = out.get(b, 0) + cx * cy * v
    return CanonicalClass(g, r, out)


def intersect(*classes: CanonicalClass) -> Fraction:
    """Product of classes of total degree ``2g`` as a rational number."""
    out = classes[0]
    for c in classes[1:]:
        out = mul(out, c)
    if out.overflow:
        return Fraction(0)
    return out.scalar


def monomial_class(g: int, m: Monomial, coeff=1) -> CanonicalClass:
    return CanonicalClass.from_monomials(g, sum(m), {m: coeff})


def one(g: int) -> CanonicalClass:
    return CanonicalClass(g, 0, {(0, 0, 0): Fraction(1)})


def theta1(g: int = 2) -> CanonicalClass:
    return CanonicalClass(g, 1, {(1, 0, 0): Fraction(1)})


def theta2(g: int = 2) -> CanonicalClass:
    return CanonicalClass(g, 1, {(0, 1, 0): Fraction(1)})


def lam(g: int = 2) -> CanonicalClass:
    return CanonicalClass(g, 1, {(0, 0, 1): Fraction(1)})


def divisor(a1, a2, a3, g: int = 2) -> CanonicalClass:
    """``a1 theta1 + a2 theta2 + a3 lambda``."""
    return CanonicalClass(g, 1, {(1, 0, 0): a1, (0, 1, 0): a2, (0, 0, 1): a3})


def theta_ab(a, b, g: int = 2) -> CanonicalClass:
    """``a^2 theta1 + b^2 theta2 + ab lambda``, the image of theta1 under ``[[a, b], [., .]]``."""
    a, b = Fraction(a), Fraction(b)
    return divisor(a * a, b * b, a * b, g)


def mu(g: int = 2) -> CanonicalClass:
    """``4 theta1 theta2 - lambda^2``."""
    return mu_t(-1, g)


def mu_t(t, g: int = 2) -> CanonicalClass:
    """``4 theta1 theta2 + t lambda^2``."""
    return CanonicalClass.from_monomials(g, 2, {(1, 1, 0): 4, (0, 0, 2): Fraction(t)})


def degree2(a1=0, a2=0, a3=0, a4=0, a5=0, a6=0, g: int = 2) -> CanonicalClass:
    """``a1 t1^2 + a2 t1 t2 + a3 t2^2 + a4 t1 l + a5 t2 l + a6 l^2``."""
    coeffs = dict(zip(monomials(2), (a1, a2, a3, a4, a5, a6)))
    return CanonicalClass.from_monomials(g, 2, coeffs)


def six_coordinates(x: CanonicalClass) -> tuple[Fraction, ...]:
    """``(a1, ..., a6)`` of a degree-2 class in the order of :func:`degree2`."""
    if x.degree != 2:
        raise ValueError("expected a degree-2 class")
    return tuple(x.coefficient(m) for m in monomials(2))


@dataclass(frozen=True)
class GL2Matrix:
    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    @classmethod
    def identity(cls) -> "GL2Matrix":
        return cls(1, 0, 0, 1)

    def det(self) -> Fraction:
        return self.a * self.d - self.b * self.c

    def __matmul__(self, other: "GL2Matrix") -> "GL2Matrix":
        return GL2Matrix(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def divisor_matrix(self) -> list[list[Fraction]]:
        """3x3 matrix of the pullback on ``(theta1, theta2, lambda)``; column j = image of generator j."""
        a, b, c, d = self.a, self.b, self.c, self.d
        return [
            [a * a, c * c, 2 * a * c],
            [b * b, d * d, 2 * b * d],
            [a * b, c * d, a * d + b * c],
        ]


def _poly_mul(p: dict, q: dict) -> dict:
    out: dict = {}
    for mp, cp in p.items():
        for mq, cq in q.items():
            key = (mp[0] + mq[0], mp[1] + mq[1], mp[2] + mq[2])
            out[key] = out.get(key, 0) + cp * cq
    return {k: v for k, v in out.items() if v}


def gl2_act(M: GL2Matrix, x: CanonicalClass) -> CanonicalClass:
    """Pullback ``u_M^*``, acting factorwise on monomials (a ring homomorphism)."""
    cols = M.divisor_matrix()
    images = [
        {(1, 0, 0): cols[0][j], (0, 1, 0): cols[1][j], (0, 0, 1): cols[2][j]} for j in range(3)
    ]
    images = [{k: v for k, v in im.items() if v} for im in images]
    out: dict[Monomial, Fraction] = {}
    for m, c in x.coeffs.items():
        poly: dict = {(0, 0, 0): Fraction(1)}
        for gen, e in enumerate(m):
            for _ in range(e):
                poly = _poly_mul(poly, images[gen])
        for mono, v in poly.items():
            out[mono] = out.get(mono, 0) + c * v
    return CanonicalClass.from_monomials(x.g, x.degree, out)


def pairing_matrix(g: int, r: int) -> list[list[Fraction]]:
    """Intersection numbers between the degree-r and degree-(2g-r) bases."""
    return [
        [intersect(monomial_class(g, p), monomial_class(g, q)) for q in basis(g, 2 * g - r)]
        for p in basis(g, r)
    ]


def rank(mat: list[list[Fraction]]) -> int:
    rows = [list(r) for r in mat]
    rk = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((i for i in range(rk, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[rk], rows[piv] = rows[piv], rows[rk]
        for i in range(len(rows)):
            if i != rk and rows[i][col] != 0:
                f = rows[i][col] / rows[rk][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rk])]
        rk += 1
    return rk


@dataclass
class RelationCheck:
    name: str
    passed: bool
    detail: str = ""


def verify_relations(g: int, samples: int = 10, seed: int = 0) -> list[RelationCheck]:
    """Exact checks of the defining relations of the canonical ring for ``1 <= g <= 4``."""
    if not 1 <= g <= MAX_G:
        raise ValueError(f"g must be in 1..{MAX_G}")
    m_ = model(g)
    t1, t2, l = m_.gens
    checks: list[RelationCheck] = []

    def vanishes(name, f):
        checks.append(RelationCheck(name, f.is_zero(), "zero form" if f.is_zero() else f"{len(f.terms)} terms"))

    vanishes(f"t1^{g + 1} = 0", m_.form((g + 1, 0, 0)))
    vanishes(f"t2^{g + 1} = 0", m_.form((0, g + 1, 0)))
    vanishes(f"t1^{g}*l = 0", m_.form((g, 0, 1)))
    vanishes(f"t2^{g}*l = 0", m_.form((0, g, 1)))

    if g == 2:
        vanishes("t1*t2^2 + t2*l^2 = 0", m_.form((1, 2, 0)) + m_.form((0, 1, 2)))
        vanishes("t1^2*t2 + t1*l^2 = 0", m_.form((2, 1, 0)) + m_.form((1, 0, 2)))
        vanishes("6*t1*t2*l + l^3 = 0", m_.form((1, 1, 1)).scale(6) + m_.form((0, 0, 3)))

    rng = random.Random(seed)
    for _ in range(samples):
        a = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
        b = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
        f = t1.scale(a * a) + t2.scale(b * b) + l.scale(a * b)
        vanishes(f"(a^2 t1 + b^2 t2 + ab l)^{g + 1} = 0 at a={a}, b={b}", f.power(g + 1))

    if g >= 1:
        mu_g = mu(g)
        mpow = one(g)
        for _ in range(g - 1):
            mpow = mul(mpow, mu_g)
        pieces = {
            "mu^(g-1)*t1^2": monomial_class(g, (2, 0, 0)),
            "mu^(g-1)*t2^2": monomial_class(g, (0, 2, 0)),
            "mu^(g-1)*t1*l": monomial_class(g, (1, 0, 1)),
            "mu^(g-1)*t2*l": monomial_class(g, (0, 1, 1)),
            "mu^(g-1)*(l^2+2*t1*t2)": CanonicalClass.from_monomials(g, 2, {(0, 0, 2): 1, (1, 1, 0): 2}),
        } if g >= 2 else {}
        for name, cls_ in pieces.items():
            val = intersect(mpow, cls_)
            checks.append(RelationCheck(f"{name} = 0", val == 0, f"value {val}"))

    top = top_scalar(m_.form((0, 0, 2 * g)))
    expected = (-1) ** g * factorial(2 * g)
    checks.append(RelationCheck(f"l^{2 * g} = {expected}", top == expected, f"value {top}"))

    for r in range(2 * g + 1):
        got = len(basis(g, r))
        want = expected_dimension(g, r)
        checks.append(RelationCheck(f"dim N^{r}_can = {want}", got == want, f"basis size {got}"))
    return checks
