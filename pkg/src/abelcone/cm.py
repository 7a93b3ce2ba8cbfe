"""Strong-cone generators on a power of a CM elliptic curve, and a class that is
semipositive (hence nef there) but not strongly positive.

Coordinates ``z_1..z_n`` are the factors of ``E^n``.  An element ``s`` of the
CM order gives the 1-form ``l = sum s_j dz_j``; ``i l ^ lbar`` is a strong
(1,1)-generator.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from itertools import combinations, permutations
from math import isqrt
from typing import Sequence

from .certificates import ConeVerdict, CounterexampleVector, Status
from .exterior import (
    GaussianRational,
    I,
    Form,
    Multivector,
    hermitian_coefficients,
    i_power,
    mask_of,
    positive_rank_one,
    top_scalar,
)
from .psd import psd_certificate


@dataclass(frozen=True)
class QuadraticNumber:
    """``a + b sqrt(D)`` with rational ``a, b`` and a fixed ``D < 0``."""

    a: Fraction
    b: Fraction
    D: int

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    def _same(self, other):
        if isinstance(other, QuadraticNumber):
            if other.D != self.D:
                raise ValueError("different quadratic fields")
            return other
        return QuadraticNumber(Fraction(other), Fraction(0), self.D)

    def __add__(self, other):
        o = self._same(other)
        return QuadraticNumber(self.a + o.a, self.b + o.b, self.D)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._same(other)
        return QuadraticNumber(self.a - o.a, self.b - o.b, self.D)

    def __neg__(self):
        return QuadraticNumber(-self.a, -self.b, self.D)

    def __mul__(self, other):
        o = self._same(other)
        return QuadraticNumber(self.a * o.a + self.D * self.b * o.b, self.a * o.b + self.b * o.a, self.D)

    __rmul__ = __mul__

    def conj(self) -> "QuadraticNumber":
        return QuadraticNumber(self.a, -self.b, self.D)

    def norm(self) -> Fraction:
        return self.a * self.a - self.D * self.b * self.b

    def __bool__(self):
        return bool(self.a or self.b)

    def __complex__(self):
        return complex(float(self.a), float(self.b) * (-self.D) ** 0.5)

    def to_gaussian(self) -> GaussianRational:
        """Exact value in ``Q(i)``; needs ``-D`` to be a perfect square."""
        m = isqrt(-self.D)
        if m * m != -self.D:
            raise ValueError(f"Q(sqrt({self.D})) is not Q(i)")
        return GaussianRational(self.a, self.b * m)

    def __str__(self):
        return f"{self.a}+{self.b}*sqrt({self.D})"


@dataclass(frozen=True)
class CmOrder:
    """``Z[w]`` with ``w = sqrt(D)``, or ``(1 + sqrt(D))/2`` when ``D = 1 mod 4``."""

    D: int = -1

    def __post_init__(self):
        if self.D >= 0:
            raise ValueError("D must be negative")

    @property
    def omega(self) -> QuadraticNumber:
        if self.D % 4 == 1:
            return QuadraticNumber(Fraction(1, 2), Fraction(1, 2), self.D)
        return QuadraticNumber(0, 1, self.D)

    def element(self, m: int, k: int = 0) -> QuadraticNumber:
        """``m + k w``."""
        return QuadraticNumber(m, 0, self.D) + self.omega * k

    def coordinates(self, x: QuadraticNumber) -> tuple[Fraction, Fraction]:
        """``(m, k)`` with ``x = m + k w``."""
        w = self.omega
        k = x.b / w.b
        return x.a - k * w.a, k

    def contains(self, x: QuadraticNumber) -> bool:
        return all(c.denominator == 1 for c in self.coordinates(x))

    def is_closed(self) -> bool:
        """``w^2`` lies in ``Z + Z w``, so the lattice is a ring."""
        return self.contains(self.omega * self.omega)

    def spans_complex_plane(self) -> bool:
        return self.omega.b != 0

    def is_gaussian(self) -> bool:
        m = isqrt(-self.D)
        return m * m == -self.D


def _coerce_order_element(order: CmOrder, s) -> QuadraticNumber:
    if isinstance(s, QuadraticNumber):
        if not order.contains(s):
            raise ValueError(f"{s} is not in the order")
        return s
    if isinstance(s, tuple):
        return order.element(*s)
    return order.element(int(s))


def strong1_hermitian(s: Sequence, order: CmOrder = CmOrder()) -> list[list[QuadraticNumber]]:
    """``h_jk = s_j conj(s_k)``: the Hermitian matrix of ``i l ^ lbar``, in any CM field."""
    vals = [_coerce_order_element(order, x) for x in s]
    if not any(vals):
        raise ValueError("all-zero coefficient vector")
    return [[x * y.conj() for y in vals] for x in vals]


def strong1_generator(s: Sequence, order: CmOrder = CmOrder()) -> Form:
    """``i l ^ lbar`` for ``l = sum s_j dz_j`` as an exact form.

    Entries of ``s`` are order elements, ``(m, k)`` pairs meaning ``m + k w``,
    or integers.  Forms need coefficients in ``Q(i)``; for other orders use
    :func:`strong1_hermitian`.
    """
    if not order.is_gaussian():
        raise ValueError("exact forms need D = -m^2; use strong1_hermitian for other orders")
    vals = [_coerce_order_element(order, x) for x in s]
    if not any(vals):
        raise ValueError("all-zero coefficient vector")
    return positive_rank_one(None, [v.to_gaussian() for v in vals])


def hermitian_rank_one(h: list[list[QuadraticNumber]]) -> bool:
    """Every 2x2 minor vanishes and the diagonal is nonnegative."""
    n = len(h)
    if any(h[j][j].b != 0 or h[j][j].a < 0 for j in range(n)):
        return False
    return all(
        not (h[i][i] * h[j][j] - h[i][j] * h[j][i]) and not (h[i][k] * h[j][l] - h[i][l] * h[j][k])
        for i in range(n) for j in range(n) for k in range(n) for l in range(n)
    )


# ---- k-vectors ----

def kvector(n: int, terms: dict) -> Multivector:
    """Element of ``wedge^k C^n`` from ``{(i1, .., ik): coeff}`` with 1-based indices."""
    out = Multivector(n)
    for idx, c in terms.items():
        out = out + Multivector.basis(n, [i - 1 for i in idx], GaussianRational.coerce(c))
    return out


def _degree(alpha: Multivector) -> int:
    degs = alpha.degrees()
    if len(degs) != 1:
        raise ValueError("k-vector must be homogeneous and nonzero")
    return degs.pop()


def _perm_sign(idx: Sequence[int]) -> int:
    if len(set(idx)) != len(idx):
        return 0
    inv = sum(1 for a in range(len(idx)) for b in range(a + 1, len(idx)) if idx[a] > idx[b])
    return -1 if inv & 1 else 1


def is_decomposable(alpha: Multivector) -> bool:
    """Plucker test: ``sum_l (-1)^l p_{I j_l} p_{J - j_l} = 0`` for all ``|I| = k-1``, ``|J| = k+1``.

    Zero counts as decomposable.
    """
    if alpha.is_zero():
        return True
    k = _degree(alpha)
    n = alpha.dim
    if k <= 1 or k >= n - 1:
        return True
    get = lambda idx: alpha.terms.get(mask_of(idx), GaussianRational(0)) * _perm_sign(idx)
    zero = GaussianRational(0)
    for I_ in combinations(range(n), k - 1):
        for J in combinations(range(n), k + 1):
            total = zero
            for l, j in enumerate(J):
                a = get(list(I_) + [j])
                if not a:
                    continue
                b = get([x for x in J if x != j])
                if b:
                    total = total + (a * b if l % 2 == 0 else -(a * b))
            if total:
                return False
    return True


def _rank(rows: list[list]) -> int:
    rows = [list(r) for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        p = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[rank], rows[p] = rows[p], rows[rank]
        piv = rows[rank][c]
        for i in range(len(rows)):
            if i != rank and rows[i][c]:
                f = rows[i][c] / piv
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def annihilator_dimension(alpha: Multivector) -> int:
    """``dim {v : v ^ alpha = 0}``; equals ``k`` exactly for nonzero decomposable ``alpha``."""
    n = alpha.dim
    images = [Multivector.basis(n, [j], GaussianRational(1)).wedge(alpha) for j in range(n)]
    keys = sorted({m for im in images for m in im.terms})
    if not keys:
        return n
    zero = GaussianRational(0)
    rows = [[im.terms.get(m, zero) for im in images] for m in keys]
    return n - _rank(rows)


def is_decomposable_by_annihilator(alpha: Multivector) -> bool:
    if alpha.is_zero():
        return True
    return annihilator_dimension(alpha) == _degree(alpha)


# ---- forms of k-vectors ----

def holomorphic_form(alpha: Multivector) -> Form:
    """``alpha`` read as a holomorphic k-form ``sum a_I dz_I`` on ``C^n``."""
    return Form(None, dict(alpha.terms), n=alpha.dim)


def positive_square(alpha: Multivector) -> Form:
    """``i^{k^2} alpha ^ conj(alpha)``; its Hermitian matrix is ``a a^*``, PSD of rank one."""
    k = _degree(alpha)
    f = holomorphic_form(alpha)
    return f.wedge(f.conj()).scale(i_power(k * k))


def form_semipositive(f: Form, k: int) -> tuple[bool, list]:
    """PSD test of the Hermitian matrix of a real (k,k)-form; returns (is_psd, e_m)."""
    _, h = hermitian_coefficients(f, k)
    ok, e, _ = psd_certificate(h)
    return ok, e


def hermitian_rank(f: Form, k: int) -> int:
    _, h = hermitian_coefficients(f, k)
    return _rank(h)


# ---- weakly positive test forms ----

def block_mu(n: int, block: Sequence[int], t) -> Form:
    """``4 theta1 theta2 + t lambda^2`` on the coordinates ``block = (p, q, r, s)`` of ``C^n``.

    ``(p, q)`` plays the first factor and ``(r, s)`` the second, with
    ``lambda`` pairing ``p <-> r`` and ``q <-> s``.  Weakly positive for
    ``|t| <= 1``.
    """
    p, q, r, s = block
    mono = lambda a, b: Form.monomial(None, [a], [b], I, n=n)
    th1 = mono(p, p) + mono(q, q)
    th2 = mono(r, r) + mono(s, s)
    lam = mono(p, r) + mono(r, p) + mono(q, s) + mono(s, q)
    return th1.wedge(th2).scale(4) + lam.wedge(lam).scale(GaussianRational.coerce(Fraction(t)))


def padding(n: int, coords: Sequence[int]) -> Form:
    """``prod_{j in coords} i dz_j ^ dzbar_j`` (strongly positive)."""
    out = Form.one(None, n=n)
    for j in coords:
        out = out.wedge(Form.monomial(None, [j], [j], I, n=n))
    return out


def witness_alpha(n: int, k: int) -> Multivector:
    """``e_1 ^ .. ^ e_{k-2} ^ (e_{k-1} ^ e_k + e_{k+1} ^ e_{k+2})`` (not decomposable)."""
    head = list(range(1, k - 1))
    return kvector(n, {tuple(head + [k - 1, k]): 1, tuple(head + [k + 1, k + 2]): 1})


@dataclass
class SeparationWitness:
    n: int
    k: int
    alpha: Multivector
    eta: Form
    phi: Form
    t: Fraction
    block: tuple[int, ...]
    pad: tuple[int, ...]
    pairing: Fraction
    eta_e: list

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "alpha": _kvector_terms(self.alpha),
            "phi": {"family": "block-mu", "t": str(self.t), "block": list(self.block), "pad": list(self.pad)},
            "eta_terms": form_terms(self.eta),
            "phi_terms": form_terms(self.phi),
            "pairing": str(self.pairing),
        }


def _kvector_terms(alpha: Multivector) -> list:
    return [[[i + 1 for i in range(alpha.dim) if m >> i & 1], str(c)] for m, c in sorted(alpha.terms.items())]


def form_terms(f: Form) -> list:
    """Serializable ``[[holo], [anti], re, im]`` list, 1-based, sorted."""
    out = []
    for m in sorted(f.terms):
        hol, anti = f.split(m)
        c = f.terms[m]
        out.append([
            [i + 1 for i in range(f.n) if hol >> i & 1],
            [j + 1 for j in range(f.n) if anti >> j & 1],
            str(c.re),
            str(c.im),
        ])
    return out


def form_from_terms(n: int, terms: list) -> Form:
    out = Form(None, n=n)
    for hol, anti, re, im in terms:
        out = out + Form.monomial(None, hol, anti, GaussianRational(Fraction(re), Fraction(im)), n=n)
    return out


def semi_not_strong_witness(n: int, k: int, t_grid: Sequence | None = None) -> ConeVerdict:
    """Find ``eta = i^{k^2} alpha ^ conj(alpha)`` and a weakly positive ``phi`` with ``eta . phi < 0``.

    ``eta`` is PSD of rank one (so semipositive, hence nef on a CM power),
    while ``alpha`` is not decomposable.  ``phi`` runs over
    ``block_mu(t) ^ padding`` with ``|t| <= 1`` and every placement of the
    four block coordinates on ``z_{k-1}..z_{k+2}``; the most negative exact
    pairing wins.  The result is deterministic.
    """
    if not 2 <= k <= n - 2:
        raise ValueError("need 2 <= k <= n - 2")
    alpha = witness_alpha(n, k)
    eta = positive_square(alpha)
    ok, e = form_semipositive(eta, k)
    if not ok:
        raise ArithmeticError("eta is not PSD")  # pragma: no cover
    grid = [Fraction(-1), Fraction(-1, 2), Fraction(0), Fraction(1, 2), Fraction(1)] if t_grid is None else [Fraction(t) for t in t_grid]
    if any(abs(t) > 1 for t in grid):
        raise ValueError("t outside [-1, 1] is not weakly positive")
    pad = tuple(range(k + 3, n + 1))
    core = (k - 1, k, k + 1, k + 2)
    best = None
    for perm in permutations(core):
        for t in grid:
            phi = block_mu(n, perm, t).wedge(padding(n, pad))
            value = top_scalar(eta.wedge(phi))
            if best is None or value < best[0]:
                best = (value, perm, t, phi)
    value, perm, t, phi = best
    if value >= 0:
        return ConeVerdict(Status.UNKNOWN, "strong", None, rule="no separating form in the search family")
    wit = SeparationWitness(n, k, alpha, eta, phi, t, tuple(perm), pad, value, e)
    return ConeVerdict(
        Status.NONMEMBER, "strong",
        CounterexampleVector("separating-form", wit.to_dict()["phi"], value),
        rule="negative pairing with a weakly positive form (dual of the strong cone)",
        extra={"witness": wit.to_dict(), "eta_psd_e": [str(x) for x in e],
               "alpha_decomposable": is_decomposable(alpha)},
    )


def build_witness(n: int, k: int) -> SeparationWitness:
    verdict = semi_not_strong_witness(n, k)
    if not verdict.is_nonmember:
        raise ValueError("no witness found")
    d = verdict.extra["witness"]
    alpha = witness_alpha(n, k)
    eta = positive_square(alpha)
    t = Fraction(d["phi"]["t"])
    phi = block_mu(n, d["phi"]["block"], t).wedge(padding(n, d["phi"]["pad"]))
    _, e = form_semipositive(eta, k)
    return SeparationWitness(n, k, alpha, eta, phi, t, tuple(d["phi"]["block"]), tuple(d["phi"]["pad"]), Fraction(d["pairing"]), e)


def load_archived_witness() -> dict:
    """The shipped ``n = 4, k = 2`` separation certificate."""
    text = resources.files("abelcone").joinpath("data/cm_witness_n4_k2.json").read_text()
    return json.loads(text)


def validate_witness(doc: dict) -> dict:
    """Re-check an archived witness from its serialized terms alone.

    Returns named checks: eta is real (k,k) and PSD, alpha is not
    decomposable, phi matches its stated family with ``|t| <= 1``, and the
    exact pairing is the stated negative number.
    """
    n, k = doc["n"], doc["k"]
    eta = form_from_terms(n, doc["eta_terms"])
    phi = form_from_terms(n, doc["phi_terms"])
    alpha = kvector(n, {tuple(idx): GaussianRational.coerce(Fraction(c)) for idx, c in doc["alpha"]})
    spec = doc["phi"]
    t = Fraction(spec["t"])
    ok_psd, _ = form_semipositive(eta, k)
    value = top_scalar(eta.wedge(phi))
    return {
        "eta is i^{k^2} alpha ^ conj(alpha)": positive_square(alpha) == eta,
        "eta is PSD": ok_psd,
        "alpha is not decomposable": not is_decomposable(alpha) and not is_decomposable_by_annihilator(alpha),
        "phi is block_mu ^ padding with |t| <= 1": abs(t) <= 1
        and phi == block_mu(n, spec["block"], t).wedge(padding(n, spec["pad"])),
        "pairing matches": value == Fraction(doc["pairing"]),
        "pairing is negative": value < 0,
    }
