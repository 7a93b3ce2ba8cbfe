"""Poincare duality, the Fourier transform ``d`` and the Pontryagin product.

Cohomology of an abelian variety of dimension ``n`` is the exterior algebra
on ``e_1..e_{2n}`` (here 0-based, ``e_0..e_{2n-1}``) with rational
coefficients.  Poincare duality sends ``e_I`` to ``sign * e_{I^c}`` with the
sign chosen so that ``e_I ^ PD(e_I)`` is the top monomial.  The Fourier
transform is ``d = PD`` read in ``H(B^)`` through the identity identification
of bases, and the Pontryagin product is the cup product transported back:
``x * y = d^-1(d x ^ d y)``.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .exterior import Multivector, bits_of, merge_sign

MAX_N = 4


class CohClass(Multivector):
    """Rational class on an abelian variety of dimension ``n``."""

    __slots__ = ("n",)

    def __init__(self, n: int, terms: dict | None = None):
        if not 1 <= n <= MAX_N:
            raise ValueError(f"n must be in 1..{MAX_N}")
        super().__init__(2 * n, {m: Fraction(c) for m, c in (terms or {}).items()})
        self.n = n

    def _like(self, terms):
        return CohClass(self.n, terms)

    @classmethod
    def one(cls, n: int) -> "CohClass":
        return cls(n, {0: Fraction(1)})

    @classmethod
    def top(cls, n: int) -> "CohClass":
        """The top monomial ``e_1 ^ ... ^ e_{2n}``: the class of a point, the Pontryagin unit."""
        return cls(n, {(1 << (2 * n)) - 1: Fraction(1)})

    @classmethod
    def monomial(cls, n: int, indices, coeff=1) -> "CohClass":
        base = Multivector.basis(2 * n, indices, Fraction(coeff))
        return cls(n, base.terms)

    @classmethod
    def two_form(cls, n: int, coeffs: dict) -> "CohClass":
        """``sum c_ij e_i ^ e_j`` from ``{(i, j): c}`` with 0-based indices."""
        out = cls(n)
        for (i, j), c in coeffs.items():
            out = out + cls.monomial(n, (i, j), c)
        return out

    def scalar(self) -> Fraction:
        """Coefficient of ``1`` (degree-0 part)."""
        return self.terms.get(0, Fraction(0))

    def top_coefficient(self) -> Fraction:
        return self.terms.get((1 << (2 * self.n)) - 1, Fraction(0))

    def __repr__(self):
        return f"CohClass(n={self.n}, {super().__repr__()})"


def _full(n: int) -> int:
    return (1 << (2 * n)) - 1


def _pd_sign(mask: int, full: int) -> int:
    return merge_sign(mask, full ^ mask)


def poincare_dual(x: CohClass) -> CohClass:
    """``e_I -> sign(I, I^c) e_{I^c}``, so that ``e_I ^ PD(e_I) = top``."""
    full = _full(x.n)
    return CohClass(x.n, {full ^ m: c * _pd_sign(m, full) for m, c in x.terms.items()})


def inverse_poincare_dual(x: CohClass) -> CohClass:
    full = _full(x.n)
    # PD(e_{J^c}) = sign(J^c, J) e_J
    return CohClass(x.n, {full ^ m: c * _pd_sign(full ^ m, full) for m, c in x.terms.items()})


def fourier_d(x: CohClass) -> CohClass:
    """``H^{2n-l}(B) -> H^l(B^)`` with ``H_1(B) = H^1(B^)`` identified by the identity matrix."""
    return poincare_dual(x)


def inverse_fourier_d(x: CohClass) -> CohClass:
    return inverse_poincare_dual(x)


def pontryagin(x: CohClass, y: CohClass) -> CohClass:
    """``x * y = d^-1(d x ^ d y)``; degrees add minus ``2n``."""
    if x.n != y.n:
        raise ValueError("dimension mismatch")
    return inverse_fourier_d(fourier_d(x).wedge(fourier_d(y)))


def pontryagin_power(x: CohClass, k: int) -> CohClass:
    """``x^{*k}``; ``x^{*0}`` is the point class."""
    if k < 0:
        raise ValueError("k must be >= 0")
    out = CohClass.top(x.n)
    for _ in range(k):
        out = pontryagin(out, x)
    return out


def fourier_matrix(n: int, degree: int) -> list[list[int]]:
    """Matrix of ``d`` from ``H^degree`` to ``H^{2n-degree}`` in the monomial bases."""
    full = _full(n)
    src = [m for m in range(full + 1) if bin(m).count("1") == degree]
    dst = [m for m in range(full + 1) if bin(m).count("1") == 2 * n - degree]
    pos = {m: i for i, m in enumerate(dst)}
    mat = [[0] * len(src) for _ in dst]
    for j, m in enumerate(src):
        image = fourier_d(CohClass(n, {m: Fraction(1)}))
        for mm, c in image.terms.items():
            mat[pos[mm]][j] = c
    return mat


def _degree_of(x: CohClass) -> int:
    degs = x.degrees()
    if len(degs) > 1:
        raise ValueError("class is not homogeneous")
    return degs.pop() if degs else 0


def _top_degree_value(x: CohClass) -> Fraction:
    # alpha^n / n! as a number: its coefficient on the top monomial
    return x.top_coefficient()


def prodform_sides(n: int, k: int, alpha: CohClass) -> tuple[CohClass, CohClass]:
    """Both sides of ``(a^{n-1})^{*(n-k)} = (n-k)! (n-1)!^{n-k} deg^{n-k-1} a^k / k!``.

    ``deg`` is the top coefficient of ``a^n / n!``.  For ``k = n`` the
    exponent of ``deg`` is ``-1`` and ``deg`` must be nonzero.
    """
    _check_prodform_args(n, k, alpha)
    lhs = pontryagin_power(alpha.power(n - 1), n - k)
    deg = _top_degree_value(alpha.power(n)) / factorial(n)
    exp = n - k - 1
    if exp < 0 and deg == 0:
        raise ValueError("degenerate class: alpha^n = 0")
    const = Fraction(factorial(n - k) * factorial(n - 1) ** (n - k), factorial(k)) * deg ** exp
    return lhs, alpha.power(k) * const


def dual_prodform_sides(n: int, k: int, beta: CohClass) -> tuple[CohClass, CohClass]:
    """``(b^{*(n-1)})^{n-k} = (n-k)! (n-1)!^{n-k} s^{n-k-1} b^{*k} / k!`` with ``s`` the scalar of ``b^{*n}/n!``."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    if beta.n != n or _degree_of(beta) != 2 * n - 2:
        raise ValueError("beta must be a curve class (degree 2n-2)")
    lhs = pontryagin_power(beta, n - 1).power(n - k)
    s = pontryagin_power(beta, n).scalar() / factorial(n)
    exp = n - k - 1
    if exp < 0 and s == 0:
        raise ValueError("degenerate class: beta^{*n} = 0")
    const = Fraction(factorial(n - k) * factorial(n - 1) ** (n - k), factorial(k)) * s ** exp
    return lhs, pontryagin_power(beta, k) * const


def _check_prodform_args(n, k, alpha):
    if not 0 <= k <= n <= MAX_N:
        raise ValueError(f"need 0 <= k <= n <= {MAX_N}")
    if alpha.n != n or (alpha.terms and _degree_of(alpha) != 2):
        raise ValueError("alpha must be a degree-2 class on the same n")


def check_prodform(n: int, k: int, alpha: CohClass) -> bool:
    """Exact check of the product formula for ``alpha`` and its dual for ``beta = alpha^{n-1}``."""
    lhs, rhs = prodform_sides(n, k, alpha)
    if lhs != rhs:
        return False
    lhs_b, rhs_b = dual_prodform_sides(n, k, alpha.power(n - 1))
    return lhs_b == rhs_b


def kahler_type(n: int, weights) -> CohClass:
    """``sum_j w_j e_{2j} ^ e_{2j+1}``: the real form of ``sum_j w_j (i/2) dz_j ^ dzbar_j``.

    Real coordinates are paired as ``(x_j, y_j) = (e_{2j}, e_{2j+1})`` so the
    complex orientation is the top monomial.
    """
    if len(weights) != n:
        raise ValueError("need n weights")
    return CohClass.two_form(n, {(2 * j, 2 * j + 1): Fraction(w) for j, w in enumerate(weights)})


def kahler_weights(x: CohClass) -> list[Fraction] | None:
    """Weights if ``x`` is of Kahler type, else None."""
    n = x.n
    w = [Fraction(0)] * n
    for m, c in x.terms.items():
        idx = bits_of(m)
        if len(idx) != 2 or idx[0] % 2 or idx[1] != idx[0] + 1:
            return None
        w[idx[0] // 2] = c
    return w
