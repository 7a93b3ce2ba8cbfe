"""Exact positive-semidefiniteness for Hermitian matrices over Q(i)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .exterior import GaussianRational

Matrix = list[list[Fraction]]


def charpoly(A: Sequence[Sequence]) -> list:
    """Coefficients ``[1, c1, ..., cn]`` of ``det(tI - A)`` (descending powers).

    Berkowitz's algorithm: division free, so it works verbatim over any
    commutative ring of exact numbers.
    """
    n = len(A)
    if n == 0:
        return [Fraction(1)]
    one = A[0][0] * 0 + 1
    zero = one * 0
    poly = [one, -A[0][0]]
    for k in range(1, n):
        R = [A[k][j] for j in range(k)]
        S = [A[i][k] for i in range(k)]
        a = A[k][k]
        # T = (1, -a, -R S, -R M S, ..., -R M^{k-1} S)
        col = [one, -a]
        vec = S
        for _ in range(k):
            col.append(-sum((R[j] * vec[j] for j in range(k)), zero))
            vec = [sum((A[i][j] * vec[j] for j in range(k)), zero) for i in range(k)]
        poly = [
            sum((col[i - j] * poly[j] for j in range(min(i, k) + 1) if i - j < len(col)), zero)
            for i in range(k + 2)
        ]
    return poly


def elementary_symmetric(A: Sequence[Sequence]) -> list:
    """``e_1..e_n`` of the eigenvalues: ``det(tI - A) = sum (-1)^m e_m t^(n-m)``."""
    c = charpoly(A)
    return [c[m] if m % 2 == 0 else -c[m] for m in range(1, len(c))]


def is_real(H: Sequence[Sequence[GaussianRational]]) -> bool:
    return all(x.im == 0 for row in H for x in row)


def is_hermitian(H: Sequence[Sequence[GaussianRational]]) -> bool:
    n = len(H)
    return all(H[j][i] == H[i][j].conj() for i in range(n) for j in range(i, n))


def real_embedding(H: Sequence[Sequence[GaussianRational]]) -> Matrix:
    """``[[A, -B], [B, A]]`` for ``H = A + iB``; PSD iff ``H`` is."""
    n = len(H)
    out = [[Fraction(0)] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        for j in range(n):
            a, b = H[i][j].re, H[i][j].im
            out[i][j] = a
            out[n + i][n + j] = a
            out[i][n + j] = -b
            out[n + i][j] = b
    return out


def as_real(H: Sequence[Sequence[GaussianRational]]) -> Matrix:
    return [[x.re for x in row] for row in H]


def negative_direction(A: Matrix) -> list[Fraction] | None:
    """A rational ``v`` with ``v^T A v < 0`` for a real symmetric ``A``, or None if PSD.

    Symmetric elimination keeps ``T A T^T`` as the working matrix, so a
    negative diagonal entry at row ``i`` means row ``i`` of ``T`` works.
    """
    n = len(A)
    W = [list(row) for row in A]
    T = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    active = list(range(n))
    while active:
        neg = next((i for i in active if W[i][i] < 0), None)
        if neg is not None:
            return T[neg]
        pos = next((i for i in active if W[i][i] > 0), None)
        if pos is None:
            for i in active:
                for j in active:
                    if i != j and W[i][j] != 0:
                        s = 1 if W[i][j] > 0 else -1
                        return [x - s * y for x, y in zip(T[i], T[j])]
            return None
        p = W[pos][pos]
        for j in active:
            if j == pos or W[j][pos] == 0:
                continue
            f = W[j][pos] / p
            W[j] = [x - f * y for x, y in zip(W[j], W[pos])]
            for r in range(n):
                W[r][j] -= f * W[r][pos]
            T[j] = [x - f * y for x, y in zip(T[j], T[pos])]
        active.remove(pos)
    return None


def quadratic_value(H: Sequence[Sequence[GaussianRational]], v: Sequence[GaussianRational]) -> Fraction:
    """``v^* H v`` for Hermitian ``H`` (always real)."""
    n = len(H)
    total = GaussianRational(0)
    for i in range(n):
        if not v[i]:
            continue
        row = GaussianRational(0)
        for j in range(n):
            if v[j] and H[i][j]:
                row = row + H[i][j] * v[j]
        total = total + v[i].conj() * row
    if total.im != 0:
        raise ArithmeticError("non-real Hermitian value; matrix is not Hermitian")
    return total.re


def hermitian_negative_vector(H: Sequence[Sequence[GaussianRational]]) -> list[GaussianRational] | None:
    """Gaussian-rational ``w`` with ``w^* H w < 0``, or None if ``H`` is PSD."""
    n = len(H)
    if is_real(H):
        v = negative_direction(as_real(H))
        return None if v is None else [GaussianRational(x) for x in v]
    v = negative_direction(real_embedding(H))
    if v is None:
        return None
    return [GaussianRational(v[i], v[n + i]) for i in range(n)]


def psd_certificate(H: Sequence[Sequence[GaussianRational]]) -> tuple[bool, list[Fraction], str]:
    """Return (is_psd, e_m list, matrix used).  PSD iff every ``e_m >= 0``."""
    if is_real(H):
        e = elementary_symmetric(as_real(H))
        which = "real"
    else:
        e = elementary_symmetric(real_embedding(H))
        which = "real-embedding"
    return all(x >= 0 for x in e), e, which
