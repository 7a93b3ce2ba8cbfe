"""Exact rational feasibility for ``A w = b, w >= 0``."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def feasible_point(A: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """A nonnegative rational solution of ``A w = b``, or None if none exists.

    Phase-one simplex on the tableau ``[A | I]``.  Pricing is Dantzig's
    most-negative reduced cost; after a degenerate pivot it switches to
    Bland's rule until progress resumes, which rules out cycling.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    rows = []
    rhs = []
    for i in range(m):
        row = [Fraction(x) for x in A[i]]
        bi = Fraction(b[i])
        if bi < 0:
            row = [-x for x in row]
            bi = -bi
        row += [Fraction(int(i == j)) for j in range(m)]
        rows.append(row)
        rhs.append(bi)
    basis = [n + i for i in range(m)]
    width = n + m
    # reduced costs of the phase-one objective (sum of artificials)
    reduced = [-sum((rows[i][j] for i in range(m)), Fraction(0)) for j in range(n)] + [Fraction(0)] * m
    objective = sum(rhs, Fraction(0))
    bland = False

    while objective > 0:
        candidates = [j for j in range(width) if reduced[j] < 0]
        if not candidates:
            break
        enter = candidates[0] if bland else min(candidates, key=lambda j: (reduced[j], j))
        leave = None
        best = None
        for i in range(m):
            if rows[i][enter] > 0:
                ratio = rhs[i] / rows[i][enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            # phase one is bounded below by 0, so this cannot happen
            raise ArithmeticError("unbounded phase-one problem")
        bland = best == 0
        piv = rows[leave][enter]
        prow = [x / piv for x in rows[leave]]
        rows[leave] = prow
        rhs[leave] = rhs[leave] / piv
        nz = [j for j in range(width) if prow[j]]
        for i in range(m):
            f = rows[i][enter]
            if i != leave and f != 0:
                row = rows[i]
                for j in nz:
                    row[j] -= f * prow[j]
                rhs[i] -= f * rhs[leave]
        f = reduced[enter]
        for j in nz:
            reduced[j] -= f * prow[j]
        objective += f * rhs[leave]
        basis[leave] = enter

    if objective != 0:
        return None
    w = [Fraction(0)] * n
    for i in range(m):
        if basis[i] < n:
            w[basis[i]] = rhs[i]
    return w


def feasible_point_float_assisted(A: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """Use a floating-point LP to guess the support, then solve exactly on it.

    The exact solve is the authority: a bad float guess falls back to the
    full exact problem.
    """
    import numpy as np
    from scipy.optimize import linprog

    Af = np.array([[float(x) for x in row] for row in A])
    bf = np.array([float(x) for x in b])
    res = linprog(np.zeros(Af.shape[1]), A_eq=Af, b_eq=bf, bounds=(0, None), method="highs")
    if res.status == 0:
        support = [j for j, x in enumerate(res.x) if x > 1e-12]
        sub = [[row[j] for j in support] for row in A]
        if support:
            w_sub = feasible_point(sub, b)
            if w_sub is not None:
                w = [Fraction(0)] * len(A[0])
                for j, x in zip(support, w_sub):
                    w[j] = x
                return w
    return feasible_point(A, b)
