"""Weak positivity: restriction to every complex subspace is a nonnegative volume.

A real (k,k)-form ``x`` on ``C^n`` is weakly positive iff
``x ^ (i l_1 ^ lbar_1) ^ ... ^ (i l_m ^ lbar_m) >= 0`` for all 1-forms, where
``m = n - k``.  That product equals ``i^{m^2} L ^ Lbar`` with ``L`` the wedge
of the ``l_j``, so the pairing is a Hermitian form ``K`` evaluated on the
Pluecker vector of ``L``.  The search runs in floating point over ``K``; any
negative candidate is rounded to Gaussian rationals and re-evaluated exactly
through the exterior model before a refutation is reported.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Sequence

import numpy as np
from scipy.optimize import minimize

from .certificates import ConeVerdict, CounterexampleVector, Status
from .exterior import Form, GaussianRational, i_power, mask_of, positive_rank_one, top_coefficient, top_scalar

DEFAULT_TOL = 1e-9
_DENOMINATORS = (1, 2, 3, 4, 6, 8, 10, 16, 100, 1000, 10**4, 10**6, 10**9)


def _form_of(x) -> Form:
    return x if isinstance(x, Form) else x.to_form()


def _pure_degree(f: Form) -> int:
    bideg = f.bidegrees()
    if len(bideg) != 1:
        raise ValueError("weak positivity needs a form of pure bidegree (k,k)")
    (p, q), = bideg
    if p != q:
        raise ValueError("weak positivity needs a (k,k)-form")
    return p


def dual_kernel(f: Form) -> tuple[list[tuple[int, ...]], np.ndarray]:
    """Hermitian ``K`` with ``f ^ i^{m^2} dz_S ^ dzbar_T = K[S, T] * omega0``."""
    k = _pure_degree(f)
    n = f.n
    m = n - k
    subsets = list(combinations(range(n), m))
    pos = {mask_of(s): idx for idx, s in enumerate(subsets)}
    unit = i_power(m * m)
    full_hol = (1 << n) - 1
    K = np.zeros((len(subsets), len(subsets)), dtype=complex)
    # only the complementary monomial of each term survives the wedge
    for mask, c in f.terms.items():
        hol, anti = f.split(mask)
        s = pos[full_hol ^ hol]
        t = pos[full_hol ^ anti]
        mono = Form(None, {(full_hol ^ hol) | ((full_hol ^ anti) << n): unit}, n=n)
        val = top_coefficient(Form(None, {mask: c}, n=n).wedge(mono))
        K[s, t] += complex(val)
    return subsets, K


def weak_pairing(x, ells: Sequence[Sequence]) -> Fraction:
    """Exact ``top_scalar(x ^ prod_j i l_j ^ lbar_j)``."""
    f = _form_of(x)
    out = f
    for coeffs in ells:
        out = out.wedge(positive_rank_one(None, [GaussianRational.coerce(c) for c in coeffs]))
    return top_scalar(out)


class _Objective:
    def __init__(self, subsets, K, m, n):
        self.idx = np.array(subsets, dtype=int)
        # pairing is sum_{S,T} K[S,T] L_S conj(L_T) = L^* K^T L
        self.KT = K.T.copy()
        self.m = m
        self.n = n

    def plucker(self, params: np.ndarray) -> np.ndarray:
        P = (params[: self.m * self.n] + 1j * params[self.m * self.n :]).reshape(self.m, self.n)
        blocks = np.transpose(P[:, self.idx], (1, 0, 2))
        return np.linalg.det(blocks) if self.m > 1 else blocks[:, 0, 0]

    def __call__(self, params: np.ndarray) -> float:
        L = self.plucker(params)
        norm = float(np.vdot(L, L).real)
        if norm < 1e-300:
            return 0.0
        return float(np.vdot(L, self.KT @ L).real) / norm


def _rationalize(z: complex, den: int) -> GaussianRational:
    return GaussianRational(
        Fraction(z.real).limit_denominator(den), Fraction(z.imag).limit_denominator(den)
    )


def weak_positivity_oracle(
    x,
    g: int | None = None,
    restarts: int = 64,
    seed: int = 0,
    tol: float = DEFAULT_TOL,
) -> ConeVerdict:
    """Multi-start search for a subspace on which ``x`` restricts negatively.

    Exact negative value after rounding: NonMember with the 1-forms as
    certificate.  Minimum at least ``-tol`` over all restarts: Member, marked
    as supported (numerical evidence, not a proof).  Otherwise Unknown.
    """
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    f = _form_of(x)
    if g is not None and f.g != g:
        raise ValueError("g does not match the class")
    k = _pure_degree(f) if f.terms else 0
    n = f.n
    m = n - k
    if not f.terms or m == 0:
        value = top_scalar(f) if f.terms else Fraction(0)
        status = Status.MEMBER if value >= 0 else Status.NONMEMBER
        cert = CounterexampleVector("linear-forms", [], value) if value < 0 else None
        return ConeVerdict(status, "weak", cert, rule="top-degree sign", supported=False)

    subsets, K = dual_kernel(f)
    obj = _Objective(subsets, K, m, n)
    rng = np.random.default_rng(seed)
    best_val = np.inf
    best_params = None
    for _ in range(restarts):
        start = rng.standard_normal(2 * m * n)
        res = minimize(obj, start, method="BFGS", options={"gtol": 1e-10, "maxiter": 400})
        val = float(res.fun)
        if val < best_val:
            best_val, best_params = val, res.x
        if val < -1e-6:
            cert = _certify(f, obj, res.x, m, n)
            if cert is not None:
                return ConeVerdict(
                    Status.NONMEMBER, "weak", cert,
                    rule="restriction to a complex subspace is negative",
                    extra={"min_objective": val},
                )
    extra = {"min_objective": best_val, "restarts": restarts, "seed": seed}
    if best_val >= -tol:
        return ConeVerdict(Status.MEMBER, "weak", None, rule="multi-start minimum >= -tol", supported=True, extra=extra)
    cert = _certify(f, obj, best_params, m, n)
    if cert is not None:
        return ConeVerdict(Status.NONMEMBER, "weak", cert, rule="restriction to a complex subspace is negative", extra=extra)
    return ConeVerdict(Status.UNKNOWN, "weak", None, rule="negative float minimum not certified", extra=extra)


def _certify(f: Form, obj: _Objective, params, m: int, n: int) -> CounterexampleVector | None:
    P = (params[: m * n] + 1j * params[m * n :]).reshape(m, n)
    scale = np.max(np.abs(P), axis=1, keepdims=True)
    scale[scale == 0] = 1
    P = P / scale
    for den in _DENOMINATORS:
        ells = [[_rationalize(z, den) for z in row] for row in P]
        if any(not any(c for c in row) for row in ells):
            continue
        value = weak_pairing(f, ells)
        if value < 0:
            return CounterexampleVector("linear-forms", ells, value)
    return None
