"""Exact PSD, Sturm and simplex engines against floating-point oracles."""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from scipy.optimize import linprog

from abelcone.exterior import GaussianRational
from abelcone.psd import (
    charpoly,
    elementary_symmetric,
    hermitian_negative_vector,
    psd_certificate,
    quadratic_value,
)
from abelcone.simplex import feasible_point, feasible_point_float_assisted
from abelcone.unipoly import UniPoly, check_transcript, count_real_roots, poly_nonneg

small_int = st.integers(-4, 4)
small = st.fractions(min_value=-4, max_value=4, max_denominator=3)


# ---- PSD ----

@st.composite
def hermitian(draw, complex_entries=True):
    n = draw(st.integers(1, 5))
    rank = draw(st.integers(0, n))
    # sum of `rank` rank-one terms, optionally minus one more: PSD and non-PSD both likely
    H = [[GaussianRational(0)] * n for _ in range(n)]
    vectors = [[GaussianRational(draw(small_int), draw(small_int) if complex_entries else 0) for _ in range(n)]
               for _ in range(rank)]
    sign = draw(st.sampled_from([1, 1, -1]))
    extra = [GaussianRational(draw(small_int), 0) for _ in range(n)]
    for v in vectors:
        for i in range(n):
            for j in range(n):
                H[i][j] = H[i][j] + v[i] * v[j].conj()
    if sign < 0:
        for i in range(n):
            for j in range(n):
                H[i][j] = H[i][j] - extra[i] * extra[j]
    return H


def _numpy(H):
    return np.array([[complex(x) for x in row] for row in H])


@settings(max_examples=150, deadline=None)
@given(hermitian())
def test_psd_matches_eigenvalues(H):
    ok, e, _ = psd_certificate(H)
    eig = np.linalg.eigvalsh(_numpy(H))
    scale = max(1.0, float(np.abs(eig).max()))
    if eig.min() < -1e-9 * scale:
        assert not ok
    else:
        # eigenvalues of exactly singular PSD matrices may round slightly negative
        assert ok, (e, eig)


@settings(max_examples=150, deadline=None)
@given(hermitian())
def test_negative_vector_iff_not_psd(H):
    ok, _, _ = psd_certificate(H)
    v = hermitian_negative_vector(H)
    assert (v is None) == ok
    if v is not None:
        assert quadratic_value(H, v) < 0


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_charpoly_matches_numpy(A):
    ours = [float(c) for c in charpoly(A)]
    ref = np.poly(np.array([[float(x) for x in row] for row in A]))
    assert np.allclose(ours, ref, atol=1e-6 * max(1.0, float(np.abs(ref).max())))


def test_elementary_symmetric_of_diagonal():
    A = [[Fraction(2), 0, 0], [0, Fraction(3), 0], [0, 0, Fraction(5)]]
    assert elementary_symmetric(A) == [10, 31, 30]


def test_singular_psd_needs_all_coefficients():
    # leading principal minors are all zero here, yet the matrix is not PSD
    H = [[GaussianRational(0), GaussianRational(0)], [GaussianRational(0), GaussianRational(-1)]]
    ok, e, _ = psd_certificate(H)
    assert not ok


# ---- Sturm ----

polys = st.lists(small, min_size=1, max_size=6).map(UniPoly)


@settings(max_examples=200, deadline=None)
@given(polys)
def test_root_count_matches_numpy(p):
    assume(not p.is_zero() and p.degree >= 1)
    roots = np.roots([float(c) for c in reversed(p.coeffs)])
    real = sorted(r.real for r in roots if abs(r.imag) < 1e-7)
    distinct = [r for i, r in enumerate(real) if i == 0 or abs(r - real[i - 1]) > 1e-4]
    # near-double roots are where floats are unreliable; skip those
    assume(all(abs(r.imag) > 1e-3 or abs(r.imag) < 1e-9 for r in roots))
    assume(all(abs(a - b) > 1e-3 for a, b in zip(distinct, distinct[1:])))
    assert count_real_roots(p) == len(distinct)


@settings(max_examples=200, deadline=None)
@given(polys)
def test_nonneg_against_dense_grid(p):
    ok, witness, transcript = poly_nonneg(p)
    assert check_transcript(p, transcript)
    if ok:
        xs = [Fraction(k, 20) for k in range(-400, 401)]
        assert all(p(x) >= 0 for x in xs)
    else:
        assert witness is not None and p(witness) < 0


@pytest.mark.parametrize("coeffs, expected", [([1, 0, 1], True), ([-1, 0, 1], False), ([0], True), ([-1], False)])
def test_nonneg_examples(coeffs, expected):
    ok, witness, _ = poly_nonneg(UniPoly(coeffs))
    assert ok == expected
    if coeffs == [-1, 0, 1]:
        assert witness is not None and UniPoly(coeffs)(witness) < 0


def test_double_irrational_roots():
    q = UniPoly([-2, 0, 1])  # roots +-sqrt(2)
    assert poly_nonneg(q * q)[0]
    assert not poly_nonneg(q * q - UniPoly([Fraction(1, 10**12)]))[0]


# ---- simplex ----

@st.composite
def lp_instance(draw):
    m = draw(st.integers(1, 4))
    n = draw(st.integers(1, 7))
    A = [[Fraction(draw(small_int)) for _ in range(n)] for _ in range(m)]
    if draw(st.booleans()):
        w = [Fraction(draw(st.integers(0, 3))) for _ in range(n)]
        b = [sum(a * x for a, x in zip(row, w)) for row in A]
    else:
        b = [Fraction(draw(small_int)) for _ in range(m)]
    return A, b


def _scipy_feasible(A, b) -> bool:
    res = linprog(np.zeros(len(A[0])), A_eq=np.array(A, dtype=float), b_eq=np.array(b, dtype=float),
                  bounds=(0, None), method="highs")
    return res.status == 0


@settings(max_examples=200, deadline=None)
@given(lp_instance())
def test_simplex_matches_scipy(inst):
    A, b = inst
    w = feasible_point(A, b)
    if w is not None:
        assert all(x >= 0 for x in w)
        assert [sum(a * x for a, x in zip(row, w)) for row in A] == list(b)
    assert (w is not None) == _scipy_feasible(A, b)


@settings(max_examples=80, deadline=None)
@given(lp_instance())
def test_float_assisted_agrees_with_exact(inst):
    A, b = inst
    exact = feasible_point(A, b)
    assisted = feasible_point_float_assisted(A, b)
    assert (exact is None) == (assisted is None)
    if assisted is not None:
        assert [sum(a * x for a, x in zip(row, assisted)) for row in A] == list(b)


def test_degenerate_instance():
    A = [[1, -1, 0, 0], [0, 1, -1, 0], [0, 0, 1, -1]]
    b = [0, 0, 0]
    assert feasible_point(A, b) == [0, 0, 0, 0]
