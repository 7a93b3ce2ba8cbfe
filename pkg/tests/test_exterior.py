from fractions import Fraction
from itertools import combinations, permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from abelcone.exterior import (
    I,
    Form,
    GaussianRational,
    Multivector,
    canonical_form,
    is_real_kk,
    omega0,
    positive_rank_one,
    top_scalar,
    wedge,
    wedge_all,
)

small = st.fractions(min_value=-5, max_value=5, max_denominator=4)
gaussian = st.builds(GaussianRational, small, small)


def terms_for(g):
    n = 2 * g
    idx = st.lists(st.integers(1, n), max_size=3, unique=True)
    return st.lists(st.tuples(idx, idx, gaussian), min_size=1, max_size=6)


@st.composite
def forms(draw, g):
    out = Form(g)
    for holo, anti, c in draw(terms_for(g)):
        out = out + Form.monomial(g, holo, anti, c)
    return out


@st.composite
def triple(draw):
    g = draw(st.integers(1, 3))
    return g, draw(forms(g)), draw(forms(g)), draw(forms(g))


def _homogeneous_parts(f):
    return [Form(None, {m: c for m, c in f.terms.items() if m.bit_count() == d}, n=f.n) for d in f.degrees()]


# ---- GaussianRational ----

@given(gaussian, gaussian, gaussian)
def test_gaussian_field_laws(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert (a * b).conj() == a.conj() * b.conj()
    assert a.conj().conj() == a
    if b:
        assert (a / b) * b == a


def test_i_squared():
    assert I * I == GaussianRational(-1)


# ---- wedge ----

@settings(max_examples=60, deadline=None)
@given(triple())
def test_wedge_associative(data):
    _, f, h, k = data
    assert wedge(wedge(f, h), k) == wedge(f, wedge(h, k))


@settings(max_examples=60, deadline=None)
@given(triple())
def test_wedge_graded_commutative(data):
    _, f, h, _ = data
    for fp in _homogeneous_parts(f):
        for hp in _homogeneous_parts(h):
            (df,), (dh,) = fp.degrees() or {0}, hp.degrees() or {0}
            assert wedge(fp, hp) == wedge(hp, fp).scale((-1) ** (df * dh))


def _det(rows):
    total = Fraction(0)
    size = len(rows)
    for perm in permutations(range(size)):
        sign = 1
        for i in range(size):
            for j in range(i + 1, size):
                if perm[i] > perm[j]:
                    sign = -sign
        prod = Fraction(sign)
        for r, c in enumerate(perm):
            prod *= rows[r][c]
        total += prod
    return total


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 5).flatmap(lambda d: st.tuples(
    st.just(d), st.integers(1, d).flatmap(
        lambda k: st.lists(st.lists(small, min_size=d, max_size=d), min_size=k, max_size=k)))))
def test_wedge_of_vectors_matches_minors(data):
    """Oracle: coefficients of v1 ^ ... ^ vk are the k x k minors."""
    dim, vectors = data
    vs = [Multivector(dim, {1 << i: c for i, c in enumerate(v) if c}) for v in vectors]
    prod = vs[0]
    for v in vs[1:]:
        prod = prod.wedge(v)
    k = len(vectors)
    for cols in combinations(range(dim), k):
        minor = _det([[v[c] for c in cols] for v in vectors])
        assert Fraction(prod.coefficient(cols)) == minor


def test_repeated_covector_vanishes():
    g = 1
    assert wedge(Form.monomial(g, [1], [1]), Form.monomial(g, [1], [2])).is_zero()


def test_theta_squared_expansion():
    t1 = canonical_form(2, "theta1")
    want = Form.monomial(2, [1], [1], I).wedge(Form.monomial(2, [2], [2], I)).scale(2)
    assert wedge(t1, t1) == want


def test_lambda_fourth_power():
    lam = canonical_form(2, "lambda")
    assert wedge_all([lam] * 4) == omega0(2).scale(24)


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        wedge(Form.one(1), Form.one(2))


# ---- top_scalar ----

def test_top_scalar_of_orientation():
    for g in (1, 2, 3):
        assert top_scalar(omega0(g)) == 1


def test_printed_top_products():
    t1, t2, lam = (canonical_form(2, w) for w in ("theta1", "theta2", "lambda"))
    assert top_scalar(wedge_all([t1, t1, t2, t2])) == 4
    assert top_scalar(wedge_all([t1, t2, lam, lam])) == -4


def test_top_scalar_rejects_lower_degree():
    with pytest.raises(ValueError):
        top_scalar(canonical_form(2, "theta1"))


# ---- canonical forms ----

@pytest.mark.parametrize("g", [1, 2, 3, 4])
def test_canonical_forms_are_real_11(g):
    for which in ("theta1", "theta2", "lambda"):
        assert is_real_kk(canonical_form(g, which), 1)


def test_theta1_coordinates():
    want = Form.monomial(2, [1], [1], I) + Form.monomial(2, [2], [2], I)
    assert canonical_form(2, "theta1") == want


def test_lambda_at_g1():
    want = Form.monomial(1, [1], [2], I) + Form.monomial(1, [2], [1], I)
    assert canonical_form(1, "lambda") == want


def test_diagonal_divisor_cubed_vanishes_at_g1():
    s = canonical_form(1, "theta1") + canonical_form(1, "theta2") + canonical_form(1, "lambda")
    assert wedge_all([s, s, s]).is_zero()


@given(st.lists(gaussian, min_size=4, max_size=4))
def test_rank_one_forms_are_real(coeffs):
    assert is_real_kk(positive_rank_one(2, coeffs), 1)


def test_unsorted_entry_is_sign_normalized():
    assert Form.monomial(2, [2, 1], [1]) == Form.monomial(2, [1, 2], [1]).scale(-1)
