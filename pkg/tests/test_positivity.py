import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from abelcone import canring as cr
from abelcone import positivity as P
from abelcone.certificates import ConeVerdict, CounterexampleVector, Decomposition, Status
from abelcone.exterior import GaussianRational, positive_rank_one, top_scalar
from abelcone.unipoly import poly_nonneg
from abelcone.weak import weak_pairing, weak_positivity_oracle
from sampling import semipositive_class

F = Fraction
small = st.fractions(min_value=-5, max_value=5, max_denominator=3)
six = st.tuples(small, small, small, small, small, small)


def _gr(rows):
    return [[GaussianRational(v) for v in row] for row in rows]


# ---- Hermitian matrices ----

def test_theta1_theta2_is_diagonal():
    H = P.hermitian_matrix(cr.mul(cr.theta1(), cr.theta2()))
    assert [list(r) for r in H.entries] == _gr([[int(i == j and 0 < i < 5) for j in range(6)] for i in range(6)])


def test_theta1_squared_single_entry():
    H = P.hermitian_matrix(cr.mul(cr.theta1(), cr.theta1()))
    assert [list(r) for r in H.entries] == _gr([[2 if i == j == 0 else 0 for j in range(6)] for i in range(6)])


@settings(max_examples=40, deadline=None)
@given(six)
def test_matrix_is_hermitian_and_linear(a):
    H = P.hermitian_matrix(cr.degree2(*a)).entries
    assert all(H[j][i] == H[i][j].conj() for i in range(6) for j in range(6))
    a1, a2, a3, a4, a5, a6 = a
    closed = [
        [2 * a1, 0, a4, -a4, 0, 2 * a6],
        [0, a2 - 2 * a6, 0, 0, 0, 0],
        [a4, 0, a2, -2 * a6, 0, a5],
        [-a4, 0, -2 * a6, a2, 0, -a5],
        [0, 0, 0, 0, a2 - 2 * a6, 0],
        [2 * a6, 0, a5, -a5, 0, 2 * a3],
    ]
    assert [list(r) for r in H] == _gr(closed)


def test_matrix_needs_degree_two():
    with pytest.raises(ValueError):
        P.hermitian_matrix(cr.theta1())


def test_matrix_at_g3_has_fifteen_rows():
    assert len(P.hermitian_matrix(cr.mul(cr.theta1(3), cr.theta2(3))).entries) == 15


# ---- semipositivity ----

def test_semipositive_examples():
    assert P.is_semipositive(cr.mu_t(F(1, 2))).is_nonmember
    assert P.is_semipositive(cr.mul(cr.theta1(), cr.theta2())).is_member
    assert P.is_semipositive(cr.CanonicalClass.zero(2, 2)).is_member


def test_inequality_examples():
    assert P.semi_inequalities(cr.degree2(a3=1)).holds
    rep = P.semi_inequalities(cr.mu_t(F(1, 3)))
    assert not rep.checks["a5: a1 a3 >= a6^2"]
    rep = P.semi_inequalities(cr.degree2(a4=1))
    assert not rep.checks["a3: a1(a2+2a6) >= a4^2"]


@settings(max_examples=150, deadline=None)
@given(six)
def test_semi_agrees_with_inequalities_and_eigenvalues(a):
    x = cr.degree2(*a)
    v = P.is_semipositive(x)
    assert v.is_member == P.semi_inequalities(x).holds
    assert P.validate(x, v)
    eig = np.linalg.eigvalsh(np.array([[complex(e) for e in row] for row in P.hermitian_matrix(x).entries]))
    if eig.min() < -1e-9:
        assert v.is_nonmember
    elif eig.min() > 1e-9:
        assert v.is_member


# ---- pairing with boundary divisors ----

def test_pairing_examples():
    for t in (F(-1), F(0), F(3, 2)):
        x = cr.mu_t(t)
        assert P.pair_with_divisors(x, 1, 1) == 4 + 4 * t
        assert P.pair_with_divisors(x, 1, -1) == 12 - 8 * t
    assert P.pair_with_divisors(cr.degree2(a1=1), F(7, 3), -2) == 1


@settings(max_examples=100, deadline=None)
@given(six, small, small)
def test_pairing_equals_sextic(a, s, t):
    x = cr.degree2(*a)
    assert P.pair_with_divisors(x, s, t) == P.divisor_sextic(x, s, t)
    raw = cr.intersect(x, cr.theta_ab(s, 1), cr.theta_ab(t, 1))
    assert raw == 4 * P.divisor_sextic(x, s, t)


@settings(max_examples=60, deadline=None)
@given(six, small, small)
def test_nef_quadratic_form(a, s, t):
    x = cr.degree2(*a)
    A, B, C, _ = P.nef_polynomials(x)
    assert A(t) * s * s + B(t) * s + C(t) == P.divisor_sextic(x, s, t)


# ---- nef ----

@pytest.mark.parametrize("t, member", [
    (F(3, 2), True), (F(151, 100), False), (F(-1), True), (F(-101, 100), False),
])
def test_nef_range(t, member):
    x = cr.mu_t(t)
    v = P.is_nef_canonical(x)
    assert v.is_member == member
    assert P.validate(x, v)


def test_nef_witness_near_one_minus_one():
    a, b = P.is_nef_canonical(cr.mu_t(F(151, 100))).certificate.vector
    assert abs(a - 1) < F(1, 10) and b == -1


def test_theta1_theta2_nef():
    assert P.is_nef_canonical(cr.mul(cr.theta1(), cr.theta2())).is_member


def test_boundary_quartic_nonnegative():
    _, _, _, Q = P.nef_polynomials(cr.mu_t(F(3, 2)))
    assert poly_nonneg(Q)[0]
    bs = [F(k, 50) for k in range(-500, 501)]
    assert min(Q(b) for b in bs) >= 0


@settings(max_examples=80, deadline=None)
@given(six)
def test_nef_against_pairing_grid(a):
    """Oracle: sampled pairings never refute a Member; NonMember witnesses are exact."""
    x = cr.degree2(*a)
    v = P.is_nef_canonical(x)
    if v.is_member:
        pts = [F(k, 2) for k in range(-8, 9)]
        assert all(P.divisor_sextic(x, s, t) >= 0 for s in pts for t in pts)
    else:
        assert v.certificate.value < 0
        assert P.validate(x, v)


# ---- weak ----

def test_weak_refutes_outside_unit_interval():
    x = cr.mu_t(F(11, 10))
    v = weak_positivity_oracle(x, restarts=16, seed=3)
    assert v.is_nonmember and v.certificate.value < 0
    assert weak_pairing(x, v.certificate.vector) == v.certificate.value


def test_weak_explicit_subspace():
    l1, l2 = [1, 0, -1, 0], [0, 1, 0, 1]
    assert weak_pairing(cr.mu_t(F(11, 10)), [l1, l2]) == F(-4, 5)
    assert weak_pairing(cr.mu_t(F(1)), [l1, l2]) == 0


def test_weak_supports_nef_factor():
    v = weak_positivity_oracle(cr.degree2(2, 0, 2, 0, 0, -1), restarts=16, seed=0)
    assert v.is_member and v.supported


def test_weak_is_deterministic():
    x = cr.mu_t(F(1, 2))
    a = weak_positivity_oracle(x, restarts=4, seed=11).extra["min_objective"]
    b = weak_positivity_oracle(x, restarts=4, seed=11).extra["min_objective"]
    assert a == b


def test_weak_rejects_zero_restarts():
    with pytest.raises(ValueError):
        weak_positivity_oracle(cr.mu(), restarts=0)


def test_duality_with_strong_generators():
    """top(s ^ w) >= 0 for products of two rank-one positive forms and weak members."""
    rng = random.Random(4)
    weak_members = [cr.mu_t(t).to_form() for t in (F(-1), F(-1, 2), F(0), F(1, 2), F(1))]
    for _ in range(5):
        x = semipositive_class(rng)
        assert weak_positivity_oracle(x, restarts=8, seed=1).is_member
        weak_members.append(x.to_form())
    count = 0
    while count < 1000:
        coeffs = [[GaussianRational(rng.randint(-3, 3), rng.randint(-3, 3)) for _ in range(4)] for _ in range(2)]
        s = positive_rank_one(2, coeffs[0]).wedge(positive_rank_one(2, coeffs[1]))
        for w in weak_members:
            assert top_scalar(s.wedge(w)) >= 0
            count += 1


# ---- Sym^2 decomposition ----

def test_theta1_theta2_on_small_grid():
    x = cr.mul(cr.theta1(), cr.theta2())
    v = P.decompose_sym2(x, grid=[-1, 0, 1])
    assert v.is_member and P.validate(x, v)
    assert P.expand_decomposition(v.certificate, 2) == x


def test_single_generator():
    x = cr.mul(cr.theta_ab(2, 1), cr.theta_ab(-3, 1))
    v = P.decompose_sym2(x)
    assert v.is_member and P.validate(x, v)


def test_mu_not_in_sym2():
    v = P.decompose_sym2(cr.mu())
    assert v.is_nonmember and P.validate(cr.mu(), v)


def test_empty_grid():
    with pytest.raises(ValueError):
        P.decompose_sym2(cr.mul(cr.theta1(), cr.theta2()), grid=[])


def test_float_mode_certificate_is_exact():
    x = cr.degree2(3, 5, 2, 1, -1, F(1, 2))
    v = P.decompose_sym2(x, lp_mode="float")
    assert v.is_member and P.validate(x, v)


def test_boundary_divisor_products_are_semipositive():
    for a in (F(-2), F(0), F(1, 3), P.INFINITY):
        for b in (F(-1), F(5, 2), P.INFINITY):
            x = cr.mul(P.boundary_divisor(a), P.boundary_divisor(b))
            assert P.is_semipositive(x).is_member


# ---- divisor and curve cones ----

def test_divisor_cone():
    assert P.psef_divisor_test(cr.theta1()).is_member
    assert P.psef_divisor_test(cr.theta1() + cr.theta2() - cr.lam() * 2).is_nonmember
    v = P.psef_divisor_test(cr.theta_ab(F(2, 3), F(-5, 2)))
    assert v.is_member and v.extra["boundary"]


def test_curve_cone():
    assert P.psef_curve_test(cr.mul(cr.mu(), cr.theta1())).is_member
    t1 = cr.theta1()
    assert P.psef_curve_test(cr.mul(cr.mul(t1, t1), cr.theta2())).is_member
    assert P.psef_curve_test(cr.mul(cr.mu(), cr.lam())).is_nonmember


def test_curve_cone_degree_check():
    with pytest.raises(ValueError):
        P.psef_curve_test(cr.mul(cr.theta1(), cr.theta2()))


def test_curve_cone_at_g3():
    m2 = cr.mul(cr.mu(3), cr.mu(3))
    assert P.psef_curve_test(cr.mul(m2, cr.theta1(3))).is_member
    assert P.psef_curve_test(cr.mul(m2, cr.lam(3))).is_nonmember


# ---- general g ----

def test_general_g_examples():
    x3 = cr.mul(cr.theta1(3), cr.theta2(3))
    v3 = P.general_g_semi_decomposition(x3)
    assert v3.is_member
    v2 = P.decompose_sym2(cr.mul(cr.theta1(), cr.theta2()))
    assert P.expand_decomposition(v2.certificate, 3) == x3
    assert P.general_g_semi_decomposition(cr.mu(3)).is_nonmember


@settings(max_examples=25, deadline=None)
@given(six)
def test_general_g_agrees_with_semipositive(a):
    x = cr.degree2(*a)
    assert P.general_g_semi_decomposition(x).status is P.is_semipositive(x).status


# ---- certificate re-validation ----

def test_tampered_certificates_fail():
    x = cr.mul(cr.theta1(), cr.theta2())
    good = P.decompose_sym2(x, grid=[-1, 0, 1])
    w, gen = good.certificate.terms[0]
    bad = ConeVerdict(Status.MEMBER, "sym2", Decomposition([(w * 2, gen)] + good.certificate.terms[1:]))
    assert not P.validate(x, bad)
    neg = P.is_semipositive(cr.mu())
    wrong = ConeVerdict(Status.NONMEMBER, "semi",
                        CounterexampleVector("hermitian", neg.certificate.vector, neg.certificate.value - 1))
    assert not P.validate(cr.mu(), wrong)
