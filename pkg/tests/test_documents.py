from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from abelcone import canring as cr
from abelcone.documents import DocumentError, dumps, loads, parse_monomial, parse_rational


@st.composite
def classes(draw):
    g = draw(st.integers(1, 3))
    degree = draw(st.integers(0, 2 * g))
    coeffs = {m: draw(st.fractions(min_value=-50, max_value=50, max_denominator=9)) for m in cr.basis(g, degree)}
    return cr.CanonicalClass.from_monomials(g, degree, coeffs)


@settings(max_examples=80, deadline=None)
@given(classes())
def test_round_trip(x):
    assert loads(dumps(x)) == x
    assert dumps(loads(dumps(x))) == dumps(x)


@pytest.mark.parametrize("key, exps", [
    ("t1^2", (2, 0, 0)), ("t1*l", (1, 0, 1)), ("t1^1*t2^0*l^1", (1, 0, 1)), ("l^4", (0, 0, 4)), ("1", (0, 0, 0)),
])
def test_monomial_grammar(key, exps):
    assert parse_monomial(key) == exps


@pytest.mark.parametrize("key", ["l*t1", "t1*t1", "t3", "t1^", "x", "t1**l"])
def test_bad_monomials(key):
    with pytest.raises(ValueError):
        parse_monomial(key)


def test_rationals():
    assert parse_rational("-3/4") == Fraction(-3, 4)
    for bad in ("1.5", "3/0", "3/-4", "", 3):
        with pytest.raises(ValueError):
            parse_rational(bad)


def _doc(body: str) -> str:
    return '{\n  "g": 2,\n  "degree": 2,\n  "coeffs": {' + body + "}\n}"


def test_duplicate_key_rejected_with_position():
    with pytest.raises(DocumentError) as err:
        loads(_doc('"t1*t2": "1", "t1*t2": "2"'))
    assert err.value.line == 4


def test_equivalent_monomials_rejected():
    with pytest.raises(DocumentError):
        loads(_doc('"t1*t2": "1", "t1^1*t2": "2"'))


def test_unknown_field_rejected():
    with pytest.raises(DocumentError) as err:
        loads('{"g": 2, "degree": 2, "coeffs": {}, "extra": 1}')
    assert (err.value.line, err.value.column) == (1, 37)


def test_syntax_error_position():
    with pytest.raises(DocumentError) as err:
        loads('{"g": 2,\n "degree": 2,\n "coeffs": {"t1*t2": 1,}}')
    assert err.value.line == 3


def test_wrong_degree_monomial():
    with pytest.raises(DocumentError):
        loads(_doc('"t1": "1"'))


def test_float_coefficient_rejected():
    with pytest.raises(DocumentError):
        loads(_doc('"t1*t2": 0.5'))
