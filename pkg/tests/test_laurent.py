import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from affschur import kernels
from affschur.laurent import DivisionError, ExponentRangeError, LaurentPoly

v = LaurentPoly.v()
vi = v.bar()

polys = st.dictionaries(st.integers(-6, 6), st.integers(-5, 5), max_size=6).map(LaurentPoly)
pairs = polys.map(lambda p: (p.low, p.coeffs))

V = sympy.Symbol("v")


def to_sympy(p: LaurentPoly):
    return sum(c * V**e for e, c in p.terms().items())


def test_examples():
    assert (v + 1) * (v - 1) == v * v - 1
    assert (vi + v) + 0 == v + vi
    assert (v + vi) * (v + vi) == LaurentPoly({2: 1, 0: 2, -2: 1})
    assert v.bar() == vi
    assert (1 + v * v).bar() == 1 + vi * vi
    assert (v + vi).bar() == v + vi


def test_classification_examples():
    c = (v + vi).classify()
    assert (c.lowest_exponent, c.lowest_coeff, c.in_Z_of_v) == (-1, 1, False)
    assert (v + v * v * v).classify().in_v_N_of_v
    assert not (1 - v * v).classify().in_N_of_v
    z = LaurentPoly.zero().classify()
    assert z.is_zero and z.in_v_N_of_v


def test_str():
    assert str(v * v - 1) == "v^2 - 1"
    assert str(LaurentPoly.zero()) == "0"
    assert str(LaurentPoly.from_pairs([[-1, 2], [1, -1]])) == "-v + 2v^-1"


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a - a == 0


@given(polys, polys)
def test_bar_is_ring_involution(a, b):
    assert (a * b).bar() == a.bar() * b.bar()
    assert (a + b).bar() == a.bar() + b.bar()
    assert a.bar().bar() == a


@given(polys, polys)
def test_products_match_sympy(a, b):
    assert sympy.expand(to_sympy(a * b) - to_sympy(a) * to_sympy(b)) == 0


@given(polys, polys.filter(bool))
def test_exact_division_roundtrip(a, b):
    assert (a * b).exact_div(b) == a


def test_inexact_division_raises():
    with pytest.raises(DivisionError):
        (v + 2).exact_div(v + vi)
    with pytest.raises(ZeroDivisionError):
        v.exact_div(LaurentPoly.zero())


def test_twist_and_shift():
    assert LaurentPoly.one().twist() == vi - v
    assert (v + 1).shift(-2) == vi + vi * vi


@given(polys)
def test_pairs_roundtrip(a):
    assert LaurentPoly.from_pairs(a.to_pairs()) == a
    assert [e for e, _ in a.to_pairs()] == sorted(a.terms())


def test_exponent_limit():
    with pytest.raises(ExponentRangeError):
        LaurentPoly({1 << 31: 1})
    with pytest.raises(ExponentRangeError):
        LaurentPoly.monomial(1 << 30).shift(1)


@settings(max_examples=200)
@given(pairs, pairs)
def test_compiled_kernels_match_pure(a, b):
    pure = kernels.pure
    assert kernels.poly_add(*a, *b) == pure.poly_add(*a, *b)
    assert kernels.poly_sub(*a, *b) == pure.poly_sub(*a, *b)
    assert kernels.poly_mul(*a, *b) == pure.poly_mul(*a, *b)
    assert kernels.poly_twist(*a) == pure.poly_twist(*a)


def test_big_coefficients_stay_exact():
    big = LaurentPoly({0: 1 << 62, 1: 3})
    assert (big * big).coeff(0) == 1 << 124
    assert kernels.poly_mul(big.low, big.coeffs, big.low, big.coeffs)[1][0] == 1 << 124
