import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncsylv.coeff import (BetaPoly, LaurentPoly, Q, beta_binomial, interpolate,
                          mono_div_exact)

PARAMS = [Q, (1, 2), (1, 3), (2, 3)]

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=7)


@st.composite
def laurents(draw, max_terms=4):
    n = draw(st.integers(0, max_terms))
    poly = LaurentPoly.zero()
    for _ in range(n):
        c = draw(rationals)
        term = LaurentPoly.const(c)
        for p in draw(st.sets(st.sampled_from(PARAMS), max_size=2)):
            term = term * LaurentPoly.var(p, draw(st.integers(-3, 3)))
        poly = poly + term
    return poly


def test_basic_constructors():
    assert LaurentPoly.zero().is_zero()
    assert LaurentPoly.one().is_one()
    assert LaurentPoly.const(0).is_zero()
    assert LaurentPoly.var(Q, 0).is_one()


def test_inverse_pair():
    q12 = LaurentPoly.var((1, 2))
    assert (q12 * q12.inverse()).is_one()


def test_add_cancels():
    q = LaurentPoly.var(Q)
    assert (q + LaurentPoly.one()) + LaurentPoly.const(-1) == q


def test_exponent_addition():
    # q12^-1 q13^-1 times q12^-1, the product of the two worked
    # third-degree coefficients
    a = LaurentPoly.var((1, 2), -1) * LaurentPoly.var((1, 3), -1)
    b = LaurentPoly.var((1, 2), -1)
    assert a * b == LaurentPoly.var((1, 2), -2) * LaurentPoly.var((1, 3), -1)


def test_inverse_requires_monomial():
    with pytest.raises(ValueError):
        (LaurentPoly.one() + LaurentPoly.var(Q)).inverse()


@settings(max_examples=60)
@given(laurents(), laurents(), laurents())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@settings(max_examples=60)
@given(laurents(), laurents())
def test_specialize_is_a_homomorphism(a, b):
    assignment = {Q: Fraction(2, 3), (1, 2): Fraction(5, 2),
                  (1, 3): Fraction(7, 3), (2, 3): Fraction(3, 11)}
    assert (a * b).specialize(assignment) == \
        a.specialize(assignment) * b.specialize(assignment)
    assert (a + b).specialize(assignment) == \
        a.specialize(assignment) + b.specialize(assignment)


def test_specialize_examples():
    assert LaurentPoly.var((1, 2), -2).specialize({(1, 2): 2}) == Fraction(1, 4)
    assert LaurentPoly.const(5).specialize({}) == 5
    p = LaurentPoly.var((1, 2)) * LaurentPoly.var((2, 3), -1)
    assert p.specialize({(1, 2): 3, (2, 3): 2}) == Fraction(3, 2)


def test_specialize_rejects_missing_and_zero():
    p = LaurentPoly.var(Q)
    with pytest.raises(ValueError):
        p.specialize({})
    with pytest.raises(ValueError):
        p.specialize({Q: 0})


def test_subst_merges_parameters():
    p = LaurentPoly.var((1, 2), -1) * LaurentPoly.var((1, 3), -1)
    merged = p.subst({(1, 2): LaurentPoly.var(Q), (1, 3): LaurentPoly.var(Q)})
    assert merged == LaurentPoly.var(Q, -2)


@settings(max_examples=40)
@given(laurents(), laurents())
def test_exact_division_undoes_multiplication(a, b):
    if b.is_zero():
        return
    assert mono_div_exact(a * b, b) == a


def test_str_formats():
    assert str(LaurentPoly.zero()) == "0"
    p = LaurentPoly.var((1, 2), -2) * LaurentPoly.var((1, 3), -1)
    assert str(p) == "q[1,2]^-2*q[1,3]^-1"
    assert str(LaurentPoly.var(Q, 2)) == "q^2"


# -- beta polynomials --------------------------------------------------------

def test_beta_binomial_empty_product():
    assert beta_binomial(0, 0) == BetaPoly([1])


def test_beta_binomial_l4():
    # binomial(beta+3, 4) has the expansion (b^4 + 6b^3 + 11b^2 + 6b)/24
    got = beta_binomial(4, 0)
    assert got == BetaPoly([0, Fraction(6, 24), Fraction(11, 24),
                            Fraction(6, 24), Fraction(1, 24)])


def test_beta_example_combination():
    got = beta_binomial(4, 0) + 2 * beta_binomial(4, 1)
    want = BetaPoly([0, Fraction(1, 12), Fraction(3, 8),
                     Fraction(5, 12), Fraction(1, 8)])
    assert got == want
    assert str(got) == "1/8*b^4 + 5/12*b^3 + 3/8*b^2 + 1/12*b"


def test_beta_binomial_matches_integer_binomials():
    for l in range(6):
        for d in range(l + 1):
            poly = beta_binomial(l, d)
            for k in range(7):
                top = k + l - 1 - d
                if top >= 0:
                    assert poly(k) == math.comb(top, l)
                else:
                    # upper negation for negative upper index
                    assert poly(k) == (-1) ** l * math.comb(l - top - 1, l)


def test_beta_str_edge_cases():
    assert str(BetaPoly([])) == "0"
    assert str(BetaPoly([0, 1])) == "b"
    assert str(BetaPoly([1, -1])) == "-b + 1"


def test_interpolate_round_trips():
    p = BetaPoly([Fraction(1, 2), -2, 0, 3])
    pts = [(x, p(x)) for x in range(5)]
    assert interpolate(pts) == p
