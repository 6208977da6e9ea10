from fractions import Fraction as F

import pytest
import sympy as sp
from hypothesis import given, strategies as st

from chebtrees.planetree import reference_tree
from chebtrees.polynum import CPoly
from chebtrees.shabat import solve_tree
from chebtrees.zhomotopy.degree5 import (BOTH, C1_ONLY, C2_ONLY, NEITHER, degree5_membership,
                                         depressed_coefficients, membership_of)

x = sp.Symbol("x")
rats = st.fractions(min_value=-4, max_value=4, max_denominator=6)


@given(st.lists(rats, min_size=4, max_size=4))
def test_depressed_coefficients_match_sympy(cs):
    dp = cs + [F(1)]
    expr = sum(sp.Rational(c.numerator, c.denominator) * x ** k for k, c in enumerate(dp))
    h = -sp.Rational(dp[3].numerator, dp[3].denominator) / 4
    shifted = sp.Poly(sp.expand(expr.subs(x, x + h)), x)
    want = tuple(shifted.coeff_monomial(x ** k) for k in (2, 1, 0))
    got = depressed_coefficients(dp)
    assert all(isinstance(v, F) for v in got)
    assert tuple(sp.Rational(v.numerator, v.denominator) for v in got) == want
    assert shifted.coeff_monomial(x ** 3) == 0


@given(rats, rats, rats)
def test_repeated_critical_point_lies_on_c2(r, s, t):
    # p' with a double root: the quartic discriminant vanishes
    dp = sp.Poly(sp.expand((x - sp.Rational(r.numerator, r.denominator)) ** 2
                           * (x - sp.Rational(s.numerator, s.denominator))
                           * (x - sp.Rational(t.numerator, t.denominator))), x)
    coeffs = [F(int(sp.numer(c)), int(sp.denom(c))) for c in reversed(dp.all_coeffs())]
    assert degree5_membership(depressed_coefficients(coeffs)) in (C2_ONLY, BOTH)


@given(st.fractions(min_value=F(1, 4), max_value=4, max_denominator=5))
def test_membership_is_weighted_homogeneous(lam):
    for abc in [(F(-1, 2), F(0), F(1, 16)), (F(-3, 4), F(0), F(1, 16))]:
        a, b, c = abc
        assert degree5_membership((lam ** 2 * a, lam ** 3 * b, lam ** 4 * c)) == degree5_membership(abc)


def test_exact_examples():
    assert degree5_membership((F(-1, 2), F(0), F(1, 16))) == C2_ONLY
    assert degree5_membership((F(-3, 4), F(0), F(1, 16))) == C1_ONLY
    assert degree5_membership(depressed_coefficients([0, 0, 0, F(-1), F(1)])) == BOTH
    assert degree5_membership((F(1), F(1), F(1))) == NEITHER


@pytest.mark.parametrize("name, want", [("n5/T1", BOTH), ("n5/T2", BOTH), ("n5/T3", C2_ONLY),
                                        ("n5/T4", BOTH), ("n5/T5", C1_ONLY)])
def test_numeric_membership_of_shabat_polynomials(name, want):
    assert membership_of(solve_tree(reference_tree(name)).poly) == want


def test_numeric_tolerance_is_relative():
    a, b, c = -0.75, 0.0, 1 / 16
    assert degree5_membership((a * 1e3, b, c * 1e6)) == C1_ONLY
    assert degree5_membership((a + 1e-3, b, c)) == NEITHER


def test_needs_quintic():
    with pytest.raises(ValueError):
        membership_of(CPoly((0, 1, 2, 3)))
    with pytest.raises(ValueError):
        depressed_coefficients([1, 2, 3])
