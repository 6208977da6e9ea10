import random
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, strategies as st

from chebtrees.exact import (FACTOR_1, FACTOR_2, IdentityFails, MPoly, build_s_polynomial, discriminant_y,
                             quartic_discriminant, verify_degree5_factorization)

A, B, C, X, Y = sp.symbols("a b c x y")


def to_sympy(p: MPoly) -> sp.Expr:
    return sp.Add(*[sp.Rational(v.numerator, v.denominator) * A ** i * B ** j * C ** k
                    for (i, j, k), v in p.terms.items()])


small = st.fractions(min_value=-3, max_value=3, max_denominator=5)
mpolys = st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3)),
                         st.fractions(min_value=-9, max_value=9, max_denominator=4),
                         max_size=5).map(MPoly)


@given(mpolys, mpolys)
def test_ring_operations_match_sympy(p, q):
    assert sp.expand(to_sympy(p * q) - to_sympy(p) * to_sympy(q)) == 0
    assert sp.expand(to_sympy(p - q) - (to_sympy(p) - to_sympy(q))) == 0
    assert sp.expand(to_sympy(p ** 2) - to_sympy(p) ** 2) == 0


@given(mpolys)
def test_str_parses_back(p):
    assert MPoly.parse(str(p)) == p


@given(mpolys, small, small, small)
def test_evaluation_is_exact(p, a, b, c):
    want = to_sympy(p).subs({A: sp.Rational(a.numerator, a.denominator),
                             B: sp.Rational(b.numerator, b.denominator),
                             C: sp.Rational(c.numerator, c.denominator)})
    assert p(a, b, c) == Fraction(int(sp.numer(want)), int(sp.denom(want)))


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        MPoly.parse("3ax^2")


def test_quartic_discriminant_matches_sympy():
    want = sp.discriminant(X ** 4 + A * X ** 2 + B * X + C, X)
    assert sp.expand(to_sympy(quartic_discriminant()) - want) == 0
    assert quartic_discriminant() == FACTOR_2


def _s_at(a, b, c):
    """s(y) = resultant_x(q(x), y - p(x)) for q = x^4 + a x^2 + b x + c, p its antiderivative."""
    q = X ** 4 + a * X ** 2 + b * X + c
    p = sp.integrate(q, (X, 0, X))
    return sp.Poly(sp.resultant(q, Y - p, X), Y)


@pytest.mark.parametrize("seed", range(4))
def test_s_polynomial_matches_resultant(seed):
    rng = random.Random(seed)
    a, b, c = (sp.Rational(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(3))
    s = build_s_polynomial()
    ref = _s_at(a, b, c)
    fa, fb, fc = (Fraction(int(sp.numer(v)), int(sp.denom(v))) for v in (a, b, c))
    for k in range(5):
        want = ref.coeff_monomial(Y ** k)
        got = s.coefficients[k](fa, fb, fc)
        assert sp.Rational(got.numerator, got.denominator) == want


@pytest.mark.parametrize("seed", range(4))
def test_discriminant_identity_at_rational_points(seed):
    r = verify_degree5_factorization()
    rng = random.Random(100 + seed)
    a, b, c = (sp.Rational(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(3))
    disc = sp.discriminant(_s_at(a, b, c).as_expr(), Y)
    f1 = to_sympy(FACTOR_1).subs({A: a, B: b, C: c})
    f2 = to_sympy(FACTOR_2).subs({A: a, B: b, C: c})
    k = sp.Rational(r["constant"].numerator, r["constant"].denominator)
    assert disc == k * f1 ** r["e1"] * f2 ** r["e2"]


def test_factorization_exponents():
    r = verify_degree5_factorization()
    assert (r["e1"], r["e2"]) == (2, 3)
    assert 12 * (r["e1"] + r["e2"]) == 60


def test_factors_are_weighted_homogeneous_and_irreducible():
    assert FACTOR_1.is_weighted_homogeneous(12)
    assert FACTOR_2.is_weighted_homogeneous(12)
    for F in (FACTOR_1, FACTOR_2):
        _, factors = sp.factor_list(to_sympy(F))
        assert len(factors) == 1 and factors[0][1] == 1


def test_identity_failure_gives_witness():
    disc = discriminant_y(build_s_polynomial())
    with pytest.raises(IdentityFails):
        verify_degree5_factorization(disc * MPoly.var("a") ** 12 + disc)
