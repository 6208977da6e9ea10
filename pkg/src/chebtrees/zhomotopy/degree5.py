"""Which component of the degree-5 Zolotarev locus a polynomial lies on.

In the normal form ``p = ∫ (x^4 + a x^2 + b x + c) dx`` the locus where
``p`` has at most three critical values is ``F1 * F2 = 0``; the two factors
are the components.  Both factors are weighted homogeneous (weights 2, 3, 4
for a, b, c), so membership does not depend on the affine normalization.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from numbers import Rational
from typing import Sequence

from chebtrees.exact import FACTOR_1, FACTOR_2, MPoly
from chebtrees.polynum import CPoly

C1_ONLY, C2_ONLY, BOTH, NEITHER = "C1_only", "C2_only", "both", "neither"


def depressed_coefficients(dp: Sequence) -> tuple:
    """``(a, b, c)`` of the monic depressed form of a quartic ``p'``.

    ``dp`` lists the coefficients of ``p'`` from the constant term up.
    Exact rational input stays exact.
    """
    if len(dp) != 5 or dp[4] == 0:
        raise ValueError("p' must be a quartic")
    lead = dp[4]
    c = [x / lead for x in dp]
    h = -c[3] / 4
    # coefficients of q(x) = p'(x + h) / lead
    q = [sum(c[j] * comb(j, k) * h ** (j - k) for j in range(k, 5)) for k in range(5)]
    return q[2], q[1], q[0]


def coefficients_of(p: CPoly) -> tuple[complex, complex, complex]:
    if p.degree != 5:
        raise ValueError("need a degree-5 polynomial")
    return depressed_coefficients(list(p.deriv().c))


def _is_exact(v) -> bool:
    return isinstance(v, (Rational, Fraction))


def _vanishes(F: MPoly, abc, tol: float) -> bool:
    if all(_is_exact(v) for v in abc):
        return F(*[Fraction(v) for v in abc]) == 0
    a, b, c = (complex(v) for v in abc)
    scale = sum(abs(complex(coef)) * abs(a) ** e[0] * abs(b) ** e[1] * abs(c) ** e[2]
                for e, coef in F.terms.items())
    if scale == 0:
        return True
    return abs(complex(F(a, b, c))) <= tol * scale


def degree5_membership(abc, tol: float = 1e-8) -> str:
    """``C1_only``, ``C2_only``, ``both`` or ``neither``.

    Rational input is decided exactly; otherwise a factor counts as zero
    when its value is below ``tol`` times the sum of its term magnitudes.
    """
    on1 = _vanishes(FACTOR_1, abc, tol)
    on2 = _vanishes(FACTOR_2, abc, tol)
    if on1 and on2:
        return BOTH
    if on1:
        return C1_ONLY
    if on2:
        return C2_ONLY
    return NEITHER


def membership_of(p: CPoly, tol: float = 1e-8) -> str:
    return degree5_membership(coefficients_of(p), tol)
