"""Exact rational polynomials in a, b, c for the degree-5 discriminant identity.

``p = ∫ (x^4 + a x^2 + b x + c) dx``.  The values of ``p`` at the four roots
of the integrand are the roots of a quartic ``s(y)`` whose coefficients are
polynomials in a, b, c; its discriminant vanishes exactly on the locus of
polynomials with fewer than four distinct critical values.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping, Sequence

VARS = ("a", "b", "c")


class IdentityFails(ArithmeticError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True, eq=False)
class MPoly:
    """Sparse polynomial in a, b, c with rational coefficients."""

    terms: Mapping[tuple[int, int, int], Fraction]

    def __post_init__(self):
        clean = {}
        for e, v in self.terms.items():
            v = _frac(v)
            if v:
                if len(e) != 3 or min(e) < 0:
                    raise ValueError("bad exponent %r" % (e,))
                clean[tuple(e)] = v
        object.__setattr__(self, "terms", clean)

    @classmethod
    def const(cls, v) -> "MPoly":
        return cls({(0, 0, 0): _frac(v)})

    @classmethod
    def var(cls, name: str) -> "MPoly":
        e = [0, 0, 0]
        e[VARS.index(name)] = 1
        return cls({tuple(e): Fraction(1)})

    @classmethod
    def parse(cls, text: str) -> "MPoly":
        """Read ``16a^4c-4a^3b^2+...`` or ``16*a^4*c - ...``."""
        s = text.replace(" ", "").replace("*", "")
        if not s:
            return cls({})
        if s[0] not in "+-":
            s = "+" + s
        out: dict = {}
        for sign, body in re.findall(r"([+-])([^+-]+)", s):
            m = re.match(r"(\d+(?:/\d+)?)?(.*)$", body)
            coef = Fraction(m.group(1)) if m.group(1) else Fraction(1)
            e = [0, 0, 0]
            rest = m.group(2)
            for var, exp in re.findall(r"([abc])(?:\^(\d+))?", rest):
                e[VARS.index(var)] += int(exp) if exp else 1
            if re.sub(r"[abc](\^\d+)?", "", rest):
                raise ValueError("cannot parse term %r" % body)
            key = tuple(e)
            out[key] = out.get(key, Fraction(0)) + (coef if sign == "+" else -coef)
        return cls(out)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, MPoly):
            other = MPoly.const(other)
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        if not isinstance(other, MPoly):
            other = MPoly.const(other)
        out = dict(self.terms)
        for e, v in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + v
        return MPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly({e: -v for e, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, MPoly) else MPoly.const(-_frac(other)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            k = _frac(other)
            return MPoly({e: v * k for e, v in self.terms.items()})
        out: dict = {}
        for e1, v1 in self.terms.items():
            for e2, v2 in other.terms.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                out[e] = out.get(e, Fraction(0)) + v1 * v2
        return MPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, k):
        k = _frac(k)
        return MPoly({e: v / k for e, v in self.terms.items()})

    def __pow__(self, k: int):
        result, base = MPoly.const(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __call__(self, a, b, c):
        """Evaluate; Fractions stay exact, floats and complex go numeric."""
        total = 0
        for (i, j, k), v in self.terms.items():
            coef = v if all(isinstance(x, (int, Fraction)) for x in (a, b, c)) else float(v)
            total += coef * a ** i * b ** j * c ** k
        return total

    def weights(self, w: Sequence[int] = (2, 3, 4)) -> set[int]:
        return {sum(x * y for x, y in zip(e, w)) for e in self.terms}

    def is_weighted_homogeneous(self, weight: int, w: Sequence[int] = (2, 3, 4)) -> bool:
        return self.weights(w) <= {weight}

    def sorted_terms(self):
        """Terms in deglex order, highest first."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def leading(self):
        return self.sorted_terms()[0]

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, v in self.sorted_terms():
            mono = "*".join("%s^%d" % (x, k) if k > 1 else x for x, k in zip(VARS, e) if k)
            coef = str(abs(v))
            body = coef if not mono else (mono if abs(v) == 1 else coef + "*" + mono)
            parts.append(("-" if v < 0 else "+") + body)
        text = "".join(parts)
        return text[1:] if text[0] == "+" else text

    __repr__ = __str__


# Polynomials in an outer variable are plain lists of MPoly, ascending.

def _upoly_mul(f: Sequence[MPoly], g: Sequence[MPoly]) -> list[MPoly]:
    out = [MPoly({}) for _ in range(len(f) + len(g) - 1)]
    for i, x in enumerate(f):
        if x.is_zero():
            continue
        for j, y in enumerate(g):
            out[i + j] = out[i + j] + x * y
    return out


@dataclass(frozen=True)
class UPolyOverM:
    coefficients: tuple[MPoly, ...]

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, y, a, b, c):
        return sum(co(a, b, c) * y ** k for k, co in enumerate(self.coefficients))


def _integrand_power_sums(upto: int) -> list[MPoly]:
    """Power sums of the roots of x^4 + a x^2 + b x + c."""
    a, b, c = MPoly.var("a"), MPoly.var("b"), MPoly.var("c")
    e = [MPoly.const(1), MPoly.const(0), a, -b, c]
    s = [MPoly.const(4)]
    for k in range(1, upto + 1):
        acc = MPoly({})
        for i in range(1, min(k, 4) + 1):
            term = e[i] * (s[k - i] if i < k else MPoly.const(k))
            acc = acc + term if i % 2 else acc - term
        s.append(acc)
    return s


def antiderivative() -> list[MPoly]:
    """Coefficients in x of p = x^5/5 + a x^3/3 + b x^2/2 + c x."""
    a, b, c = MPoly.var("a"), MPoly.var("b"), MPoly.var("c")
    zero = MPoly({})
    return [zero, c, b / 2, a / 3, zero, MPoly.const(Fraction(1, 5))]


def build_s_polynomial() -> UPolyOverM:
    """s(y) = prod (y - p(x_i)) over the roots x_i of the integrand."""
    p = antiderivative()
    s = _integrand_power_sums(20)
    power = [MPoly.const(1)]
    sums = [MPoly.const(4)]
    for _ in range(4):
        power = _upoly_mul(power, p)
        sums.append(sum((co * s[j] for j, co in enumerate(power) if not co.is_zero()), MPoly({})))
    # Newton's identities: power sums -> elementary symmetric functions
    el = [MPoly.const(1)]
    for k in range(1, 5):
        acc = MPoly({})
        for i in range(1, k + 1):
            term = el[k - i] * sums[i]
            acc = acc + term if i % 2 else acc - term
        el.append(acc / k)
    coeffs = [el[4], -el[3], el[2], -el[1], el[0]]
    return UPolyOverM(tuple(coeffs))


def quartic_discriminant_of(c0, c1, c2, c3, c4):
    """Discriminant of c4 y^4 + c3 y^3 + c2 y^2 + c1 y + c0, any ring."""
    a, b, c, d, e = c4, c3, c2, c1, c0
    return (256 * a**3 * e**3 - 192 * a**2 * b * d * e**2 - 128 * a**2 * c**2 * e**2
            + 144 * a**2 * c * d**2 * e - 27 * a**2 * d**4 + 144 * a * b**2 * c * e**2
            - 6 * a * b**2 * d**2 * e - 80 * a * b * c**2 * d * e + 18 * a * b * c * d**3
            + 16 * a * c**4 * e - 4 * a * c**3 * d**2 - 27 * b**4 * e**2 + 18 * b**3 * c * d * e
            - 4 * b**3 * d**3 - 4 * b**2 * c**3 * e + b**2 * c**2 * d**2)


def discriminant_y(s: UPolyOverM) -> MPoly:
    if s.degree != 4:
        raise ValueError("expected a quartic in y")
    return quartic_discriminant_of(*s.coefficients)


def quartic_discriminant() -> MPoly:
    """disc(x^4 + a x^2 + b x + c)."""
    a, b, c = MPoly.var("a"), MPoly.var("b"), MPoly.var("c")
    return quartic_discriminant_of(c, b, a, MPoly({}), MPoly.const(1))


FACTOR_1 = MPoly.parse("1280a^6-32256a^4c+9504a^3b^2+269568a^2c^2-69984ab^2c-19683b^4-746496c^3")
FACTOR_2 = MPoly.parse("16a^4c-4a^3b^2-128a^2c^2+144ab^2c-27b^4+256c^3")


def _grid(n: int = 6) -> Iterable[tuple[int, int, int]]:
    vals = range(-2, 4)
    return list(product(vals, vals, vals))[:: max(1, 216 // (n * 8))]


def verify_degree5_factorization(disc: MPoly | None = None) -> dict:
    """Find ``constant, e1, e2`` with disc = constant * F1^e1 * F2^e2 exactly.

    Weighted homogeneity (weights 2, 3, 4 for a, b, c) forces
    ``12 (e1 + e2) = 60``.  Raises :class:`IdentityFails` with a witness
    point when no choice works.
    """
    if disc is None:
        disc = discriminant_y(build_s_polynomial())
    weights = disc.weights()
    if len(weights) != 1:
        raise IdentityFails("discriminant is not weighted-homogeneous")
    total = weights.pop() // 12
    witness = None
    for e1 in range(1, total):
        e2 = total - e1
        rhs = FACTOR_1 ** e1 * FACTOR_2 ** e2
        lead_e, lead_v = disc.leading()
        if lead_e not in rhs.terms:
            continue
        constant = lead_v / rhs.terms[lead_e]
        if rhs * constant == disc:
            return {"constant": constant, "e1": e1, "e2": e2}
        for pt in _grid():
            lhs, r = disc(*pt), constant * rhs(*pt)
            if lhs != r:
                witness = {"point": pt, "lhs": lhs, "rhs": r, "e1": e1, "e2": e2}
                break
    raise IdentityFails("no relation disc = const * F1^e1 * F2^e2", witness)
