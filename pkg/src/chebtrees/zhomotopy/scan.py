"""Parameter values where a one-parameter family becomes Chebyshev.

The critical points of ``p`` are the integrand roots, so after the
dependent parameters are replaced by their closed forms every critical
value is a rational function of the driving parameter.  A degeneration
happens where two critical values meet or two critical points collide;
each such equation is factored over the rationals and solved, and the
candidates that really have two critical values are kept.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterable, Sequence

import sympy as sp

from chebtrees.planetree import CanonicalCode, PlaneTree, canonical_code, identify
from chebtrees.polynum import DEFAULT_TOL, classify
from chebtrees.zhomotopy.families import X, FamilySpec, SingularConstraint, solver


class UnsupportedFamily(ValueError):
    pass


@dataclass(frozen=True)
class Degeneration:
    value: complex
    exact: sp.Expr | None
    params: dict
    tree: PlaneTree
    code: CanonicalCode
    name: str | None = None


def _roots_of(factor: sp.Expr, var: sp.Symbol, digits: int = 30) -> list[tuple[complex, sp.Expr | None]]:
    poly = sp.Poly(factor, var)
    if poly.degree() < 1:
        return []
    if poly.degree() <= 2:
        return [(complex(sp.N(r, digits)), sp.simplify(r)) for r in sp.roots(poly, multiple=True)]
    return [(complex(r), None) for r in sp.Poly(poly, var).nroots(n=digits, maxsteps=200)]


def candidate_equations(f: FamilySpec, driving: str) -> list[sp.Expr]:
    """Numerators of the pairwise value-coincidence and point-collision equations."""
    sv = solver(f, (driving,))
    if sv.dependent and sv.closed is None:
        raise UnsupportedFamily("scan needs dependent parameters in closed form")
    var = f.symbols[driving]
    subs = {f.symbols[k]: v for k, v in (sv.closed or {}).items()}
    pts = [sp.together(sp.sympify(e).subs(subs)) for e, _ in f.critical_exprs()]
    p = f.p_expr.subs(subs)
    vals = [sp.together(p.subs(X, z)) for z in pts]
    eqs = []
    for i, j in combinations(range(len(pts)), 2):
        for expr in (vals[i] - vals[j], pts[i] - pts[j]):
            num = sp.numer(sp.together(sp.expand(expr)))
            num = sp.expand(num)
            if num != 0 and num.free_symbols:
                eqs.append(num)
    return [sp.Poly(e, var).as_expr() for e in eqs]


def degeneration_scan(f: FamilySpec, driving: str = "a", *,
                      region: Callable[[complex], bool] | None = None,
                      names: Sequence[str] | None = None, tol: float = DEFAULT_TOL,
                      dedupe: float = 1e-9) -> list[Degeneration]:
    """All driving values in ``region`` where ``f`` is a Chebyshev polynomial."""
    from chebtrees.pullback import extract_tree
    var = f.symbols[driving]
    candidates: list[tuple[complex, sp.Expr | None]] = []
    for eq in candidate_equations(f, driving):
        _, factors = sp.factor_list(eq, var)
        for fac, _ in factors:
            for z, exact in _roots_of(fac, var):
                if region is not None and not region(z):
                    continue
                if any(abs(z - w) <= dedupe * max(1.0, abs(z)) for w, _ in candidates):
                    continue
                candidates.append((z, exact))
    sv = solver(f, (driving,))
    out = []
    for z, exact in candidates:
        try:
            params = sv.solve({driving: exact if exact is not None else z}, None)
        except SingularConstraint:
            continue
        p = f.poly(params)
        if classify(p, tol).kind != "Chebyshev":
            continue
        t = extract_tree(p, tol)
        name = identify(t, names, up_to_mirror=True) if names else None
        out.append(Degeneration(z, exact, params, t, canonical_code(t), name))
    out.sort(key=lambda d: (round(d.value.real, 9), round(d.value.imag, 9)))
    return out


def match_points(found: Iterable[Degeneration], expected: Iterable[complex], tol: float = 1e-9) -> bool:
    """Whether the found values and the expected values agree as sets."""
    found = [d.value for d in found]
    expected = list(expected)
    if len(found) != len(expected):
        return False
    used = set()
    for z in expected:
        hit = [i for i, w in enumerate(found) if i not in used and abs(w - z) <= tol * max(1.0, abs(z))]
        if not hit:
            return False
        used.add(hit[0])
    return True
