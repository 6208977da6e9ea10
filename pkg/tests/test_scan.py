import pytest
import sympy as sp

from chebtrees.planetree import reference_names
from chebtrees.zhomotopy import UnsupportedFamily, degeneration_scan, family, load_catalog
from chebtrees.zhomotopy.families import to_complex
from chebtrees.zhomotopy.scan import match_points

x, a = sp.symbols("x a")


def _family1_degenerations():
    """Values of a where int x^2 (x-1)(x-a) has at most two critical values, straight from sympy."""
    p = sp.integrate(x ** 2 * (x - 1) * (x - a), (x, 0, x))
    crit = [sp.Integer(0), sp.Integer(1), a]
    vals = [p.subs(x, c) for c in crit]
    eqs = [vals[i] - vals[j] for i in range(3) for j in range(i + 1, 3)] + [a, a - 1]
    cands = set()
    for e in eqs:
        for r in sp.solve(sp.numer(sp.factor(e)), a):
            cands.add(sp.nsimplify(r))
    out = []
    for r in cands:
        pr = sp.Poly(p.subs(a, r), x)
        cps = sp.roots(sp.Poly(sp.diff(pr.as_expr(), x), x))
        distinct = {sp.nsimplify(sp.simplify(pr.as_expr().subs(x, c))) for c in cps}
        if len(distinct) == 2:
            out.append(complex(r))
    return out


def test_family1_matches_direct_computation():
    found = degeneration_scan(family("quintic-3-2-2"), "a")
    assert match_points(found, _family1_degenerations())
    assert len(found) == 6


def test_family1_trees():
    cat = load_catalog()
    exp = cat["degenerations"]["quintic-3-2-2"]
    found = degeneration_scan(cat["families"]["quintic-3-2-2"], "a", names=reference_names("n5/"))
    for z, name in zip(exp["points"], exp["trees"]):
        hit = [d for d in found if abs(d.value - to_complex(z)) < 1e-9]
        assert hit and hit[0].name == name


def test_family2_listed_points_and_the_extra_one():
    cat = load_catalog()
    exp = cat["degenerations"]["quintic-2-2-2"]
    found = degeneration_scan(cat["families"]["quintic-2-2-2"], "a", names=reference_names("n5/"))
    listed = [to_complex(z) for z in exp["points"]]
    extra = [to_complex(z) for z in exp["extra"]["points"]]
    assert match_points(found, listed + extra)
    for z, name in zip(listed + extra, exp["trees"] + exp["extra"]["trees"]):
        hit = [d for d in found if abs(d.value - z) < 1e-9 * max(1, abs(z))]
        assert hit and hit[0].name == name


def test_extra_point_is_chebyshev_exactly():
    # a = 5/2 forces b = a and p = x^2 (2x - 5)^3 / 40 up to the additive constant
    av = sp.Rational(5, 2)
    bv = (3 * av ** 2 - 5 * av) / (5 * av - 10)
    assert bv == av
    p = sp.integrate(x * (x - 1) * (x - av) * (x - bv), (x, 0, x))
    q = sp.expand(x ** 2 * (2 * x - 5) ** 3 / 40)
    assert sp.expand(p - q).is_constant()


def test_region_filter():
    found = degeneration_scan(family("quintic-3-2-2"), "a", region=lambda z: z.imag > 0.1)
    assert found and all(d.value.imag > 0.1 for d in found)


def test_every_scan_point_is_chebyshev():
    from chebtrees.polynum import classify
    f = family("quintic-2-2-2")
    for d in degeneration_scan(f, "a"):
        assert classify(f.poly(d.params)).kind == "Chebyshev"
        assert d.tree.n_edges == 5


def test_unsupported_family():
    with pytest.raises(UnsupportedFamily):
        degeneration_scan(family("septic-2-2-2"), "a")
