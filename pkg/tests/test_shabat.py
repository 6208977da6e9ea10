import numpy as np
import pytest
from hypothesis import given, strategies as st

from chebtrees.planetree import (BLACK, WHITE, build_tree, canonical_code, enumerate_trees, mirror,
                                 reference_tree)
from chebtrees.polynum import CPoly, classify, roots
from chebtrees.pullback import extract_tree
from chebtrees.shabat import NotChebyshev, StarTree, normalize, solve_tree

TREES = enumerate_trees(4) + enumerate_trees(5) + enumerate_trees(6)


def _close(p: CPoly, q: CPoly, tol=1e-7) -> bool:
    return p.degree == q.degree and np.max(np.abs(p.c - q.c)) <= tol * max(1.0, np.max(np.abs(q.c)))


def _chain(n):
    verts = [(i, WHITE if i % 2 == 0 else BLACK, tuple(j for j in (i - 1, i + 1) if 0 <= j <= n))
             for i in range(n + 1)]
    return build_tree(verts)


@pytest.mark.parametrize("t", TREES, ids=lambda t: canonical_code(t).code)
def test_solution_has_the_tree_degrees(t):
    sol = solve_tree(t)
    p = sol.poly
    assert sorted(r.mult for r in roots(p)) == sorted(t.degrees(WHITE))
    assert sorted(r.mult for r in roots(p - 1)) == sorted(t.degrees(BLACK))
    pc = classify(p)
    assert pc.kind == "Chebyshev"
    assert sorted(abs(v) for v in pc.values) == pytest.approx([0, 1], abs=1e-8)
    assert canonical_code(extract_tree(p, white_value=0)) == canonical_code(t)


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
def test_chain_gives_chebyshev_polynomial(n):
    cheb = CPoly(tuple(np.polynomial.chebyshev.cheb2poly([0] * n + [1])))
    assert _close(normalize(solve_tree(_chain(n)).poly), normalize(cheb))


def test_known_quintic():
    # p' = x^3 (x - 1): one white vertex of degree 4
    p = CPoly((0, 0, 0, 0, -1 / 4, 1 / 5))
    t = reference_tree("n5/T1")
    assert canonical_code(extract_tree(p)) == canonical_code(t)
    assert _close(normalize(p), normalize(solve_tree(t).poly))


affine = st.tuples(st.floats(0.3, 3), st.floats(-3, 3), st.floats(-2, 2), st.floats(-2, 2))


@given(st.sampled_from(enumerate_trees(5)), affine, affine)
def test_normalize_is_affine_invariant(t, za, wa):
    p = solve_tree(t).poly
    a = za[0] * np.exp(1j * za[1])
    b = complex(za[2], za[3])
    c = wa[0] * np.exp(1j * wa[1])
    d = complex(wa[2], wa[3])
    q = p.compose_affine(a, b).scale(c) + d
    assert _close(normalize(q), normalize(p), 1e-6)


@pytest.mark.parametrize("t", enumerate_trees(5), ids=lambda t: canonical_code(t).code)
def test_normalize_is_idempotent(t):
    p = normalize(solve_tree(t).poly)
    assert _close(normalize(p), p)
    assert p.lead == pytest.approx(1)


@pytest.mark.parametrize("t", enumerate_trees(6), ids=lambda t: canonical_code(t).code)
def test_mirror_is_complex_conjugation(t):
    assert _close(normalize(solve_tree(mirror(t)).poly), normalize(solve_tree(t).poly.conj()), 1e-6)


def test_seed_independence():
    t = reference_tree("n6/T7")
    assert _close(normalize(solve_tree(t, seed=0).poly), normalize(solve_tree(t, seed=5).poly))


def test_star_rejected():
    star = build_tree([(0, WHITE, (1, 2, 3)), (1, BLACK, (0,)), (2, BLACK, (0,)), (3, BLACK, (0,))])
    with pytest.raises(StarTree):
        solve_tree(star)


def test_normalize_rejects_non_chebyshev():
    with pytest.raises(NotChebyshev):
        normalize(CPoly((0.3, -1, 0.7j, 2, 0.5, 1)))
