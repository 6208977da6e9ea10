"""Chebyshev (Shabat) polynomials for plane trees, and their normal form.

A tree with white vertices ``w_i`` of degree ``a_i`` and black vertices
``v_j`` of degree ``b_j`` is realised by ``p = A`` where
``A = prod (x - w_i)^a_i`` and ``B = prod (x - v_j)^b_j`` satisfy
``A - B = 1``, so that ``p - 1 = B``.  The unknown vertex positions are
found by Newton's method from a drawing of the tree, and the answer is
accepted only if its pullback is the requested tree.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as npp

from chebtrees.planetree import BLACK, WHITE, CanonicalCode, PlaneTree, _code, canonical_code, is_star
from chebtrees.polynum import DEFAULT_TOL, CPoly, NoConvergence, Root, classify, roots


class StarTree(ValueError):
    """Stars have a single critical value; no Chebyshev polynomial exists."""


class NotChebyshev(ValueError):
    pass


@dataclass(frozen=True)
class ShabatSolution:
    poly: CPoly
    white_roots: tuple[Root, ...]
    black_roots: tuple[Root, ...]
    residual: float
    tree_code: CanonicalCode


# -- seeds -----------------------------------------------------------------------

def _layout(t: PlaneTree, root: int) -> dict[int, complex]:
    """Straight-line drawing respecting the rotation system.

    Each vertex spreads its children over equal angles counterclockwise
    after the direction back to its parent; edges shrink with depth so
    subtrees rarely overlap.
    """
    pos = {root: 0j}
    first = t.vertex(root).neighbors
    stack = []
    d0 = len(first)
    for k, u in enumerate(first):
        stack.append((u, root, 2 * math.pi * k / d0, 1))
    while stack:
        v, parent, ang, depth = stack.pop()
        pos[v] = pos[parent] + 0.75 ** (depth - 1) * cmath.exp(1j * ang)
        nb = list(t.vertex(v).neighbors)
        d = len(nb)
        i = nb.index(parent)
        back = ang + math.pi
        for k in range(1, d):
            u = nb[(i + k) % d]
            stack.append((u, v, back + 2 * math.pi * k / d, depth + 1))
    return pos


# -- Newton solve ----------------------------------------------------------------

def _expand(locs: np.ndarray, mults: list[int]) -> np.ndarray:
    rs = [z for z, m in zip(locs, mults) for _ in range(m)]
    return npp.polyfromroots(rs) if rs else np.ones(1, dtype=complex)


def _system(u: np.ndarray, free: list[tuple[str, int]], wl: np.ndarray, bl: np.ndarray,
            wm: list[int], bm: list[int]):
    """Residual of ``A - B = 1`` (coefficients 0..n-1) and its Jacobian in the free unknowns."""
    wl, bl = wl.copy(), bl.copy()
    for val, (side, i) in zip(u, free):
        (wl if side == "w" else bl)[i] = val
    A, B = _expand(wl, wm), _expand(bl, bm)
    n = len(A) - 1
    F = (A - B)[:n]
    F[0] -= 1
    J = np.empty((n, len(free)), dtype=complex)
    for col, (side, i) in enumerate(free):
        locs, mults = (wl, wm) if side == "w" else (bl, bm)
        m2 = list(mults)
        m2[i] -= 1
        dP = -mults[i] * _expand(locs, m2)
        dP = np.concatenate([dP, np.zeros(n + 1 - len(dP))])
        J[:, col] = dP[:n] if side == "w" else -dP[:n]
    return F, J, wl, bl, A, B


def _newton(u0, free, wl, bl, wm, bm, maxiter=80):
    u = u0.copy()
    F, J, *_ = _system(u, free, wl, bl, wm, bm)
    norm = np.linalg.norm(F)
    for _ in range(maxiter):
        try:
            du = np.linalg.lstsq(J, -F, rcond=None)[0]
        except np.linalg.LinAlgError:
            return None
        lam = 1.0
        while lam > 1e-4:
            cand = u + lam * du
            F2, J2, *_ = _system(cand, free, wl, bl, wm, bm)
            n2 = np.linalg.norm(F2)
            if np.isfinite(n2) and n2 < norm * (1 - 0.25 * lam) or n2 < 1e-14:
                break
            lam *= 0.5
        else:
            return None
        u, F, J, norm = cand, F2, J2, n2
        scale = 1 + np.max(np.abs(u)) ** len(wm + bm)
        if norm < 1e-13 * scale and lam == 1.0 and np.linalg.norm(du) < 1e-10 * (1 + np.linalg.norm(u)):
            return u
    return u if norm < 1e-11 else None


def _gauge_z(p: CPoly, choose_rotation: bool = True) -> CPoly:
    """Move the centroid of the roots of p' to 0 and make p monic.

    Among the ``n`` rotations leaving p monic, a real one is preferred, then
    the smallest rounded coefficient key.  The key looks at imaginary parts
    only through their size first, so conjugate polynomials pick conjugate
    representatives.
    """
    n = p.degree
    c = p.c
    shift = -c[n - 1] / (n * c[n])
    q = p.compose_affine(1, shift)
    alpha = (1 / q.lead) ** (1.0 / n)
    if not choose_rotation:
        return q.compose_affine(alpha, 0)
    best = None
    for k in range(n):
        r = q.compose_affine(alpha * cmath.exp(2j * math.pi * k / n), 0)
        cs = r.c[::-1]
        key = (round(float(np.max(np.abs(cs.imag))), 7),
               tuple((round(x.real, 7) + 0.0, round(abs(x.imag), 7) + 0.0) for x in cs),
               tuple(round(x.imag, 7) + 0.0 for x in cs))
        if best is None or key < best[0]:
            best = (key, r)
    q = best[1]
    return CPoly.from_array(np.concatenate([q.c[:-1], [1.0]]))


def _spread(attempt: int) -> float:
    """Size of the random perturbation added to the drawing on each restart."""
    return 1e-3 if attempt == 0 else min(0.4, 0.03 * attempt)


def solve_tree(t: PlaneTree, seed: int = 0, max_restarts: int = 40, tol: float = 1e-10) -> ShabatSolution:
    """Chebyshev polynomial whose pullback of [0, 1] is ``t`` (white over 0).

    Raises :class:`StarTree` for stars and
    :class:`~chebtrees.polynum.NoConvergence` when every restart fails.
    """
    if t.n_edges < 1 or is_star(t):
        raise StarTree("stars have only one critical value")
    from chebtrees.pullback import LiftDivergence, NotMatchingClass, extract_tree

    target = canonical_code(t)
    whites = [v for v in t.vertices if v.color == WHITE]
    blacks = [v for v in t.vertices if v.color == BLACK]
    wm = [len(v.neighbors) for v in whites]
    bm = [len(v.neighbors) for v in blacks]
    w0 = max(whites, key=lambda v: (len(v.neighbors), -v.id))
    rng = np.random.default_rng(seed)
    for attempt in range(max_restarts):
        pos = _layout(t, w0.id)
        for k in pos:
            if k != w0.id:
                pos[k] += _spread(attempt) * (rng.normal() + 1j * rng.normal())
        # gauge: w0 at the origin and A - B = 1; scale the drawing to match
        wl = np.array([pos[v.id] for v in whites], dtype=complex)
        bl = np.array([pos[v.id] for v in blacks], dtype=complex)
        gap = _expand(wl, wm)[0] - _expand(bl, bm)[0]
        if abs(gap) < 1e-8:
            continue
        lam = gap ** (-1.0 / t.n_edges)
        wl, bl = wl * lam, bl * lam
        free = [("w", i) for i, v in enumerate(whites) if v.id != w0.id] + \
               [("b", i) for i in range(len(blacks))]
        u0 = np.array([wl[i] if side == "w" else bl[i] for side, i in free], dtype=complex)
        u = _newton(u0, free, wl, bl, wm, bm)
        if u is None:
            continue
        _, _, _, _, A, _ = _system(u, free, wl, bl, wm, bm)
        p = CPoly.from_array(A)
        try:
            got = extract_tree(p, white_value=0)
        except (LiftDivergence, NotMatchingClass, NoConvergence, ValueError):
            continue
        if _code(got, True) != target.code:
            continue
        return _finish(p, target, tol)
    raise NoConvergence("no Chebyshev polynomial found for %s after %d restarts"
                        % (target.code, max_restarts))


def _finish(p: CPoly, code: CanonicalCode, tol: float) -> ShabatSolution:
    q = _gauge_z(p)
    white = tuple(roots(q, tol))
    black = tuple(roots(q - 1, tol))
    resid = max(max(abs(q(r.location)) for r in white), max(abs(q(r.location) - 1) for r in black))
    # derivative of the right order vanishes at each multiple root
    for group, shift in ((white, 0), (black, 1)):
        for r in group:
            for j in range(1, r.mult):
                resid = max(resid, abs(q.deriv(j)(r.location)) / math.factorial(j))
    if resid > tol * max(1.0, max(abs(r.location) for r in white + black) ** q.degree):
        raise NoConvergence("residual %.3g above tolerance" % resid)
    return ShabatSolution(q, white, black, float(resid), code)


def normalize(p: CPoly, tol: float = DEFAULT_TOL) -> CPoly:
    """Canonical affine representative of a Chebyshev polynomial.

    Critical values go to 0 and 1, with 0 on the value whose critical
    points carry more multiplicity; on a tie the value whose pullback tree
    (white over that value) has the smaller code wins.  Then the centroid of
    the critical points moves to 0 and the polynomial is made monic, the
    remaining rotation being fixed by a rounded coefficient key.
    """
    pc = classify(p, tol)
    if pc.kind != "Chebyshev":
        raise NotChebyshev("expected two critical values, found %s" % pc.kind)
    (v0, v1), (g0, g1) = pc.values, pc.groups
    e0, e1 = sum(k - 1 for k in g0), sum(k - 1 for k in g1)
    if e1 > e0:
        v0, v1 = v1, v0
    elif e0 == e1:
        from chebtrees.pullback import extract_tree
        c0 = _code(extract_tree(p, tol, white_value=v0), True)
        c1 = _code(extract_tree(p, tol, white_value=v1), True)
        if c1 < c0:
            v0, v1 = v1, v0
    q = CPoly.from_array((p.c - np.eye(1, len(p.c), 0)[0] * v0) / (v1 - v0))
    return _gauge_z(q)
