"""The degree-7 variety of Zolotarev polynomials with passport <2,2|2,2|2,2>.

Points are ``(a, b, c, d)`` with
``p = ∫ x (x-1)(x-a)(x-b)(x-c)(x-d) dx`` and ``p(1) = 0``,
``p(a) = p(b)``, ``p(c) = p(d)``.  Three equations in four unknowns leave a
surface; a random linear slice cuts it to isolated points that Newton's
method can reach.  The variety has two components, told apart by the
order of the monodromy group: 168 on one, 2520 on the other.

Since the monodromy group cannot change along a path of Zolotarev
polynomials with a fixed passport, the orders seen next to a Chebyshev
point tell which components that tree can be reached from.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
import sympy as sp

from chebtrees.planetree import (BLACK, GREY, PlaneTree, TriPassport, Vertex, canonical_code, identify,
                                 reference_names)
from chebtrees.polynum import DEFAULT_TOL, CPoly, NoConvergence, classify
from chebtrees.zhomotopy.families import FamilySpec, family

CLASS = "<2,2|2,2|2,2>"
ORDERS = {168: "C1", 2520: "C2"}
NAMES = ("a", "b", "c", "d")


class UnexpectedOrder(RuntimeError):
    def __init__(self, order, point):
        super().__init__("monodromy order %s is neither 168 nor 2520" % order)
        self.order = order
        self.point = point


@lru_cache(maxsize=1)
def _model():
    f = family("septic-2-2-2")
    syms = [f.symbols[k] for k in NAMES]
    eqs = f.constraint_polys(())
    F = sp.lambdify(syms, eqs, "numpy")
    J = sp.lambdify(syms, sp.Matrix(eqs).jacobian(syms), "numpy")
    return f, F, J


def septic_family() -> FamilySpec:
    return _model()[0]


def residual(x) -> float:
    _, F, _ = _model()
    return float(np.linalg.norm(np.array(F(*x), dtype=complex)))


def project(x0, slice_normal, maxiter: int = 60, tol: float = 1e-13) -> np.ndarray:
    """Newton's method for the variety cut by ``L . x = L . x0``."""
    _, F, J = _model()
    L = np.asarray(slice_normal, dtype=complex)
    x = np.asarray(x0, dtype=complex).copy()
    target = L @ x
    for _ in range(maxiter):
        Fv = np.array(list(F(*x)) + [L @ x - target], dtype=complex)
        Jv = np.vstack([np.array(J(*x), dtype=complex), L])
        try:
            dx = np.linalg.solve(Jv, -Fv)
        except np.linalg.LinAlgError:
            raise NoConvergence("singular Jacobian on the slice")
        x = x + dx
        if not np.all(np.isfinite(x)):
            break
        if np.linalg.norm(dx) <= tol * (1 + np.linalg.norm(x)):
            return x
    raise NoConvergence("Newton on the degree-7 variety did not converge")


def poly_at(x) -> CPoly:
    return septic_family().poly(dict(zip(NAMES, x)))


def order_at(p: CPoly, tol: float = DEFAULT_TOL) -> int:
    from chebtrees.pullback import monodromy
    return monodromy(p, tol=tol).group_order


# -- trees against the tables -------------------------------------------------

def merge_ends(t: PlaneTree) -> PlaneTree:
    """Recolour grey as black; white stays on the middle critical value."""
    return PlaneTree(tuple(Vertex(v.id, BLACK if v.color == GREY else v.color, v.neighbors)
                           for v in t.vertices))


def table_names(component: str | None = None) -> list[str]:
    prefix = "n7/zol/" + (component + "/" if component else "")
    return reference_names(prefix)


@lru_cache(maxsize=None)
def _merged_table():
    from chebtrees.planetree import reference_tree
    return {name: merge_ends(reference_tree(name)) for name in table_names()}


def match_table(t: PlaneTree) -> str | None:
    """Table entry matching a Zolotarev tree, up to mirror, with the end colours merged."""
    from chebtrees.planetree import same_tree
    m = merge_ends(t)
    for name, ref in _merged_table().items():
        if same_tree(m, ref, up_to_mirror=True):
            return name
    return None


def arc_trees(p: CPoly, tol: float = DEFAULT_TOL) -> list[tuple[PlaneTree, str | None]]:
    from chebtrees.pullback import straight_arcs, zolotarev_tree
    out = []
    for arc in straight_arcs(p, tol):
        t = zolotarev_tree(p, arc, tol).to_tree()
        out.append((t, match_table(t)))
    return out


# -- sampling -----------------------------------------------------------------

@dataclass(frozen=True)
class Degree7Sample:
    point: tuple[complex, complex, complex, complex]
    poly: CPoly
    passport: TriPassport
    trees: tuple[tuple[str, str | None], ...]  # (code, table name) per straight arc
    order: int
    component: str
    seed: int = 0

    @property
    def table_hits(self) -> list[str]:
        return [name for _, name in self.trees if name]

    @property
    def consistent(self) -> bool:
        """Some arc gives a tree from this component's table."""
        return any(name.startswith("n7/zol/%s/" % self.component) for name in self.table_hits)

    def to_dict(self) -> dict:
        return {"point": [[z.real, z.imag] for z in self.point], "passport": str(self.passport.trim()),
                "trees": [{"code": c, "table": n} for c, n in self.trees], "order": self.order,
                "component": self.component, "consistent": self.consistent, "seed": self.seed}


def degree7_sample(seed: int | np.random.SeedSequence = 0, *, attempts: int = 40,
                   tol: float = DEFAULT_TOL) -> Degree7Sample:
    """A random Zolotarev point of the variety with its component label.

    Raises :class:`UnexpectedOrder` when the monodromy order is neither
    168 nor 2520 and ``NoConvergence`` when no attempt lands on a
    Zolotarev point of the right class.
    """
    rng = np.random.default_rng(seed)
    target = TriPassport.parse(CLASS, 7).trim().key()
    for _ in range(attempts):
        x0 = rng.normal(size=4) + 1j * rng.normal(size=4)
        L = rng.normal(size=4) + 1j * rng.normal(size=4)
        try:
            x = project(x0, L)
        except NoConvergence:
            continue
        p = poly_at(x)
        pc = classify(p, tol)
        if pc.kind != "Zolotarev" or pc.passport.trim().key() != target:
            continue
        order = order_at(p, tol)
        if order not in ORDERS:
            raise UnexpectedOrder(order, tuple(x))
        trees = tuple((canonical_code(t).code, name) for t, name in arc_trees(p, tol))
        label = seed if isinstance(seed, int) else int(seed.spawn_key[-1]) if seed.spawn_key else 0
        return Degree7Sample(tuple(complex(z) for z in x), p, pc.passport, trees, order, ORDERS[order], label)
    raise NoConvergence("no Zolotarev point of class %s after %d attempts" % (CLASS, attempts))


def degree7_samples(count: int, *, seed: int = 0, jobs: int = 1) -> list[Degree7Sample]:
    """``count`` samples from independent streams spawned off ``seed``.

    The streams do not depend on ``jobs``, so the result is the same for
    any degree of parallelism.
    """
    seqs = np.random.SeedSequence(seed).spawn(count)
    if jobs <= 1:
        return [degree7_sample(s) for s in seqs]
    from concurrent.futures import ProcessPoolExecutor
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(degree7_sample, seqs))


# -- component certificate ------------------------------------------------------

def chebyshev_labellings(t: PlaneTree, seed: int = 0) -> list[np.ndarray]:
    """Points ``(a, b, c, d)`` where the model degenerates to the tree ``t``.

    The six roots of ``p'`` of the tree's polynomial (a vertex of degree
    ``k`` counted ``k - 1`` times) are split into the pairs ``{0, 1}``,
    ``{a, b}`` and ``{c, d}``, each pair over one critical value, with the
    points labelled 0 and 1 distinct; an affine change of variable then
    puts them at 0 and 1.
    """
    from chebtrees.shabat import solve_tree
    sol = solve_tree(t, seed=seed)
    pts = [(0, r.location) for r in sol.white_roots for _ in range(r.mult - 1)] + \
          [(1, r.location) for r in sol.black_roots for _ in range(r.mult - 1)]
    if len(pts) != 6:
        raise ValueError("the tree's polynomial needs exactly six critical points with multiplicity")
    seen, out = set(), []
    for perm in itertools.permutations(range(6)):
        lab = [pts[i] for i in perm]
        if lab[0][1] == lab[1][1]:
            continue
        if not (lab[0][0] == lab[1][0] and lab[2][0] == lab[3][0] and lab[4][0] == lab[5][0]):
            continue
        z0, z1 = lab[0][1], lab[1][1]
        x = np.array([(z - z0) / (z1 - z0) for _, z in lab[2:]], dtype=complex)
        key = tuple(np.round(x, 8))
        if key not in seen:
            seen.add(key)
            out.append(x)
    return out


@dataclass(frozen=True)
class ComponentCertificate:
    tree_code: str
    orders: frozenset
    by_labelling: tuple[tuple[tuple, tuple[int, ...]], ...] = field(repr=False)
    probes: int = 0

    @property
    def components(self) -> frozenset:
        return frozenset(ORDERS.get(o, str(o)) for o in self.orders)

    def to_dict(self) -> dict:
        return {"tree": self.tree_code, "orders": sorted(self.orders),
                "components": sorted(self.components), "probes": self.probes,
                "labellings": [{"point": [[z.real, z.imag] for z in k], "orders": list(v)}
                               for k, v in self.by_labelling]}


def component_certificate(t: PlaneTree, *, radii=(3e-3, 3e-2), directions: int = 2, seed: int = 0,
                          reach: float = 0.2, tol: float = DEFAULT_TOL) -> ComponentCertificate:
    """Monodromy orders of Zolotarev points next to the Chebyshev point of ``t``.

    Every labelling of the degeneration is perturbed in random directions
    and projected back onto the variety with a random slice; projected
    points farther than ``reach`` or outside the class are discarded.
    """
    rng = np.random.default_rng(seed)
    target = TriPassport.parse(CLASS, 7).trim().key()
    orders, table, probes = set(), [], 0
    for x0 in chebyshev_labellings(t, seed=seed):
        seen = set()
        for eps in radii:
            for _ in range(directions):
                d = rng.normal(size=4) + 1j * rng.normal(size=4)
                start = x0 + eps * d / np.linalg.norm(d)
                L = rng.normal(size=4) + 1j * rng.normal(size=4)
                try:
                    x = project(start, L)
                except NoConvergence:
                    continue
                if np.linalg.norm(x - x0) > reach:
                    continue
                p = poly_at(x)
                pc = classify(p, tol)
                if pc.kind != "Zolotarev" or pc.passport.trim().key() != target:
                    continue
                probes += 1
                seen.add(order_at(p, tol))
        orders |= seen
        table.append((tuple(complex(z) for z in x0), tuple(sorted(seen))))
    return ComponentCertificate(canonical_code(t).code, frozenset(orders), tuple(table), probes)


def components_separate(t1: PlaneTree, t2: PlaneTree, **kw) -> tuple[bool, dict]:
    """True when both trees are reached only from disjoint sets of components."""
    c1, c2 = component_certificate(t1, **kw), component_certificate(t2, **kw)
    ok = bool(c1.orders) and bool(c2.orders) and not (c1.orders & c2.orders)
    return ok, {"t1": c1.to_dict(), "t2": c2.to_dict()}


def final_pair() -> tuple[PlaneTree, PlaneTree]:
    from chebtrees.planetree import reference_tree
    return reference_tree("n7/cheb/pair/0"), reference_tree("n7/cheb/pair/1")


def chebyshev_tree_names(component: str) -> list[str]:
    return reference_names("n7/cheb/%s/" % component)


def identify_chebyshev(t: PlaneTree) -> str | None:
    return identify(t, reference_names("n7/cheb/"), up_to_mirror=True)
