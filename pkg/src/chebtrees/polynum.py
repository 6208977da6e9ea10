"""Complex polynomials: roots with multiplicities, critical data, classification.

Coefficients are stored in ascending order.  Multiple roots are found by
running Aberth's simultaneous iteration and then merging clusters of
approximations that a small relative perturbation of the coefficients
could turn into one multiple root.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
from numpy.polynomial import polynomial as npp

DEFAULT_TOL = 1e-9
_EPS = np.finfo(float).eps


class NoConvergence(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class CPoly:
    coeffs: tuple[complex, ...]

    def __post_init__(self):
        c = [complex(x) for x in self.coeffs]
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        if not c:
            c = [0j]
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def from_array(cls, arr) -> "CPoly":
        return cls(tuple(np.asarray(arr, dtype=complex)))

    @classmethod
    def from_roots(cls, roots: Iterable[complex], lead: complex = 1) -> "CPoly":
        return cls.from_array(lead * npp.polyfromroots(list(roots)))

    @property
    def c(self) -> np.ndarray:
        return np.array(self.coeffs, dtype=complex)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> complex:
        return self.coeffs[-1]

    def __call__(self, z):
        return npp.polyval(z, self.c)

    def deriv(self, m: int = 1) -> "CPoly":
        return CPoly.from_array(npp.polyder(self.c, m)) if self.degree >= m else CPoly((0,))

    def integ(self) -> "CPoly":
        return CPoly.from_array(npp.polyint(self.c))

    def __add__(self, other):
        if isinstance(other, CPoly):
            return CPoly.from_array(npp.polyadd(self.c, other.c))
        c = self.c.copy()
        c[0] += other
        return CPoly.from_array(c)

    def __sub__(self, other):
        return self + (-1 * other if not isinstance(other, CPoly) else other.scale(-1))

    def __mul__(self, other):
        if isinstance(other, CPoly):
            return CPoly.from_array(npp.polymul(self.c, other.c))
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, s: complex) -> "CPoly":
        return CPoly.from_array(self.c * s)

    def compose_affine(self, a: complex, b: complex) -> "CPoly":
        """Return ``z -> p(a z + b)``."""
        out = np.zeros(1, dtype=complex)
        lin = np.array([b, a], dtype=complex)
        for coef in self.c[::-1]:
            out = npp.polymul(out, lin)
            out[0] += coef
        return CPoly.from_array(out)

    def conj(self) -> "CPoly":
        return CPoly.from_array(np.conj(self.c))

    def taylor(self, z0: complex) -> np.ndarray:
        """Coefficients of ``p(z0 + h)`` in powers of ``h``."""
        return self.compose_affine(1, z0).c

    def to_dict(self) -> dict:
        return {"coeffs": [[x.real, x.imag] for x in self.coeffs]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d) -> "CPoly":
        if isinstance(d, str):
            d = json.loads(d)
        return cls(tuple(complex(re, im) for re, im in d["coeffs"]))

    def __repr__(self):
        return "CPoly(%s)" % ", ".join("%.6g%+.6gj" % (x.real, x.imag) for x in self.coeffs)


@dataclass(frozen=True)
class Root:
    location: complex
    mult: int


@dataclass(frozen=True)
class CriticalPoint:
    location: complex
    mult: int  # as a root of p - value, so >= 2
    value: complex


@dataclass(frozen=True)
class CriticalData:
    points: tuple[CriticalPoint, ...]
    tol: float


@dataclass(frozen=True)
class PolyClass:
    kind: str  # OneCritical | Chebyshev | Zolotarev | ManyValues
    values: tuple[complex, ...]  # one representative per cluster
    groups: tuple[tuple[int, ...], ...]  # full multiplicity sequences, padded with 1s
    points: tuple[tuple[CriticalPoint, ...], ...] = field(repr=False)
    n: int = 0

    @property
    def passport(self):
        from chebtrees.planetree import Passport, TriPassport
        if self.kind == "Chebyshev":
            a, b = self.groups
            if _excess(b) > _excess(a):
                a, b = b, a
            return Passport(a, b)
        if self.kind == "Zolotarev":
            return TriPassport(self.groups, self.n)
        return None


def _excess(group: Sequence[int]) -> int:
    return sum(k - 1 for k in group)


def poly_from_integrand(roots: Iterable, scale: complex = 1) -> CPoly:
    """Antiderivative, zero at the origin, of ``scale * prod (x - r)**m``.

    ``roots`` holds ``(location, mult)`` pairs or :class:`Root` values.
    """
    factors = []
    for r in roots:
        loc, m = (r.location, r.mult) if isinstance(r, Root) else r
        factors += [loc] * int(m)
    q = scale * npp.polyfromroots(factors) if factors else np.array([scale], dtype=complex)
    return CPoly.from_array(npp.polyint(np.asarray(q, dtype=complex)))


# -- root finding ----------------------------------------------------------------

def _aberth(c: np.ndarray, maxiter: int, start_angle: float | None) -> np.ndarray:
    """Simultaneous iteration; ``start_angle=None`` starts from companion eigenvalues.

    The eigenvalues are exact roots of a nearby polynomial, so each cluster
    of a multiple root starts with the right number of approximations.
    """
    n = len(c) - 1
    a = c / c[-1]
    k = np.arange(n)
    z = None
    if start_angle is None:
        with np.errstate(all="ignore"):
            z = np.roots(a[::-1]).astype(complex)
        if len(z) != n or not np.all(np.isfinite(z)):
            z = None
    if z is None:
        radius = max(abs(a[j]) ** (1.0 / (n - j)) for j in range(n)) if n else 0.0
        radius = max(radius, 1e-3)
        z = 0.5 * radius * np.exp(1j * (2 * np.pi * k / n + (start_angle or 0.4))) - a[n - 1] / n
    da = npp.polyder(a)
    absa = np.abs(a)
    done = np.zeros(n, dtype=bool)
    for _ in range(maxiter):
        pz = npp.polyval(z, a)
        bound = 16 * _EPS * npp.polyval(np.abs(z), absa)
        done |= np.abs(pz) <= bound
        if done.all():
            return z
        dpz = npp.polyval(z, da)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1)
        s = (1 / diff).sum(axis=1) - 1  # drop the diagonal ones
        with np.errstate(all="ignore"):
            ratio = pz / dpz
            w = ratio / (1 - ratio * s)
        bad = ~np.isfinite(w)
        w[bad] = 1e-8 * (1 + abs(z[bad]))
        w[done] = 0
        z = z - w
        if np.all(np.abs(w) <= 4 * _EPS * np.maximum(1, np.abs(z))):
            return z
    raise NoConvergence("Aberth iteration did not converge in %d steps" % maxiter)


def _taylor_ok(c: np.ndarray, center: complex, m: int, tol: float, radius: float = 0.0) -> bool:
    """Whether ``center`` is an m-fold root up to relative perturbation ``tol``.

    Coefficient sizes are measured on the disc of the given radius, so a
    tiny constant term does not set the scale.
    """
    n = len(c) - 1
    absc = np.abs(c)
    r = max(abs(center), radius)
    t = CPoly.from_array(c).taylor(center)
    for j in range(m):
        mag = sum(absc[k] * math.comb(k, j) * r ** (k - j) for k in range(j, n + 1))
        if abs(t[j]) > tol * mag:
            return False
    return True


def _refine_center(c: np.ndarray, center: complex, m: int) -> complex:
    """Newton on the (m-1)-th derivative, which has a simple root at an m-fold root."""
    if m < 2:
        return center
    d = npp.polyder(c, m - 1)
    dd = npp.polyder(d)
    z = center
    for _ in range(8):
        den = npp.polyval(z, dd)
        if den == 0:
            break
        step = npp.polyval(z, d) / den
        z -= step
        if abs(step) <= 4 * _EPS * max(1.0, abs(z)):
            break
    # a runaway step means the cluster is not one root; keep the mean
    return complex(z) if abs(z - center) < 1e-2 * max(1.0, abs(center)) else center


def _cluster_roots(c: np.ndarray, z: np.ndarray, tol: float) -> list[Root]:
    clusters = [[x] for x in z]
    centers: dict[int, complex] = {}
    scale = max(1.0, float(np.max(np.abs(z)))) if len(z) else 1.0
    rscale = float(np.max(np.abs(z))) if len(z) else 0.0
    rejected: set[tuple[int, int]] = set()
    while True:
        best = None
        for i in range(len(clusters)):
            for j in range(i + 1, len(clusters)):
                key = (id(clusters[i]), id(clusters[j]))
                if key in rejected:
                    continue
                d = min(abs(a - b) for a in clusters[i] for b in clusters[j])
                if best is None or d < best[0]:
                    best = (d, i, j)
        if best is None or best[0] > 0.25 * scale:
            break
        _, i, j = best
        merged = clusters[i] + clusters[j]
        center = _refine_center(c, complex(np.mean(merged)), len(merged))
        if best[0] <= tol * scale * 1e-3 or _taylor_ok(c, center, len(merged), tol, rscale):
            clusters = [cl for k, cl in enumerate(clusters) if k not in (i, j)] + [merged]
            centers[id(merged)] = center
        else:
            rejected.add((id(clusters[i]), id(clusters[j])))
    out = [Root(centers.get(id(cl), complex(cl[0])), len(cl)) for cl in clusters]
    return sorted(out, key=lambda r: (round(r.location.real, 12), round(r.location.imag, 12)))


def roots(p: CPoly | Sequence[complex], tol: float = DEFAULT_TOL,
          maxiter: int = 800, restarts: int = 4) -> list[Root]:
    """All roots of ``p`` with multiplicities.

    Approximations that are consistent with one multiple root under a
    relative coefficient perturbation of size ``tol`` are merged; the
    reported location is the cluster centroid.
    """
    if not isinstance(p, CPoly):
        p = CPoly(tuple(p))
    if p.degree < 1:
        raise ValueError("roots of a constant")
    c = p.c
    # exact zeros at the origin
    k0 = 0
    while c[k0] == 0:
        k0 += 1
    c = c[k0:]
    found: list[Root] = [Root(0j, k0)] if k0 else []
    if len(c) > 1:
        z = None
        for attempt in range(restarts):
            try:
                z = _aberth(c, maxiter, None if attempt == 0 else 0.4 + 1.3 * (attempt - 1))
                break
            except NoConvergence:
                continue
        if z is None:
            raise NoConvergence("root finder failed after %d restarts" % restarts)
        found += _cluster_roots(c, z, tol)
    if k0 and len(found) > 1:
        # a cluster next to the origin belongs to the exact zero
        merged = [found[0]]
        rscale = max(abs(r.location) for r in found)
        for r in found[1:]:
            if abs(r.location) < 1e-6 * max(1.0, rscale) and _taylor_ok(p.c, 0, merged[0].mult + r.mult, tol, rscale):
                merged[0] = Root(0j, merged[0].mult + r.mult)
            else:
                merged.append(r)
        found = sorted(merged, key=lambda r: (round(r.location.real, 12), round(r.location.imag, 12)))
    return found


def critical_data(p: CPoly, tol: float = DEFAULT_TOL) -> CriticalData:
    if p.degree < 2:
        raise ValueError("critical data needs degree >= 2")
    pts = tuple(CriticalPoint(r.location, r.mult + 1, complex(p(r.location)))
                for r in roots(p.deriv(), tol))
    return CriticalData(pts, tol)


def _lex(z: complex):
    return (z.real, z.imag)


def cluster_values(values: Sequence[complex], tol: float = DEFAULT_TOL,
                   scale: float | None = None) -> list[list[int]]:
    """Partition indices of ``values`` into clusters within ``tol * scale``.

    Transitive closure of the "close" relation.  Clusters come sorted by
    their representative, the lexicographically smallest member.
    """
    n = len(values)
    if n == 0:
        return []
    if scale is None:
        scale = max(1.0, max(abs(v) for v in values))
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(values[i] - values[j]) <= tol * scale:
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    out = [sorted(g, key=lambda i: _lex(values[i])) for g in groups.values()]
    return sorted(out, key=lambda g: _lex(values[g[0]]))


_KINDS = {1: "OneCritical", 2: "Chebyshev", 3: "Zolotarev"}


def classify(p: CPoly, tol: float = DEFAULT_TOL, value_tol: float | None = None) -> PolyClass:
    """Classify ``p`` by the number of distinct finite critical values."""
    cd = critical_data(p, tol)
    vals = [pt.value for pt in cd.points]
    scale = max([1.0] + [abs(v) for v in vals])
    clusters = cluster_values(vals, tol if value_tol is None else value_tol, scale)
    n = p.degree
    groups, reps, pts = [], [], []
    for cl in clusters:
        mults = sorted((cd.points[i].mult for i in cl), reverse=True)
        groups.append(tuple(mults) + (1,) * (n - sum(mults)))
        reps.append(vals[cl[0]])
        pts.append(tuple(cd.points[i] for i in cl))
    kind = _KINDS.get(len(clusters), "ManyValues")
    return PolyClass(kind, tuple(reps), tuple(groups), tuple(pts), n)
