"""Preimages of arcs under a polynomial, monodromy, SVG output.

All n sheets over a path are continued together; a step is accepted only
when Newton's corrector converges and no sheet moves more than a fraction
of its distance to the nearest other sheet, which keeps sheets from
swapping.  Near an anchor the sheets stop just short of the critical
value and are snapped onto the preimage vertices.
"""

from __future__ import annotations

import cmath
import json
import math
from collections import deque
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numpy.polynomial import polynomial as npp

from chebtrees.planetree import BLACK, GREY, WHITE, PlaneTree, Vertex, canonical_coloring, _code, swap_colors
from chebtrees.polynum import _EPS, DEFAULT_TOL, CPoly, classify, roots


class LiftDivergence(RuntimeError):
    pass


class NotMatchingClass(ValueError):
    pass


@dataclass(frozen=True)
class Arc:
    """Polyline through the anchors; ``waypoints[k]`` bends the k-th piece."""

    anchors: tuple[complex, ...]
    waypoints: tuple[tuple[complex, ...], ...] = ()

    def pieces(self) -> list[list[complex]]:
        out = []
        for k in range(len(self.anchors) - 1):
            wp = list(self.waypoints[k]) if k < len(self.waypoints) else []
            out.append([self.anchors[k]] + wp + [self.anchors[k + 1]])
        return out


@dataclass(frozen=True)
class GVertex:
    id: int
    location: complex
    color: str
    degree: int


@dataclass(frozen=True)
class GEdge:
    u: int
    v: int
    curve: tuple[complex, ...]  # runs from u to v


@dataclass(frozen=True)
class EmbeddedGraph:
    vertices: tuple[GVertex, ...]
    edges: tuple[GEdge, ...]
    rotation: dict  # vertex id -> edge indices, counterclockwise

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def neighbors(self, vid: int) -> tuple[int, ...]:
        return tuple(self.edges[e].v if self.edges[e].u == vid else self.edges[e].u
                     for e in self.rotation[vid])

    def to_tree(self) -> PlaneTree:
        return PlaneTree(tuple(Vertex(v.id, v.color, self.neighbors(v.id)) for v in self.vertices))

    def to_dict(self) -> dict:
        return {"n_edges": self.n_edges,
                "vertices": [{"id": v.id, "color": v.color, "neighbors": list(self.neighbors(v.id)),
                              "x": v.location.real, "y": v.location.imag}
                             for v in self.vertices]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


@dataclass(frozen=True)
class MonodromyData:
    values: tuple[complex, ...]
    perms: tuple[tuple[int, ...], ...]
    infinity_perm: tuple[int, ...]
    group_order: int


# -- sheet continuation ----------------------------------------------------------

def _polyline_point(pts: Sequence[complex], s: float) -> tuple[complex, complex]:
    """Point and unit-speed tangent at arclength fraction ``s``."""
    lens = [abs(b - a) for a, b in zip(pts, pts[1:])]
    total = sum(lens)
    target = s * total
    for (a, b), L in zip(zip(pts, pts[1:]), lens):
        if target <= L or L == lens[-1] and (a, b) == (pts[-2], pts[-1]):
            f = min(max(target / L, 0.0), 1.0) if L else 0.0
            return a + f * (b - a), (b - a)
        target -= L
    return pts[-1], pts[-1] - pts[-2]


def _segments(pts: Sequence[complex]) -> list[tuple[complex, complex]]:
    return [(a, b) for a, b in zip(pts, pts[1:]) if a != b]


def track_sheets(p: CPoly, z0: np.ndarray, path: Sequence[complex], stop_short: float = 0.0,
                 max_step: float = 0.05, max_steps: int = 200000):
    """Continue the preimages ``z0`` of ``path[0]`` along the polyline ``path``.

    Returns the final positions and, per sheet, the list of visited points.
    ``stop_short`` leaves that fraction of the last segment untraversed.
    """
    c = p.c
    dc = npp.polyder(c)
    absc = np.abs(c)
    z = np.array(z0, dtype=complex)
    samples = [[x] for x in z]
    segs = _segments(path)
    steps = 0
    for k, (w_a, w_b) in enumerate(segs):
        t_end = 1.0 - (stop_short if k == len(segs) - 1 else 0.0)
        t, h = 0.0, max_step
        dw = w_b - w_a
        while t < t_end - 1e-15:
            steps += 1
            if steps > max_steps:
                raise LiftDivergence("too many continuation steps")
            h = min(h, t_end - t)
            # keep steps small relative to the remaining distance near the end
            if k == len(segs) - 1 and stop_short:
                h = min(h, max(0.5 * (t_end - t), 1e-3 * (1 - t)))
            t_new = t + h
            w_new = w_a + t_new * dw
            dz = dw * h / npp.polyval(z, dc)
            cand = z + dz
            ok = np.all(np.isfinite(cand))
            if ok:
                for _ in range(6):
                    resid = npp.polyval(cand, c) - w_new
                    corr = resid / npp.polyval(cand, dc)
                    cand = cand - corr
                    if not np.all(np.isfinite(cand)):
                        ok = False
                        break
                    small = np.abs(corr) <= 1e-11 * np.maximum(1, np.abs(cand))
                    noise = np.abs(resid) <= 64 * _EPS * (npp.polyval(np.abs(cand), absc) + abs(w_new))
                    if np.all(small | noise):
                        break
                else:
                    ok = False
            if ok and len(z) > 1:
                gaps = np.abs(z[:, None] - z[None, :])
                np.fill_diagonal(gaps, np.inf)
                near = gaps.min(axis=1)
                ok = bool(np.all(np.abs(cand - z) < 0.3 * near))
                if ok:
                    gaps2 = np.abs(cand[:, None] - cand[None, :])
                    np.fill_diagonal(gaps2, np.inf)
                    ok = bool(np.all(gaps2.min(axis=1) > 0.4 * near))
            if ok:
                z, t = cand, t_new
                for i, x in enumerate(z):
                    if abs(x - samples[i][-1]) > 1e-3 * max(1.0, abs(x)) or t >= t_end - 1e-15:
                        samples[i].append(x)
                h = min(h * 1.6, max_step)
            else:
                h *= 0.5
                if h < 1e-14:
                    raise LiftDivergence("step size underflow at t=%.6g" % t)
    return z, samples


def _preimages(p: CPoly, w: complex, tol: float):
    return roots(p - w, tol)


def _snap(ends: np.ndarray, verts: list, mults: list[int]) -> list[int]:
    """Assign sheet endpoints to vertices; each vertex must get its multiplicity."""
    locs = np.array(verts, dtype=complex)
    assign = [int(np.argmin(np.abs(locs - e))) for e in ends]
    counts = np.bincount(assign, minlength=len(verts))
    if list(counts) != list(mults):
        raise LiftDivergence("sheets did not land on vertices with the right multiplicities")
    return assign


# -- lifting arcs --------------------------------------------------------------

def lift_arc(p: CPoly, arc: Arc, tol: float = DEFAULT_TOL, colors: Sequence[str] | None = None,
             check_class: bool = True) -> EmbeddedGraph:
    """Embedded graph ``p^{-1}(arc)``.

    With two anchors the first is white and the second black; with three,
    preimages of the middle anchor are white, the first black and the last
    grey.
    """
    m = len(arc.anchors)
    if m not in (2, 3):
        raise ValueError("an arc has two or three anchors")
    if check_class:
        kind = classify(p, tol).kind
        if (m, kind) not in ((2, "Chebyshev"), (2, "OneCritical"), (3, "Zolotarev")):
            raise NotMatchingClass("%d anchors for a %s polynomial" % (m, kind))
        if not _arc_is_simple(arc, classify(p, tol).values):
            raise ValueError("arc meets a critical value away from its anchors")
    if colors is None:
        colors = (WHITE, BLACK) if m == 2 else (BLACK, WHITE, GREY)
    n = p.degree
    anchor_verts = []
    for w in arc.anchors:
        rs = _preimages(p, w, tol)
        anchor_verts.append(([r.location for r in rs], [r.mult for r in rs]))
    ids, verts, offset = [], [], 0
    for k, (locs, mults) in enumerate(anchor_verts):
        ids.append(list(range(offset, offset + len(locs))))
        for j, (loc, mu) in enumerate(zip(locs, mults)):
            deg = mu * (2 if 0 < k < m - 1 else 1)
            verts.append(GVertex(offset + j, loc, colors[k], deg))
        offset += len(locs)
    edges: list[GEdge] = []
    last_pts: dict[int, list[tuple[float, int]]] = {v.id: [] for v in verts}
    for k, piece in enumerate(arc.pieces()):
        total = sum(abs(b - a) for a, b in zip(piece, piece[1:]))
        lens = np.cumsum([0] + [abs(b - a) for a, b in zip(piece, piece[1:])])
        half = total / 2
        j = int(np.searchsorted(lens, half, side="right")) - 1
        j = min(j, len(piece) - 2)
        f = (half - lens[j]) / (lens[j + 1] - lens[j])
        w0 = piece[j] + f * (piece[j + 1] - piece[j])
        back = [w0] + piece[j::-1]
        fwd = [w0] + piece[j + 1:]
        base = _preimages(p, w0, tol)
        if len(base) != n or any(r.mult != 1 for r in base):
            raise LiftDivergence("base point of the arc is not a regular value")
        z0 = np.array([r.location for r in base])
        ends = {}
        curves = {}
        for direction, path in (("back", back), ("fwd", fwd)):
            for stop, step in ((1e-7, 0.05), (1e-9, 0.01), (1e-11, 0.002)):
                try:
                    zend, samples = track_sheets(p, z0, path, stop_short=stop, max_step=step)
                    locs, mults = anchor_verts[k if direction == "back" else k + 1]
                    assign = _snap(zend, locs, mults)
                    break
                except LiftDivergence:
                    continue
            else:
                raise LiftDivergence("could not lift piece %d of the arc" % k)
            ends[direction] = assign
            curves[direction] = samples
        for i in range(n):
            u = ids[k][ends["back"][i]]
            v = ids[k + 1][ends["fwd"][i]]
            curve = [verts[u].location] + curves["back"][i][::-1] + curves["fwd"][i][1:] + [verts[v].location]
            eidx = len(edges)
            edges.append(GEdge(u, v, tuple(curve)))
            last_pts[u].append((cmath.phase(curves["back"][i][-1] - verts[u].location), eidx))
            last_pts[v].append((cmath.phase(curves["fwd"][i][-1] - verts[v].location), eidx))
    rotation = {vid: tuple(e for _, e in sorted(lst)) for vid, lst in last_pts.items()}
    for v in verts:
        if len(rotation[v.id]) != v.degree:
            raise LiftDivergence("vertex %d has %d edges, expected %d"
                                 % (v.id, len(rotation[v.id]), v.degree))
    expected = n * (m - 1)
    if len(edges) != expected:
        raise LiftDivergence("lift has %d edges, expected %d" % (len(edges), expected))
    return EmbeddedGraph(tuple(verts), tuple(edges), rotation)


def _white_value(p: CPoly, tol: float):
    pc = classify(p, tol)
    if pc.kind != "Chebyshev":
        raise NotMatchingClass("expected a Chebyshev polynomial, got %s" % pc.kind)
    (v0, v1), (g0, g1) = pc.values, pc.groups
    e0, e1 = sum(k - 1 for k in g0), sum(k - 1 for k in g1)
    return v0, v1, e0, e1


def extract_graph(p: CPoly, tol: float = DEFAULT_TOL, white_value: complex | None = None) -> EmbeddedGraph:
    v0, v1, e0, e1 = _white_value(p, tol)
    if white_value is not None:
        if abs(white_value - v1) < abs(white_value - v0):
            v0, v1 = v1, v0
    elif e1 > e0:
        v0, v1 = v1, v0
    return lift_arc(p, Arc((v0, v1)), tol, check_class=False)


def extract_tree(p: CPoly, tol: float = DEFAULT_TOL, white_value: complex | None = None) -> PlaneTree:
    """The plane tree ``p^{-1}[alpha, beta]`` of a Chebyshev polynomial.

    White sits over the critical value carrying more critical multiplicity;
    on a tie the colouring with the smaller code is used, so the result
    agrees with :func:`chebtrees.planetree.canonical_coloring`.  Passing
    ``white_value`` overrides the rule.
    """
    _, _, e0, e1 = _white_value(p, tol)
    tree = extract_graph(p, tol, white_value).to_tree()
    if white_value is None and e0 == e1:
        other = swap_colors(tree)
        if _code(other, True) < _code(tree, True):
            return other
    return tree


def zolotarev_tree(p: CPoly, arc: Arc, tol: float = DEFAULT_TOL) -> EmbeddedGraph:
    pc = classify(p, tol)
    if pc.kind != "Zolotarev":
        raise NotMatchingClass("expected a Zolotarev polynomial, got %s" % pc.kind)
    return lift_arc(p, arc, tol, check_class=False)


def straight_arcs(p: CPoly, tol: float = DEFAULT_TOL) -> list[Arc]:
    """Straight polylines through the critical values, one per admissible middle value.

    When the three values are collinear only the ordering with the middle
    value between the others gives a simple arc, so a single arc is returned.
    """
    vals = classify(p, tol).values
    if len(vals) != 3:
        raise NotMatchingClass("need three critical values")
    out = []
    for m in range(3):
        arc = Arc((vals[(m + 1) % 3], vals[m], vals[(m + 2) % 3]))
        if _arc_is_simple(arc, vals):
            out.append(arc)
    return out


def _dist_to_segment(z: complex, a: complex, b: complex) -> float:
    d = b - a
    if d == 0:
        return abs(z - a)
    t = min(max(((z - a) * d.conjugate()).real / abs(d) ** 2, 0.0), 1.0)
    return abs(z - (a + t * d))


def _arc_is_simple(arc: Arc, values: Sequence[complex]) -> bool:
    """No critical value on the arc except at the anchors, and no overlap between pieces."""
    scale = max([abs(v - w) for v in values for w in values] + [1e-300])
    eps = 1e-9 * scale
    pieces = arc.pieces()
    for k, piece in enumerate(pieces):
        for a, b in zip(piece, piece[1:]):
            for v in values:
                if _dist_to_segment(v, a, b) < eps and abs(v - piece[0]) > eps and abs(v - piece[-1]) > eps:
                    return False
    if len(pieces) == 2:
        first, second = pieces
        # the two pieces may only meet at the shared middle anchor
        probe = [first[0] + f * (first[1] - first[0]) for f in (0.25, 0.5, 0.75)] if len(first) == 2 else []
        for z in probe:
            if any(_dist_to_segment(z, a, b) < eps for a, b in zip(second, second[1:])):
                return False
    return True


# -- monodromy -----------------------------------------------------------------

def _loop_path(base: complex, center: complex, radius: float, samples: int = 32) -> list[complex]:
    direction = (center - base) / abs(center - base)
    entry = center - radius * direction
    start = cmath.phase(entry - center)
    circle = [center + radius * cmath.exp(1j * (start + 2 * math.pi * k / samples))
              for k in range(samples + 1)]
    return [base] + circle + [base]


def monodromy(p: CPoly, base: complex | None = None, tol: float = DEFAULT_TOL) -> MonodromyData:
    """Permutations of the sheets over ``base`` for a loop around each critical value.

    Loops are ordered by the argument of ``value - base``; with the default
    base point below all critical values their product in that order goes
    once around infinity and is an n-cycle.
    """
    pc = classify(p, tol)
    vals = list(pc.values)
    n = p.degree
    spread = max([abs(v - w) for v in vals for w in vals] + [1.0])
    if base is None:
        center = sum(vals) / len(vals)
        base = center - 1j * 1.5 * spread + 0.0123 * spread
    base_pre = roots(p - base, tol)
    if len(base_pre) != n:
        raise LiftDivergence("base point is not a regular value")
    z0 = np.array([r.location for r in base_pre])
    vals.sort(key=lambda v: cmath.phase(v - base))
    perms = []
    for v in vals:
        others = [abs(v - w) for w in pc.values if w != v]
        radius = 0.25 * min(others) if others else 0.25 * abs(v - base)
        radius = min(radius, 0.25 * abs(v - base))
        zend, _ = track_sheets(p, z0, _loop_path(base, v, radius), max_step=0.25)
        perm = [int(np.argmin(np.abs(z0 - x))) for x in zend]
        if sorted(perm) != list(range(n)):
            raise LiftDivergence("loop around %s did not return a permutation" % v)
        perms.append(tuple(perm))
    inf = tuple(range(n))
    for g in perms:
        inf = tuple(g[i] for i in inf)
    return MonodromyData(tuple(vals), tuple(perms), inf, group_order(perms))


def group_order(perms: Sequence[Sequence[int]]) -> int:
    """Order of the permutation group generated by ``perms`` (breadth-first closure)."""
    perms = [tuple(g) for g in perms]
    if not perms:
        return 1
    n = len(perms[0])
    ident = tuple(range(n))
    seen = {ident}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in perms:
            y = tuple(g[i] for i in x)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return len(seen)


def cycle_type(perm: Sequence[int]) -> tuple[int, ...]:
    seen, out = set(), []
    for i in range(len(perm)):
        if i in seen:
            continue
        k, j = 0, i
        while j not in seen:
            seen.add(j)
            j = perm[j]
            k += 1
        out.append(k)
    return tuple(sorted(out, reverse=True))


# -- SVG -----------------------------------------------------------------------

_STYLE = {"size": 480, "margin": 24, "radius": 5.0, "stroke": "#222", "width": 1.5}


def render_svg(g: EmbeddedGraph, style: dict | None = None) -> str:
    """SVG 1.1 drawing; white vertices hollow, black filled, grey as squares."""
    st = dict(_STYLE, **(style or {}))
    pts = [v.location for v in g.vertices] + [z for e in g.edges for z in e.curve]
    xs = [z.real for z in pts]
    ys = [z.imag for z in pts]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    span = max(x1 - x0, y1 - y0, 1e-9)
    size, margin = st["size"], st["margin"]
    k = (size - 2 * margin) / span

    def tx(z):
        return margin + (z.real - x0) * k, size - margin - (z.imag - y0) * k

    lines = ['<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
             '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="%d" height="%d" '
             'viewBox="0 0 %d %d">' % (size, size, size, size),
             '<g fill="none" stroke="%s" stroke-width="%.2f">' % (st["stroke"], st["width"])]
    for e in g.edges:
        coords = " L ".join("%.2f %.2f" % tx(z) for z in e.curve)
        lines.append('<path d="M %s"/>' % coords)
    lines.append("</g>")
    lines.append('<g stroke="%s" stroke-width="%.2f">' % (st["stroke"], st["width"]))
    r = st["radius"]
    for v in g.vertices:
        x, y = tx(v.location)
        if v.color == GREY:
            lines.append('<rect x="%.2f" y="%.2f" width="%.2f" height="%.2f" fill="#999"/>'
                         % (x - r, y - r, 2 * r, 2 * r))
        else:
            fill = "#fff" if v.color == WHITE else "#000"
            lines.append('<circle cx="%.2f" cy="%.2f" r="%.2f" fill="%s"/>' % (x, y, r, fill))
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
