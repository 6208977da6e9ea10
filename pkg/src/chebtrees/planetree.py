"""Bicolored plane trees.

A plane tree is stored as a rotation system: every vertex carries the
counterclockwise cyclic order of its neighbours.  Trees coming from
Zolotarev polynomials carry a third colour, ``grey``; everything here
works for them too, the only requirement being that adjacent vertices
have different colours.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from importlib import resources
from typing import Iterable, Sequence

WHITE = "white"
BLACK = "black"
GREY = "grey"
COLORS = (WHITE, BLACK, GREY)
_CHAR = {WHITE: "w", BLACK: "b", GREY: "g"}


class TreeError(ValueError):
    pass


class NotATree(TreeError):
    pass


class ColorClash(TreeError):
    pass


class BadRotation(TreeError):
    pass


@dataclass(frozen=True)
class Vertex:
    id: int
    color: str
    neighbors: tuple[int, ...]


@dataclass(frozen=True)
class Passport:
    """Degree sequences of white and black vertices, nonincreasing."""

    white: tuple[int, ...]
    black: tuple[int, ...]
    trimmed: bool = False

    @property
    def n(self) -> int:
        return sum(self.white)

    def trim(self) -> "Passport":
        return Passport(tuple(k for k in self.white if k > 1),
                        tuple(k for k in self.black if k > 1), True)

    def swapped(self) -> "Passport":
        return Passport(self.black, self.white, self.trimmed)

    def __str__(self) -> str:
        return "<%s|%s>" % (",".join(map(str, self.white)), ",".join(map(str, self.black)))


@dataclass(frozen=True)
class TriPassport:
    """Multiplicity sequences over three critical values.

    ``groups`` keeps the order in which the values were listed; use
    :meth:`key` to compare passports irrespective of that order.
    """

    groups: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]
    n: int
    trimmed: bool = False

    def __post_init__(self):
        if len(self.groups) != 3:
            raise ValueError("a TriPassport has exactly three groups")
        object.__setattr__(self, "groups",
                           tuple(tuple(sorted(g, reverse=True)) for g in self.groups))

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> "TriPassport":
        """Parse ``"<2,2|2|2>"``; a trimmed passport needs ``n`` to be completed."""
        body = text.strip().strip("<>⟨⟩ ")
        groups = [tuple(int(x) for x in part.split(",") if x.strip()) for part in body.split("|")]
        if n is None:
            sums = {sum(g) for g in groups}
            if len(sums) != 1:
                raise ValueError("trimmed passport %r needs n" % text)
            return cls(tuple(groups), sums.pop())
        trimmed = any(sum(g) != n for g in groups)
        return cls(tuple(groups), n, trimmed)

    def full(self) -> "TriPassport":
        if not self.trimmed:
            return self
        return TriPassport(tuple(g + (1,) * (self.n - sum(g)) for g in self.groups), self.n)

    def trim(self) -> "TriPassport":
        return TriPassport(tuple(tuple(k for k in g if k > 1) for g in self.groups), self.n, True)

    def point_count(self) -> int:
        """r + s + t of the full form."""
        return sum(len(g) for g in self.full().groups)

    def is_valid(self) -> bool:
        f = self.full()
        return (all(sum(g) == self.n for g in f.groups)
                and sum(k - 1 for g in f.groups for k in g) == self.n - 1)

    def key(self) -> tuple:
        return (self.n, self.trimmed, tuple(sorted(self.groups, reverse=True)))

    def same_as(self, other: "TriPassport") -> bool:
        return self.trim().key() == other.trim().key()

    def __str__(self) -> str:
        return "<%s>" % "|".join(",".join(map(str, g)) for g in sorted(self.groups, reverse=True))


@dataclass(frozen=True)
class CanonicalCode:
    code: str
    mirror_code: str


@dataclass(frozen=True, eq=False)
class PlaneTree:
    vertices: tuple[Vertex, ...]

    def __post_init__(self):
        _validate(self.vertices)

    @property
    def n_edges(self) -> int:
        return len(self.vertices) - 1

    @cached_property
    def _index(self) -> dict[int, Vertex]:
        return {v.id: v for v in self.vertices}

    def vertex(self, vid: int) -> Vertex:
        return self._index[vid]

    def degree(self, vid: int) -> int:
        return len(self._index[vid].neighbors)

    def edges(self) -> list[tuple[int, int]]:
        return sorted((v.id, u) for v in self.vertices for u in v.neighbors if v.id < u)

    def degrees(self, color: str) -> tuple[int, ...]:
        return tuple(sorted((len(v.neighbors) for v in self.vertices if v.color == color),
                            reverse=True))

    def __eq__(self, other):
        return isinstance(other, PlaneTree) and canonical_code(self) == canonical_code(other)

    def __hash__(self):
        return hash(_code(self, True))

    def __repr__(self):
        return "PlaneTree(%s)" % _code(self, True)

    def to_dict(self) -> dict:
        return {"n_edges": self.n_edges,
                "vertices": [{"id": v.id, "color": v.color, "neighbors": list(v.neighbors)}
                             for v in self.vertices]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _validate(vertices: Sequence[Vertex]) -> None:
    index = {}
    for v in vertices:
        if v.id in index:
            raise BadRotation("duplicate vertex id %d" % v.id)
        if v.color not in COLORS:
            raise TreeError("unknown colour %r" % v.color)
        index[v.id] = v
    if not index:
        raise NotATree("empty graph")
    n_half = 0
    for v in vertices:
        if len(set(v.neighbors)) != len(v.neighbors):
            raise BadRotation("vertex %d lists a neighbour twice" % v.id)
        for u in v.neighbors:
            if u == v.id:
                raise NotATree("loop at vertex %d" % u)
            if u not in index:
                raise BadRotation("vertex %d points at missing vertex %d" % (v.id, u))
            if v.id not in index[u].neighbors:
                raise BadRotation("edge %d-%d is not symmetric" % (v.id, u))
            if index[u].color == v.color:
                raise ColorClash("adjacent vertices %d and %d are both %s" % (v.id, u, v.color))
        n_half += len(v.neighbors)
    if n_half != 2 * (len(vertices) - 1):
        raise NotATree("%d vertices but %d edges" % (len(vertices), n_half // 2))
    seen = {vertices[0].id}
    stack = [vertices[0].id]
    while stack:
        for u in index[stack.pop()].neighbors:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    if len(seen) != len(vertices):
        raise NotATree("graph is disconnected")


def build_tree(spec) -> PlaneTree:
    """Build a tree from a JSON-like dict or a sequence of ``(id, color, neighbours)``."""
    if isinstance(spec, str):
        spec = json.loads(spec)
    if isinstance(spec, dict):
        verts = [Vertex(int(v["id"]), v["color"], tuple(int(u) for u in v["neighbors"]))
                 for v in spec["vertices"]]
        tree = PlaneTree(tuple(verts))
        if "n_edges" in spec and int(spec["n_edges"]) != tree.n_edges:
            raise NotATree("n_edges=%s but the tree has %d edges" % (spec["n_edges"], tree.n_edges))
        return tree
    return PlaneTree(tuple(Vertex(int(i), c, tuple(nb)) for i, c, nb in spec))


def from_drawing(points: Sequence[Sequence[float]], edges: Iterable[tuple[int, int]],
                 colors: Sequence[str] | None = None) -> PlaneTree:
    """Tree from a straight-line drawing; rotation read off edge angles.

    Without ``colors`` the bipartition is coloured canonically (see
    :func:`canonical_coloring`).
    """
    adj: dict[int, list[int]] = {i: [] for i in range(len(points))}
    for i, j in edges:
        adj[i].append(j)
        adj[j].append(i)

    def angle(i, j):
        return math.atan2(points[j][1] - points[i][1], points[j][0] - points[i][0])

    rot = {i: tuple(sorted(nb, key=lambda j: angle(i, j))) for i, nb in adj.items()}
    if colors is None:
        side = _bipartition(rot)
        tree = PlaneTree(tuple(Vertex(i, WHITE if side[i] == 0 else BLACK, rot[i]) for i in rot))
        return canonical_coloring(tree)
    return PlaneTree(tuple(Vertex(i, colors[i], rot[i]) for i in rot))


def _bipartition(rot: dict[int, Sequence[int]]) -> dict[int, int]:
    start = next(iter(rot))
    side = {start: 0}
    stack = [start]
    while stack:
        v = stack.pop()
        for u in rot[v]:
            if u not in side:
                side[u] = 1 - side[v]
                stack.append(u)
    return side


def passport(t: PlaneTree) -> Passport:
    return Passport(t.degrees(WHITE), t.degrees(BLACK))


def tri_degrees(t: PlaneTree) -> dict[str, tuple[int, ...]]:
    return {c: t.degrees(c) for c in COLORS}


# -- canonical codes -----------------------------------------------------------

def _subtree(t: PlaneTree, v: int, parent: int, colored: bool) -> str:
    nb = t.vertex(v).neighbors
    k = nb.index(parent)
    children = nb[k + 1:] + nb[:k]
    head = _CHAR[t.vertex(v).color] if colored else "."
    return head + "(" + "".join(_subtree(t, u, v, colored) for u in children) + ")"


def _code(t: PlaneTree, colored: bool) -> str:
    best = None
    for v in t.vertices:
        if not v.neighbors:
            return (_CHAR[v.color] if colored else ".") + "()"
        subs = [_subtree(t, u, v.id, colored) for u in v.neighbors]
        head = _CHAR[v.color] if colored else "."
        for k in range(len(subs)):
            word = head + "(" + "".join(subs[k:] + subs[:k]) + ")"
            if best is None or word < best:
                best = word
    return best


def canonical_code(t: PlaneTree) -> CanonicalCode:
    """Code identifying ``t`` up to orientation-preserving isotopy.

    Minimum over all root darts of the depth-first contour word.  Colours
    are part of the code.
    """
    return CanonicalCode(_code(t, True), _code(mirror(t), True))


def shape_code(t: PlaneTree) -> str:
    """Like :func:`canonical_code` but blind to colours."""
    return _code(t, False)


def mirror(t: PlaneTree) -> PlaneTree:
    return PlaneTree(tuple(Vertex(v.id, v.color, tuple(reversed(v.neighbors))) for v in t.vertices))


def swap_colors(t: PlaneTree) -> PlaneTree:
    sw = {WHITE: BLACK, BLACK: WHITE, GREY: GREY}
    return PlaneTree(tuple(Vertex(v.id, sw[v.color], v.neighbors) for v in t.vertices))


def same_tree(t1: PlaneTree, t2: PlaneTree, *, up_to_mirror: bool = False,
              up_to_swap: bool = False) -> bool:
    """Isotopy test, optionally modulo reflection and/or colour swap."""
    if t1.n_edges != t2.n_edges:
        return False
    targets = {_code(t2, True)}
    if up_to_mirror:
        targets.add(_code(mirror(t2), True))
    if up_to_swap:
        targets |= {_code(swap_colors(x), True) for x in (t2, mirror(t2))} if up_to_mirror \
            else {_code(swap_colors(t2), True)}
    return _code(t1, True) in targets


def canonical_coloring(t: PlaneTree) -> PlaneTree:
    """Recolour a black/white tree so white is the smaller colour class.

    The larger total of (degree - 1) then sits on white, matching the
    value-0 convention of :func:`chebtrees.shabat.normalize`.  Ties go to
    the lexicographically smaller code.
    """
    nw = sum(1 for v in t.vertices if v.color == WHITE)
    nb = sum(1 for v in t.vertices if v.color == BLACK)
    other = swap_colors(t)
    if nb < nw or (nb == nw and _code(other, True) < _code(t, True)):
        return other
    return t


def is_chain(t: PlaneTree) -> bool:
    return all(len(v.neighbors) <= 2 for v in t.vertices)


def is_star(t: PlaneTree) -> bool:
    return any(len(v.neighbors) == t.n_edges for v in t.vertices)


def relabel(t: PlaneTree, perm: dict[int, int]) -> PlaneTree:
    return PlaneTree(tuple(Vertex(perm[v.id], v.color, tuple(perm[u] for u in v.neighbors))
                           for v in t.vertices))


# -- enumeration ---------------------------------------------------------------

def _dyck_words(n: int):
    def rec(word, opened, depth):
        if len(word) == 2 * n:
            yield word
            return
        if opened < n:
            yield from rec(word + "(", opened + 1, depth + 1)
        if depth > 0:
            yield from rec(word + ")", opened, depth - 1)
    yield from rec("", 0, 0)


def _tree_from_dyck(word: str) -> PlaneTree:
    children: dict[int, list[int]] = {0: []}
    parent = {0: None}
    stack = [0]
    for ch in word:
        if ch == "(":
            v = len(children)
            children[v] = []
            parent[v] = stack[-1]
            children[stack[-1]].append(v)
            stack.append(v)
        else:
            stack.pop()
    verts = []
    for v in children:
        # counterclockwise: parent first, then children in reverse drawing order
        nb = ([] if parent[v] is None else [parent[v]]) + children[v][::-1]
        verts.append((v, nb))
    side = _bipartition({v: nb for v, nb in verts})
    return PlaneTree(tuple(Vertex(v, WHITE if side[v] == 0 else BLACK, tuple(nb))
                           for v, nb in verts))


def enumerate_trees(n_edges: int, *, mirror_classes: bool = False,
                    include_stars: bool = False) -> list[PlaneTree]:
    """One canonically coloured representative per isotopy class.

    Stars are skipped unless asked for; for ``n_edges <= 2`` the only tree
    is a star and a chain at once and is always kept.
    """
    if n_edges < 1:
        raise ValueError("n_edges must be >= 1")
    found: dict[str, PlaneTree] = {}
    for word in _dyck_words(n_edges):
        t = _tree_from_dyck(word)
        key = shape_code(t)
        if mirror_classes:
            key = min(key, shape_code(mirror(t)))
        if key not in found:
            found[key] = t
    out = []
    for key in sorted(found):
        t = canonical_coloring(found[key])
        if n_edges >= 3 and not include_stars and is_star(t):
            continue
        out.append(t)
    return out


# -- reference drawings --------------------------------------------------------

def _load_drawings() -> dict[str, dict]:
    raw = resources.files("chebtrees").joinpath("data/drawings.json").read_text()
    return {d["name"]: d for d in json.loads(raw)["drawings"]}


_DRAWINGS: dict[str, dict] | None = None


def reference_tree(name: str) -> PlaneTree:
    """A tree from the bundled figure transcriptions, e.g. ``"n6/T12"``.

    ``n6/T8`` and ``n6/T11`` are the mirror images of ``n6/T7`` and
    ``n6/T10``.
    """
    global _DRAWINGS
    if _DRAWINGS is None:
        _DRAWINGS = _load_drawings()
    mirrors = {"n6/T8": "n6/T7", "n6/T11": "n6/T10"}
    if name in mirrors:
        return mirror(reference_tree(mirrors[name]))
    d = _DRAWINGS[name]
    return from_drawing(d["points"], [tuple(e) for e in d["edges"]], d.get("colors"))


def reference_names(prefix: str = "") -> list[str]:
    global _DRAWINGS
    if _DRAWINGS is None:
        _DRAWINGS = _load_drawings()
    names = list(_DRAWINGS)
    if prefix == "n6/" or prefix == "n6":
        names += ["n6/T8", "n6/T11"]
    names = [n for n in names if n.startswith(prefix)]
    return sorted(names, key=_natural_key)


def _natural_key(name: str):
    import re
    return [int(p) if p.isdigit() else p for p in re.split(r"(\d+)", name)]


def identify(t: PlaneTree, names: Iterable[str], *, up_to_mirror: bool = False,
             up_to_swap: bool = True) -> str | None:
    """Name of the first reference tree isotopic to ``t``."""
    for name in names:
        ref = reference_tree(name)
        if same_tree(t, ref, up_to_mirror=up_to_mirror, up_to_swap=up_to_swap):
            return name
    return None


def degree_multiset(t: PlaneTree) -> Counter:
    return Counter((v.color, len(v.neighbors)) for v in t.vertices)
