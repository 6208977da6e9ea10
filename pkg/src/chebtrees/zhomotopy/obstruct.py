"""Combinatorial obstructions to Z-homotopy.

A Zolotarev path ending at a Chebyshev polynomial of a tree ``t`` loses
one of its three critical values: two of them merge, the third stays put.
The points over the standalone value cannot merge with each other (two
points over one value never collide along such a limit), so that group must
already be one colour class of ``t``.  Points over the two merging values
collapse in clusters, one per vertex of the other colour; a cluster forming
a vertex of degree ``k`` holds points of total multiplicity ``k`` from each
merging value, and ``k + 1`` points in all, because the ``k - 1`` critical
points it absorbs are exactly the multiplicities lost.

Everything works with full passports: the 1-entries matter for the counts.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Sequence

from chebtrees.planetree import (BLACK, WHITE, PlaneTree, TriPassport, canonical_code, enumerate_trees,
                                 identify, is_chain, mirror, reference_names)


@dataclass(frozen=True)
class Scheme:
    """Witness for a degeneration: which group stays, which colour it becomes,
    and the cells ``(degree, part of first merged group, part of second)``."""

    standalone: int
    standalone_color: str
    merged: tuple[int, int]
    cells: tuple[tuple[int, tuple[int, ...], tuple[int, ...]], ...]

    def to_dict(self) -> dict:
        return {"standalone": self.standalone, "standalone_color": self.standalone_color,
                "merged": list(self.merged),
                "cells": [{"degree": d, "first": list(a), "second": list(b)} for d, a, b in self.cells]}


@dataclass(frozen=True)
class Verdict:
    blocked: bool
    certificate: dict = field(default_factory=dict, compare=False)

    @property
    def label(self) -> str:
        return "blocked" if self.blocked else "not_blocked"


def _submultisets(items: tuple[int, ...], total: int):
    """Distinct sub-multisets (as sorted tuples) of ``items`` with the given sum,
    each returned with the remainder."""
    counts = sorted(Counter(items).items(), reverse=True)
    out = []

    def rec(i, left, chosen):
        if left == 0:
            rest = Counter(items)
            rest.subtract(chosen)
            out.append((tuple(chosen), tuple(sorted(rest.elements(), reverse=True))))
            return
        if i == len(counts):
            return
        k, c = counts[i]
        for use in range(min(c, left // k), -1, -1):
            rec(i + 1, left - use * k, chosen + [k] * use)

    rec(0, total, [])
    return out


@lru_cache(maxsize=None)
def _cells(g1: tuple[int, ...], g2: tuple[int, ...], degrees: tuple[int, ...]):
    """One admissible cell decomposition, or None."""
    if not degrees:
        return () if not g1 and not g2 else None
    d, rest = degrees[0], degrees[1:]
    for a, r1 in _submultisets(g1, d):
        for b, r2 in _submultisets(g2, d):
            if len(a) + len(b) != d + 1:
                continue
            tail = _cells(r1, r2, rest)
            if tail is not None:
                return ((d, a, b),) + tail
    return None


def feasible_schemes(P: TriPassport, t: PlaneTree) -> list[Scheme]:
    """All group-to-colour assignments that admit a cell decomposition (one witness each)."""
    P = P.full()
    if P.n != t.n_edges:
        raise ValueError("passport degree %d differs from the tree's %d edges" % (P.n, t.n_edges))
    colours = {WHITE: tuple(sorted(t.degrees(WHITE), reverse=True)),
               BLACK: tuple(sorted(t.degrees(BLACK), reverse=True))}
    out = []
    for s in range(3):
        m1, m2 = [i for i in range(3) if i != s]
        for col, other in ((WHITE, BLACK), (BLACK, WHITE)):
            if P.groups[s] != colours[col]:
                continue
            cells = _cells(P.groups[m1], P.groups[m2], colours[other])
            if cells is not None:
                out.append(Scheme(s, col, (m1, m2), cells))
    return out


def degeneration_feasible(P: TriPassport, t: PlaneTree, *, witness: bool = False):
    """Whether a Zolotarev family with full passport ``P`` can degenerate to ``t``.

    With ``witness=True`` returns ``(flag, scheme or None)``.
    """
    schemes = feasible_schemes(P, t)
    if witness:
        return bool(schemes), (schemes[0] if schemes else None)
    return bool(schemes)


def _partitions(n: int, largest: int | None = None):
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


@lru_cache(maxsize=None)
def full_passports(n: int) -> tuple[TriPassport, ...]:
    """Unordered triples of partitions of ``n`` with ``r + s + t = 2n + 1``.

    Each group must contain an entry above 1, otherwise its value is not
    critical and the polynomial has fewer than three critical values.
    """
    parts = [p for p in _partitions(n) if p[0] > 1]
    out = []
    for i, a in enumerate(parts):
        for j in range(i, len(parts)):
            b = parts[j]
            for c in parts[j:]:
                if len(a) + len(b) + len(c) == 2 * n + 1:
                    out.append(TriPassport((a, b, c), n))
    return tuple(out)


def _matches_class(P: TriPassport, trimmed: TriPassport | None) -> bool:
    return trimmed is None or P.trim().key() == trimmed.trim().key()


def pair_obstructed(t1: PlaneTree, t2: PlaneTree, trimmed: TriPassport | str | None = None, *,
                    components: bool = True) -> Verdict:
    """Blocked when no full passport (in the optional trimmed class) can
    degenerate to both trees.  Blocked proves the trees are not Z-homotopic;
    not blocked proves nothing.

    For the degree-7 class <2,2|2,2|2,2> the passports alone cannot separate
    trees, so when ``components`` is set a pair that survives the passport
    test is also checked against the two components of that variety (see
    :mod:`chebtrees.zhomotopy.degree7`).
    """
    if t1.n_edges != t2.n_edges:
        raise ValueError("trees have different edge counts")
    n = t1.n_edges
    if isinstance(trimmed, str):
        trimmed = TriPassport.parse(trimmed, n)
    failures = []
    for P in full_passports(n):
        if not _matches_class(P, trimmed):
            continue
        ok1, w1 = degeneration_feasible(P, t1, witness=True)
        ok2, w2 = degeneration_feasible(P, t2, witness=True)
        if ok1 and ok2:
            shared = {"shared": str(P.trim()), "shared_full": _full_str(P),
                      "witness_1": w1.to_dict(), "witness_2": w2.to_dict()}
            if components and trimmed is not None and _is_septic_class(trimmed):
                from chebtrees.zhomotopy.degree7 import components_separate
                separate, cert = components_separate(t1, t2)
                if separate:
                    return Verdict(True, {"class": str(trimmed), "mechanism": "components",
                                          "passport_engine": shared, "components": cert})
                shared["components"] = cert
            return Verdict(False, shared)
        failures.append({"passport": _full_str(P), "t1": ok1, "t2": ok2})
    return Verdict(True, {"class": str(trimmed) if trimmed else None, "mechanism": "passports",
                          "checked": failures})


def _is_septic_class(P: TriPassport) -> bool:
    return P.n == 7 and P.trim().key() == TriPassport.parse("<2,2|2,2|2,2>", 7).trim().key()


def _full_str(P: TriPassport) -> str:
    return "<%s>" % "|".join(",".join(map(str, g)) for g in sorted(P.full().groups, reverse=True))


def shared_passports(t1: PlaneTree, t2: PlaneTree) -> list[TriPassport]:
    return [P for P in full_passports(t1.n_edges)
            if degeneration_feasible(P, t1) and degeneration_feasible(P, t2)]


def feasible_passports(t: PlaneTree) -> list[TriPassport]:
    return [P for P in full_passports(t.n_edges) if degeneration_feasible(P, t)]


@dataclass
class ZGraph:
    n_edges: int
    nodes: list[dict]
    edges: list[dict]

    def blocked_pairs(self, by: str = "name") -> set[frozenset]:
        return {frozenset((e["u"], e["v"]) if by == "name" else (e["u_code"], e["v_code"]))
                for e in self.edges if e["status"] == "blocked"}

    def to_dict(self) -> dict:
        return {"n_edges": self.n_edges, "nodes": self.nodes, "edges": self.edges}


def zhomotopy_graph(n_edges: int, *, realize: bool = False, mirror_classes: bool = True,
                    names: Sequence[str] | None = None) -> ZGraph:
    """Every pair of trees with ``n_edges`` edges, blocked or not.

    Trees are taken up to mirror by default (the verdict is mirror
    invariant).  With ``realize=True`` pairs joined by a catalog path whose
    tracking succeeds are labelled ``realized``.
    """
    trees = enumerate_trees(n_edges, mirror_classes=mirror_classes)
    if names is None:
        names = reference_names("n%d/" % n_edges)
    nodes = []
    for t in trees:
        cc = canonical_code(t)
        name = (identify(t, names) or identify(t, names, up_to_mirror=True)) if names else None
        nodes.append({"code": cc.code, "name": name or cc.code, "tree": t})
    realized = _realized_pairs(n_edges) if realize else {}
    edges = []
    for (i, a), (j, b) in combinations(enumerate(nodes), 2):
        v = pair_obstructed(a["tree"], b["tree"])
        status = v.label
        key = frozenset((a["name"], b["name"]))
        if not v.blocked and key in realized:
            status = "realized"
        edges.append({"u": a["name"], "v": b["name"], "u_code": a["code"], "v_code": b["code"],
                      "status": status, "certificate": v.certificate,
                      **({"path": realized[key]} if key in realized else {})})
    for nd in nodes:
        nd.pop("tree")
    return ZGraph(n_edges, nodes, edges)


def _realized_pairs(n_edges: int) -> dict[frozenset, str]:
    from chebtrees.zhomotopy.families import load_catalog
    from chebtrees.zhomotopy.track import track_catalog
    out = {}
    for pid, entry in load_catalog()["paths"].items():
        ends = entry["expect"]["ends"]
        if not ends[0].startswith("n%d/" % n_edges):
            continue
        res = track_catalog(pid)
        if res.is_zhomotopy:
            names = [_canon_name(e) for e in ends]
            out[frozenset(names)] = pid
    return out


def _canon_name(name: str) -> str:
    return {"n6/T8": "n6/T7", "n6/T11": "n6/T10"}.get(name, name)


def chain_pairs_blocked(n_edges: int) -> list[tuple[str, bool]]:
    """For each tree with a white and a black vertex of degree at least 3,
    whether the pair with the chain is blocked."""
    trees = enumerate_trees(n_edges)
    chains = [t for t in trees if is_chain(t)]
    out = []
    for t in trees:
        if max(t.degrees(WHITE)) >= 3 and max(t.degrees(BLACK)) >= 3:
            for c in chains:
                out.append((canonical_code(t).code, pair_obstructed(t, c).blocked
                            and pair_obstructed(mirror(t), c).blocked))
    return out
