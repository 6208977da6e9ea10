"""Reference implementations used only by the tests.

They share no code with the package: plane trees are handled as plain
rotation dictionaries and canonicalised by contour words.
"""

from __future__ import annotations

import random


def rotation_of(tree_dict: dict) -> dict[int, list[int]]:
    return {v["id"]: list(v["neighbors"]) for v in tree_dict["vertices"]}


def contour_word(rot: dict[int, list[int]], u: int, v: int) -> str:
    """Walk the face of the tree starting along the half-edge u -> v.

    At each vertex the walk leaves along the neighbour after the one it
    came from, in counterclockwise order.  Edges met for the first time
    give '1', the second time '0'.
    """
    n = sum(len(x) for x in rot.values()) // 2
    seen = set()
    word = []
    for _ in range(2 * n):
        e = frozenset((u, v))
        word.append("0" if e in seen else "1")
        seen.add(e)
        nb = rot[v]
        u, v = v, nb[(nb.index(u) + 1) % len(nb)]
    return "".join(word)


def contour_canon(rot: dict[int, list[int]]) -> str:
    if len(rot) == 1:
        return ""
    return min(contour_word(rot, u, v) for u in rot for v in rot[u])


def mirror_rotation(rot):
    return {k: list(reversed(v)) for k, v in rot.items()}


def dyck_words(n: int):
    def rec(prefix, opens, closes):
        if opens == closes == n:
            yield prefix
            return
        if opens < n:
            yield from rec(prefix + "1", opens + 1, closes)
        if closes < opens:
            yield from rec(prefix + "0", opens, closes + 1)
    yield from rec("", 0, 0)


def rotation_from_dyck(word: str) -> dict[int, list[int]]:
    """Rooted plane tree of a Dyck word; the root's parent slot is empty."""
    rot = {0: []}
    stack = [0]
    for ch in word:
        if ch == "1":
            child = len(rot)
            rot[child] = [stack[-1]]
            rot[stack[-1]].append(child)
            stack.append(child)
        else:
            stack.pop()
    return rot


def plane_tree_classes(n_edges: int, *, mirror: bool = False) -> set[str]:
    """Brute force: every rooted plane tree, reduced to an unrooted class."""
    out = set()
    for w in dyck_words(n_edges):
        rot = rotation_from_dyck(w)
        c = contour_canon(rot)
        if mirror:
            c = min(c, contour_canon(mirror_rotation(rot)))
        out.add(c)
    return out


def is_star_rotation(rot) -> bool:
    return any(len(v) == len(rot) - 1 for v in rot.values())


def random_tree_dict(n_edges: int, rng: random.Random) -> dict:
    """Random plane tree with a proper 2-colouring, as a JSON-style dict."""
    rot = {0: []}
    for k in range(1, n_edges + 1):
        parent = rng.randrange(k)
        pos = rng.randrange(len(rot[parent]) + 1)
        rot[parent].insert(pos, k)
        rot[k] = [parent]
    color = {0: "white"}
    stack = [0]
    while stack:
        v = stack.pop()
        for u in rot[v]:
            if u not in color:
                color[u] = "black" if color[v] == "white" else "white"
                stack.append(u)
    return {"n_edges": n_edges,
            "vertices": [{"id": v, "color": color[v], "neighbors": rot[v]} for v in sorted(rot)]}


def scramble(tree_dict: dict, rng: random.Random) -> dict:
    """Relabel vertices and rotate every cyclic list; the isotopy class is unchanged."""
    ids = [v["id"] for v in tree_dict["vertices"]]
    new = ids[:]
    rng.shuffle(new)
    perm = dict(zip(ids, [100 + x for x in new]))
    verts = []
    for v in tree_dict["vertices"]:
        nb = [perm[u] for u in v["neighbors"]]
        k = rng.randrange(len(nb)) if nb else 0
        verts.append({"id": perm[v["id"]], "color": v["color"], "neighbors": nb[k:] + nb[:k]})
    rng.shuffle(verts)
    return {"n_edges": tree_dict["n_edges"], "vertices": verts}


# -- degeneration feasibility, by brute force ------------------------------------------

def full_passport_triples(n: int) -> set[tuple]:
    """Unordered triples of partitions of n, each with a part above 1, with 2n+1 parts in all."""
    from sympy.utilities.iterables import partitions
    parts = []
    for p in partitions(n):
        flat = tuple(sorted((k for k, m in p.items() for _ in range(m)), reverse=True))
        if flat[0] > 1:
            parts.append(flat)
    out = set()
    for a in parts:
        for b in parts:
            for c in parts:
                if len(a) + len(b) + len(c) == 2 * n + 1:
                    out.add(tuple(sorted((a, b, c), reverse=True)))
    return out


def _assign(points, degrees):
    """Give every labelled point (group, multiplicity) a vertex so that in each
    vertex of degree k both groups sum to k and there are k + 1 points."""
    k = len(degrees)
    sums = [[0, 0] for _ in range(k)]
    counts = [0] * k

    def rec(i):
        if i == len(points):
            return all(s == [d, d] and c == d + 1 for s, c, d in zip(sums, counts, degrees))
        g, m = points[i]
        for v in range(k):
            if sums[v][g] + m <= degrees[v] and counts[v] < degrees[v] + 1:
                sums[v][g] += m
                counts[v] += 1
                if rec(i + 1):
                    return True
                sums[v][g] -= m
                counts[v] -= 1
        return False

    return rec(0)


def feasible_brute(groups, white_degrees, black_degrees) -> bool:
    colours = (tuple(sorted(white_degrees, reverse=True)), tuple(sorted(black_degrees, reverse=True)))
    for s in range(3):
        m = [i for i in range(3) if i != s]
        for c in range(2):
            if tuple(sorted(groups[s], reverse=True)) != colours[c]:
                continue
            pts = [(0, x) for x in groups[m[0]]] + [(1, x) for x in groups[m[1]]]
            pts.sort(key=lambda p: -p[1])
            if _assign(pts, colours[1 - c]):
                return True
    return False
