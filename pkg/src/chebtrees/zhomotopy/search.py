"""Looking for a tracked Z-homotopy between two given trees."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from chebtrees.planetree import PlaneTree, TriPassport, reference_tree, same_tree
from chebtrees.zhomotopy.families import load_catalog
from chebtrees.zhomotopy.scan import UnsupportedFamily, degeneration_scan
from chebtrees.zhomotopy.track import (HomotopyResult, PassportJump, PathSpec, TrackNoConvergence,
                                       catalog_path, track)


@dataclass(frozen=True)
class NotFound:
    """No verified homotopy within the budget.  This says nothing about existence."""

    budget: int
    tried: tuple[str, ...] = field(default=())

    def __bool__(self):
        return False


def _same(t: PlaneTree | None, ref: PlaneTree) -> bool:
    return t is not None and same_tree(t, ref, up_to_mirror=True, up_to_swap=True)


def _connects(res: HomotopyResult, t1: PlaneTree, t2: PlaneTree, trimmed: TriPassport | None) -> bool:
    if not res.is_zhomotopy:
        return False
    if trimmed is not None and res.interior_passport.key() != trimmed.trim().key():
        return False
    a, b = res.endpoint_tree_objects
    return (_same(a, t1) and _same(b, t2)) or (_same(a, t2) and _same(b, t1))


def _class_ok(text: str, n: int, trimmed: TriPassport | None) -> bool:
    return trimmed is None or TriPassport.parse(text, n).trim().key() == trimmed.trim().key()


def find_connecting_family(t1: PlaneTree, t2: PlaneTree, trimmed: TriPassport | str | None = None, *,
                           budget: int = 12, seed: int = 0):
    """A verified tracked homotopy between ``t1`` and ``t2`` or :class:`NotFound`.

    Catalog paths whose expected end trees match are tried first.  Then, for
    every one-parameter catalog family in the class, the degeneration points
    carrying the two trees are joined by randomly bent paths, at most
    ``budget`` of them.
    """
    n = t1.n_edges
    if isinstance(trimmed, str):
        trimmed = TriPassport.parse(trimmed, n)
    cat = load_catalog()
    tried = []
    for pid, entry in cat["paths"].items():
        ends = [reference_tree(e) for e in entry["expect"]["ends"]]
        if ends[0].n_edges != n or not _class_ok(entry["expect"]["passport"], n, trimmed):
            continue
        if not ((_same(ends[0], t1) and _same(ends[1], t2)) or (_same(ends[0], t2) and _same(ends[1], t1))):
            continue
        tried.append(pid)
        f, path, _ = catalog_path(pid)
        try:
            res = track(f, path)
        except (PassportJump, TrackNoConvergence):
            continue
        if _connects(res, t1, t2, trimmed):
            return res
    rng = np.random.default_rng(seed)
    spent = 0
    for name, f in cat["families"].items():
        if f.degree != n or len(f.params) - len(f.constraints) != 1:
            continue
        driving = f.params[0]
        try:
            points = degeneration_scan(f, driving)
        except UnsupportedFamily:
            continue
        A = [d for d in points if _same(d.tree, t1)]
        B = [d for d in points if _same(d.tree, t2)]
        for da in A:
            for db in B:
                if da.value == db.value:
                    continue
                while spent < budget:
                    spent += 1
                    span = db.value - da.value
                    bend = (rng.normal() + 1j * rng.normal()) * 0.4 * abs(span)
                    path = PathSpec(driving, (da.value, 0.5 * (da.value + db.value) + bend, db.value))
                    tried.append("%s:%s" % (name, path.anchors))
                    try:
                        res = track(f, path)
                    except (PassportJump, TrackNoConvergence, ValueError):
                        continue
                    if _connects(res, t1, t2, trimmed):
                        return res
                    break
    return NotFound(budget, tuple(tried))
