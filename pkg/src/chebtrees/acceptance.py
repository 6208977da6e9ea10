"""The reproduction checklist, as plain functions.

Each check returns a :class:`Check` with a pass flag and the numbers it
looked at.  A check passes only when its claim holds as stated; when a
stated claim is wrong the detail records what was found instead.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np


@dataclass
class Check:
    number: int
    title: str
    passed: bool
    detail: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self) -> str:
        return "%s  %2d  %s" % ("PASS" if self.passed else "FAIL", self.number, self.title)


def _names_match(got: list[str | None], want: list[str]) -> bool:
    return sorted(x or "?" for x in got) == sorted(want)


def check_enumeration() -> Check:
    from chebtrees.planetree import enumerate_trees
    c5, c6 = len(enumerate_trees(5)), len(enumerate_trees(6))
    m6 = len(enumerate_trees(6, mirror_classes=True))
    return Check(1, "tree counts 5 / 13 / 11 mirror classes", (c5, c6, m6) == (5, 13, 11),
                 {"n5": c5, "n6": c6, "n6_mirror_classes": m6})


def check_passport_example() -> Check:
    from chebtrees.planetree import passport, reference_tree
    got = str(passport(reference_tree("figure_passport")))
    return Check(2, "figure tree passport <3,2|2,1,1,1>", got == "<3,2|2,1,1,1>", {"passport": got})


def check_zolotarev_example() -> Check:
    from chebtrees.polynum import CPoly, classify
    p = CPoly.from_array(3 * np.polynomial.polynomial.polyfromroots([0, 0, 1, 1, 1 / 3]))
    pc = classify(p)
    want = [0.0, 4 / 81, -32 / 3125]
    vals = sorted(pc.values, key=lambda z: z.real)
    ok = pc.kind == "Zolotarev" and len(vals) == 3 and all(
        abs(v - w) <= 1e-10 for v, w in zip(vals, sorted(want)))
    trimmed = str(pc.passport.trim()) if pc.kind == "Zolotarev" else None
    ok = ok and trimmed == "<2,2|2|2>"
    return Check(3, "x^2(x-1)^2(3x-1) is Zolotarev <2,2|2|2>", ok,
                 {"kind": pc.kind, "values": [[v.real, v.imag] for v in vals], "passport": trimmed})


def _scan_check(number: int, fam: str) -> Check:
    from chebtrees.planetree import reference_names
    from chebtrees.zhomotopy.families import load_catalog, to_complex
    from chebtrees.zhomotopy.scan import degeneration_scan, match_points
    cat = load_catalog()
    exp = cat["degenerations"][fam]
    found = degeneration_scan(cat["families"][fam], exp["driving"], names=reference_names("n5/"))
    want = [to_complex(x) for x in exp["points"]]
    exact = match_points(found, want, 1e-9)
    trees_ok = True
    for z, name in zip(want, exp["trees"]):
        hit = [d for d in found if abs(d.value - z) <= 1e-9 * max(1.0, abs(z))]
        trees_ok &= bool(hit) and hit[0].name == name
    extra = [d for d in found if not any(abs(d.value - z) <= 1e-9 * max(1.0, abs(z)) for z in want)]
    detail = {"found": [[d.value.real, d.value.imag, d.name] for d in found],
              "listed_points_found_with_trees": trees_ok,
              "extra": [[d.value.real, d.value.imag, d.name] for d in extra]}
    return Check(number, "degenerations of %s" % fam, exact and trees_ok, detail)


def check_family1() -> Check:
    return _scan_check(4, "quintic-3-2-2")


def check_family2() -> Check:
    return _scan_check(5, "quintic-2-2-2")


def check_discriminant() -> Check:
    from chebtrees.exact import FACTOR_2, quartic_discriminant, verify_degree5_factorization
    r = verify_degree5_factorization()
    ok = r["e1"] >= 1 and r["e2"] >= 1 and 12 * (r["e1"] + r["e2"]) == 60 and quartic_discriminant() == FACTOR_2
    return Check(6, "disc_y(s) = const * F1^e1 * F2^e2", ok,
                 {"constant": str(r["constant"]), "e1": r["e1"], "e2": r["e2"]})


def check_degree5_membership() -> Check:
    from chebtrees.planetree import reference_tree
    from chebtrees.shabat import solve_tree
    from chebtrees.zhomotopy.degree5 import degree5_membership, depressed_coefficients, membership_of
    F = Fraction
    exact = {
        "n5/T1": depressed_coefficients([0, 0, 0, F(-1), F(1)]),
        "n5/T2": depressed_coefficients([0, 0, F(3, 5), F(-8, 5), F(1)]),
        "n5/T3": (F(-1, 2), F(0), F(1, 16)),
        "n5/T5": (F(-3, 4), F(0), F(1, 16)),
    }
    want = {"n5/T1": "both", "n5/T2": "both", "n5/T3": "C2_only", "n5/T4": "both", "n5/T5": "C1_only"}
    got = {k: degree5_membership(v) for k, v in exact.items()}
    numeric = {k: membership_of(solve_tree(reference_tree(k)).poly) for k in want}
    ok = all(got[k] == want[k] for k in got) and numeric == want
    return Check(7, "degree-5 membership T5 C1, T3 C2, T1/T2/T4 both", ok, {"exact": got, "numeric": numeric})


def check_round_trip() -> Check:
    from chebtrees.planetree import canonical_code, enumerate_trees
    from chebtrees.pullback import extract_tree
    from chebtrees.shabat import solve_tree
    bad = []
    total = 0
    for n in (5, 6):
        for t in enumerate_trees(n):
            total += 1
            got = canonical_code(extract_tree(solve_tree(t).poly)).code
            if got != canonical_code(t).code:
                bad.append(canonical_code(t).code)
    return Check(8, "solve then extract returns every 5- and 6-edge tree", not bad,
                 {"trees": total, "mismatches": bad})


def check_obstructions() -> Check:
    from chebtrees.zhomotopy.obstruct import zhomotopy_graph
    g5 = {frozenset(p) for p in zhomotopy_graph(5).blocked_pairs()}
    g6 = {frozenset(p) for p in zhomotopy_graph(6, mirror_classes=False).blocked_pairs()}
    w5 = {frozenset(("n5/T3", "n5/T5"))}
    w6 = {frozenset(p) for p in (("n6/T3", "n6/T13"), ("n6/T7", "n6/T13"), ("n6/T8", "n6/T13"),
                                 ("n6/T6", "n6/T12"))}
    return Check(9, "blocked pairs n=5 {(T3,T5)}, n=6 four pairs", g5 == w5 and g6 == w6,
                 {"n5": sorted(sorted(p) for p in g5), "n6": sorted(sorted(p) for p in g6)})


def check_tracking() -> Check:
    from chebtrees.planetree import reference_tree, same_tree
    from chebtrees.zhomotopy.families import load_catalog
    from chebtrees.zhomotopy.track import track_catalog
    from chebtrees.planetree import TriPassport
    out, ok = {}, True
    for pid, entry in load_catalog()["paths"].items():
        res = track_catalog(pid)
        exp = entry["expect"]
        ends = [reference_tree(e) for e in exp["ends"]]
        got = res.endpoint_tree_objects
        ends_ok = all(g is not None and same_tree(g, e, up_to_mirror=True, up_to_swap=True)
                      for g, e in zip(got, ends))
        n = ends[0].n_edges
        pp_ok = res.interior_passport is not None and \
            res.interior_passport.key() == TriPassport.parse(exp["passport"], n).trim().key()
        this = ends_ok and pp_ok and res.passport_stable
        ok &= this
        out[pid] = {"ok": this, "passport": str(res.interior_passport), "samples": len(res.samples)}
    return Check(10, "tracked homotopies keep their passport and reach the right trees", ok, out)


def check_degree7(count: int = 20, seed: int = 0, jobs: int = 1) -> Check:
    from chebtrees.zhomotopy.degree7 import degree7_samples
    samples = degree7_samples(count, seed=seed, jobs=jobs)
    orders = [s.order for s in samples]
    all_in_table = all(all(name and name.startswith("n7/zol/%s/" % s.component) for _, name in s.trees)
                       for s in samples)
    ok = len(samples) >= 20 and set(orders) == {168, 2520} and all_in_table
    return Check(11, "degree-7 samples: orders 168/2520 with matching tables", ok,
                 {"samples": len(samples), "orders": {o: orders.count(o) for o in set(orders)},
                  "all_trees_in_own_table": all_in_table})


def check_final_pair() -> Check:
    from chebtrees.zhomotopy.degree7 import final_pair
    from chebtrees.zhomotopy.obstruct import pair_obstructed
    a, b = final_pair()
    in_class = pair_obstructed(a, b, "<2,2|2,2|2,2>")
    engine_only = pair_obstructed(a, b, "<2,2|2,2|2,2>", components=False)
    free = pair_obstructed(a, b)
    shared = free.certificate.get("shared")
    detail = {"in_class": in_class.label, "mechanism": in_class.certificate.get("mechanism"),
              "passport_engine_in_class": engine_only.label, "unrestricted": free.label, "shared": shared}
    literal = (in_class.blocked and engine_only.blocked and not free.blocked and shared == "<4|2|2>")
    return Check(12, "final 7-edge pair blocked in <2,2|2,2|2,2>, shared <4|2|2>", literal, detail)


CHECKS: dict[int, Callable[[], Check]] = {
    1: check_enumeration, 2: check_passport_example, 3: check_zolotarev_example, 4: check_family1,
    5: check_family2, 6: check_discriminant, 7: check_degree5_membership, 8: check_round_trip,
    9: check_obstructions, 10: check_tracking, 11: check_degree7, 12: check_final_pair,
}


def run_all(jobs: int = 1, only: list[int] | None = None) -> list[Check]:
    out = []
    for k, fn in CHECKS.items():
        if only and k not in only:
            continue
        t0 = time.time()
        c = fn(jobs=jobs) if k == 11 else fn()
        c.seconds = time.time() - t0
        out.append(c)
    return out
