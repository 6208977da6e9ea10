"""Tracking a family along a path of its driving parameter.

Every accepted sample is classified.  Inside the path the polynomials must
all be Zolotarev with one trimmed passport and ``r + s + t = 2n + 1`` full
points; a change is bracketed by bisection and raised as
:class:`PassportJump`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from chebtrees.planetree import CanonicalCode, PlaneTree, TriPassport, canonical_code
from chebtrees.polynum import DEFAULT_TOL, CPoly, PolyClass, classify
from chebtrees.zhomotopy.families import (ConstraintNoConvergence, FamilySpec, SingularConstraint,
                                          load_catalog, resolve_constraints, solver, to_complex)


class PassportJump(RuntimeError):
    def __init__(self, message, bracket=None, before=None, after=None, result=None):
        super().__init__(message)
        self.bracket = bracket
        self.before = before
        self.after = after
        self.result = result


class TrackNoConvergence(RuntimeError):
    pass


@dataclass(frozen=True)
class PathSpec:
    driving: str
    anchors: tuple[complex, ...]
    start: Mapping[str, complex] = field(default_factory=dict)
    max_step: float = 0.02
    min_step: float = 1e-9
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        anchors = tuple(to_complex(a) for a in self.anchors)
        if not anchors or not all(np.isfinite(a) for a in anchors):
            raise ValueError("path anchors must be finite")
        if any(a == b for a, b in zip(anchors, anchors[1:])):
            raise ValueError("consecutive path anchors must differ")
        object.__setattr__(self, "anchors", anchors)
        object.__setattr__(self, "start", {k: to_complex(v) for k, v in self.start.items()})

    @property
    def length(self) -> float:
        return float(sum(abs(b - a) for a, b in zip(self.anchors, self.anchors[1:])))

    def point(self, s: float) -> complex:
        """Point at arclength fraction ``s`` in [0, 1]."""
        if len(self.anchors) == 1:
            return self.anchors[0]
        target = s * self.length
        for a, b in zip(self.anchors, self.anchors[1:]):
            seg = abs(b - a)
            if target <= seg:
                return a + (b - a) * (target / seg)
            target -= seg
        return self.anchors[-1]


@dataclass(frozen=True)
class Sample:
    s: float
    params: Mapping[str, complex]
    poly: CPoly
    pclass: PolyClass

    @property
    def passport(self) -> TriPassport | None:
        return self.pclass.passport if self.pclass.kind == "Zolotarev" else None


@dataclass(frozen=True)
class HomotopyResult:
    family: str
    path: PathSpec
    samples: tuple[Sample, ...]
    endpoint_trees: tuple[CanonicalCode | None, CanonicalCode | None]
    endpoint_tree_objects: tuple[PlaneTree | None, PlaneTree | None]
    passport_trace: tuple[TriPassport, ...]
    events: tuple[dict, ...] = ()

    @property
    def interior_passport(self) -> TriPassport | None:
        return self.passport_trace[0].trim() if self.passport_trace else None

    @property
    def passport_stable(self) -> bool:
        if not self.passport_trace:
            return False
        n = self.passport_trace[0].n
        first = self.passport_trace[0].trim().key()
        return all(P.point_count() == 2 * n + 1 and P.trim().key() == first for P in self.passport_trace)

    @property
    def is_zhomotopy(self) -> bool:
        return all(c is not None for c in self.endpoint_trees) and self.passport_stable

    def to_dict(self) -> dict:
        def cz(z):
            return [z.real, z.imag]
        return {
            "family": self.family,
            "driving": self.path.driving,
            "anchors": [cz(a) for a in self.path.anchors],
            "samples": [{"s": smp.s, "params": {k: cz(v) for k, v in smp.params.items()},
                         "kind": smp.pclass.kind,
                         "passport": str(smp.passport.trim()) if smp.passport else None}
                        for smp in self.samples],
            "endpoint_trees": [c.code if c else None for c in self.endpoint_trees],
            "interior_passport": str(self.interior_passport) if self.interior_passport else None,
            "passport_stable": self.passport_stable,
            "is_zhomotopy": self.is_zhomotopy,
            "events": list(self.events),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _endpoint_tree(p: CPoly, tol: float):
    from chebtrees.pullback import extract_tree
    pc = classify(p, tol)
    if pc.kind != "Chebyshev":
        return None, None
    t = extract_tree(p, tol)
    return canonical_code(t), t


def _sample(f: FamilySpec, s: float, params, tol) -> Sample:
    p = f.poly(params)
    return Sample(s, dict(params), p, classify(p, tol))


def _same_class(a: Sample, ref: Sample) -> bool:
    if a.pclass.kind != "Zolotarev" or ref.pclass.kind != "Zolotarev":
        return a.pclass.kind == ref.pclass.kind
    pa, pr = a.passport, ref.passport
    return pa.trim().key() == pr.trim().key() and pa.point_count() == pr.point_count()


def track(f: FamilySpec, path: PathSpec, *, edge_margin: float = 1e-3) -> HomotopyResult:
    """Continue the family along ``path`` and monitor the passport.

    Samples closer than ``edge_margin`` (arclength fraction) to either end
    are not classified as interior points, because critical values there
    are too close to the degenerate ones to separate reliably.
    """
    sv = solver(f, (path.driving,))
    tol = path.tol
    drive = path.driving

    def solve_at(s, seed):
        return sv.solve({drive: path.point(s)}, seed)

    try:
        start = solve_at(0.0, path.start or None)
    except (SingularConstraint, ConstraintNoConvergence) as e:
        raise TrackNoConvergence("cannot resolve the start point: %s" % e) from e
    first = _sample(f, 0.0, start, tol)
    if len(path.anchors) == 1:
        code, t = _endpoint_tree(first.poly, tol)
        trace = (first.passport,) if first.passport else ()
        return HomotopyResult(f.name, path, (first,), (code, code), (t, t), trace)

    samples = [first]
    hist = [(0.0, start)]
    s, h = 0.0, path.max_step
    ref = None
    interior: list[Sample] = []
    while s < 1.0:
        h = min(h, 1.0 - s)
        s_new = s + h
        # secant predictor for the dependent parameters
        if len(hist) >= 2 and sv.dependent:
            (s0, v0), (s1, v1) = hist[-2], hist[-1]
            pred = {k: v1[k] + (v1[k] - v0[k]) * (s_new - s1) / (s1 - s0) for k in sv.dependent}
        else:
            pred = {k: hist[-1][1][k] for k in sv.dependent}
        try:
            vals = solve_at(s_new, pred)
            ok = all(abs(vals[k] - pred[k]) <= 0.05 * (1 + abs(pred[k])) for k in sv.dependent) \
                and all(abs(vals[k] - hist[-1][1][k]) <= 0.2 * (1 + abs(hist[-1][1][k])) for k in sv.dependent)
        except (SingularConstraint, ConstraintNoConvergence):
            ok = False
        if not ok:
            h *= 0.5
            if h < path.min_step:
                raise TrackNoConvergence("step size underflow at s=%.6g" % s)
            continue
        smp = _sample(f, s_new, vals, tol)
        if edge_margin <= s_new <= 1 - edge_margin:
            if ref is None:
                ref = smp
            elif not _same_class(smp, ref):
                lo, hi = _bisect(f, sv, path, hist[-1], (s_new, vals), ref, tol)
                partial = _result(f, path, samples + [smp], interior, tol)
                raise PassportJump(
                    "passport changed between driving values %s and %s" % (lo[1], hi[1]),
                    bracket=(lo[1], hi[1]), before=ref.pclass, after=hi[2].pclass, result=partial)
            interior.append(smp)
        samples.append(smp)
        hist.append((s_new, vals))
        s = s_new
        h = min(h * 1.5, path.max_step)
    return _result(f, path, samples, interior, tol)


def _bisect(f, sv, path, lo_state, hi_state, ref, tol, width: float = 1e-6):
    (s_lo, v_lo), (s_hi, v_hi) = lo_state, hi_state
    scale = max(path.length, 1e-300)
    hi_smp = _sample(f, s_hi, v_hi, tol)
    while (s_hi - s_lo) * scale > width:
        s_mid = 0.5 * (s_lo + s_hi)
        seed = {k: 0.5 * (v_lo[k] + v_hi[k]) for k in sv.dependent}
        v_mid = sv.solve({path.driving: path.point(s_mid)}, seed)
        smp = _sample(f, s_mid, v_mid, tol)
        if _same_class(smp, ref):
            s_lo, v_lo = s_mid, v_mid
        else:
            s_hi, v_hi, hi_smp = s_mid, v_mid, smp
    return (s_lo, path.point(s_lo)), (s_hi, path.point(s_hi), hi_smp)


def _result(f, path, samples, interior, tol) -> HomotopyResult:
    c0, t0 = _endpoint_tree(samples[0].poly, tol)
    c1, t1 = _endpoint_tree(samples[-1].poly, tol) if samples[-1].s >= 1.0 else (None, None)
    trace = tuple(smp.passport for smp in interior if smp.passport is not None)
    events = []
    if len(trace) != len(interior):
        events.append({"kind": "non-zolotarev-interior"})
    return HomotopyResult(f.name, path, tuple(samples), (c0, c1), (t0, t1), trace, tuple(events))


def catalog_path(path_id: str) -> tuple[FamilySpec, PathSpec, dict]:
    """Family and path of a catalog entry, resolving a computed start if needed."""
    cat = load_catalog()
    entry = cat["paths"][path_id]
    f = cat["families"][entry["family"]]
    anchors = list(entry["anchors"])
    start = dict(entry.get("start", {}))
    if "start_solve" in entry:
        spec = entry["start_solve"]
        seed = {k: to_complex(v) for k, v in spec["seed"].items()}
        sol = resolve_constraints(f, spec["fix"], seed=seed)
        anchors = [sol[entry["driving"]] if a == "@start" else a for a in anchors]
        start = {k: v for k, v in sol.items() if k != entry["driving"]}
    return f, PathSpec(entry["driving"], tuple(anchors), start), entry["expect"]


def track_catalog(path_id: str, **kw) -> HomotopyResult:
    f, path, _ = catalog_path(path_id)
    return track(f, path, **kw)
