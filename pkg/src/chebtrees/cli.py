"""Command-line front end.

Every subcommand writes JSON (or the acceptance table) to standard output,
or to ``--out``.  Exit status is 0 on success, 1 when a computation fails
and 2 for bad flags.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Sequence

from chebtrees.polynum import CPoly, NoConvergence

FAMILY_ALIASES = {"F1": "quintic-3-2-2", "F2": "quintic-2-2-2"}


class UsageError(Exception):
    pass


# -- input helpers ---------------------------------------------------------------

def _cz(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def _read_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as e:
        raise UsageError("cannot read %s: %s" % (path, e.strerror))
    except json.JSONDecodeError as e:
        raise UsageError("%s is not valid JSON: %s" % (path, e))


def _number(v) -> complex:
    from chebtrees.zhomotopy.families import to_complex
    if isinstance(v, list):
        if len(v) != 2:
            raise UsageError("complex numbers are written [re, im]")
        return complex(float(v[0]), float(v[1]))
    return to_complex(v)


def load_tree(ref: str):
    """A tree from a JSON file or a bundled reference name such as ``n5/T1``."""
    from chebtrees.planetree import build_tree, reference_names, reference_tree
    if os.path.exists(ref):
        return build_tree(_read_json(ref))
    if ref in reference_names():
        return reference_tree(ref)
    raise UsageError("no tree file or reference tree named %r" % ref)


def load_poly(path: str) -> CPoly:
    """Coefficients from the constant term up, as ``{"coeffs": [...]}`` or a bare list."""
    data = _read_json(path)
    coeffs = data.get("coeffs") if isinstance(data, dict) else data
    if not isinstance(coeffs, list) or not coeffs:
        raise UsageError("%s has no coefficient list" % path)
    return CPoly(tuple(_number(c) for c in coeffs))


def load_arc(path: str):
    from chebtrees.pullback import Arc
    data = _read_json(path)
    anchors = data.get("anchors") if isinstance(data, dict) else data
    if not isinstance(anchors, list) or len(anchors) not in (2, 3):
        raise UsageError("an arc needs two or three anchors")
    waypoints = data.get("waypoints", []) if isinstance(data, dict) else []
    return Arc(tuple(_number(a) for a in anchors), tuple(tuple(_number(w) for w in piece) for piece in waypoints))


def _split(spec: str) -> list[str]:
    parts = [s.strip() for s in spec.split(";" if ";" in spec else ",")]
    if not all(parts):
        raise UsageError("empty entry in %r" % spec)
    return parts


def _family(name: str):
    from chebtrees.zhomotopy.families import load_catalog
    fams = load_catalog()["families"]
    name = FAMILY_ALIASES.get(name, name)
    if name not in fams:
        raise UsageError("unknown family %r (known: %s)" % (name, ", ".join(sorted(fams) + sorted(FAMILY_ALIASES))))
    return fams[name]


def poly_dict(p: CPoly) -> dict:
    return {"degree": p.degree, "coeffs": [_cz(c) for c in p.coeffs]}


# -- commands ---------------------------------------------------------------------

def cmd_enumerate(args):
    from chebtrees.planetree import canonical_code, enumerate_trees
    if args.edges < 1:
        raise UsageError("--edges must be at least 1")
    trees = enumerate_trees(args.edges, mirror_classes=args.mirror, include_stars=args.stars)
    return [dict(t.to_dict(), code=canonical_code(t).code) for t in trees]


def cmd_solve(args):
    from chebtrees.shabat import solve_tree
    sol = solve_tree(load_tree(args.tree), seed=args.seed)

    def roots(rs):
        return [{"location": _cz(r.location), "mult": r.mult} for r in rs]
    return dict(poly_dict(sol.poly), tree=sol.tree_code.code, residual=sol.residual,
                white_roots=roots(sol.white_roots), black_roots=roots(sol.black_roots))


def cmd_pullback(args):
    from chebtrees.pullback import extract_graph, lift_arc, render_svg
    p = load_poly(args.poly)
    g = lift_arc(p, load_arc(args.arc)) if args.arc else extract_graph(p)
    if args.svg:
        with open(args.svg, "w") as fh:
            fh.write(render_svg(g))
    return g.to_dict()


def cmd_classify(args):
    from chebtrees.polynum import classify
    pc = classify(load_poly(args.poly))
    P = pc.passport
    return {"kind": pc.kind, "values": [_cz(v) for v in pc.values], "groups": [list(g) for g in pc.groups],
            "passport": str(P.trim()) if hasattr(P, "trim") else (str(P) if P is not None else None)}


def cmd_track(args):
    from chebtrees.zhomotopy.track import PathSpec, catalog_path, track
    if args.catalog:
        from chebtrees.zhomotopy.families import load_catalog
        if args.catalog not in load_catalog()["paths"]:
            raise UsageError("unknown catalog path %r" % args.catalog)
        f, path, _ = catalog_path(args.catalog)
    else:
        if not (args.family and args.path):
            raise UsageError("track needs --catalog, or --family with --path")
        f = _family(args.family)
        driving = args.driving or f.params[0]
        if driving not in f.params:
            raise UsageError("family %s has no parameter %r" % (f.name, driving))
        start = {}
        for item in _split(args.start) if args.start else []:
            key, _, val = item.partition("=")
            if key.strip() not in f.params or not val:
                raise UsageError("bad --start entry %r" % item)
            start[key.strip()] = val.strip()
        try:
            path = PathSpec(driving, tuple(_split(args.path)), start)
        except (ValueError, TypeError) as e:
            raise UsageError("bad --path: %s" % e)
    return track(f, path).to_dict()


def cmd_scan(args):
    from chebtrees.planetree import reference_names
    from chebtrees.zhomotopy.scan import degeneration_scan
    f = _family(args.family)
    driving = args.driving or f.params[0]
    found = degeneration_scan(f, driving, names=reference_names("n%d/" % f.degree))
    return {"family": f.name, "driving": driving,
            "points": [{"value": _cz(d.value), "exact": str(d.exact) if d.exact is not None else None,
                        "params": {k: _cz(v) for k, v in d.params.items()}, "tree": d.code.code, "name": d.name}
                       for d in found]}


def cmd_obstruct(args):
    from chebtrees.zhomotopy.obstruct import pair_obstructed
    t1, t2 = load_tree(args.t1), load_tree(args.t2)
    if t1.n_edges != t2.n_edges:
        raise UsageError("the two trees have different edge counts")
    v = pair_obstructed(t1, t2, getattr(args, "class"), components=not args.no_components)
    return {"verdict": v.label, "certificate": v.certificate}


def cmd_graph(args):
    from chebtrees.zhomotopy.obstruct import zhomotopy_graph
    if args.edges < 1:
        raise UsageError("--edges must be at least 1")
    return zhomotopy_graph(args.edges, realize=args.realize, mirror_classes=not args.no_mirror).to_dict()


def cmd_degree5(args):
    from chebtrees.zhomotopy.degree5 import coefficients_of, degree5_membership
    if bool(args.abc) == bool(args.poly):
        raise UsageError("degree5 needs exactly one of --abc and --poly")
    if args.abc:
        parts = _split(args.abc)
        if len(parts) != 3:
            raise UsageError("--abc takes three numbers")
        try:
            abc = tuple(Fraction(x) for x in parts)
        except (ValueError, ZeroDivisionError):
            abc = tuple(_number(x) for x in parts)
    else:
        abc = coefficients_of(load_poly(args.poly))
    return {"abc": [str(x) if isinstance(x, Fraction) else _cz(x) for x in abc],
            "membership": degree5_membership(abc, args.tol)}


def cmd_degree7(args):
    from chebtrees.zhomotopy.degree7 import component_certificate, degree7_samples
    if args.certify:
        return component_certificate(load_tree(args.certify), seed=args.seed).to_dict()
    if args.count < 1:
        raise UsageError("--count must be at least 1")
    samples = degree7_samples(args.count, seed=args.seed, jobs=args.jobs)
    return [s.to_dict() for s in samples]


def cmd_verify_paper(args):
    from chebtrees.acceptance import CHECKS, run_all
    only = None
    if args.only:
        try:
            only = [int(x) for x in _split(args.only)]
        except ValueError:
            raise UsageError("--only takes check numbers")
        if not set(only) <= set(CHECKS):
            raise UsageError("check numbers run from 1 to %d" % len(CHECKS))
    checks = run_all(jobs=args.jobs, only=only)
    ok = all(c.passed for c in checks)
    text = "\n".join(c.line() for c in checks)
    text += "\n%d of %d checks pass\n" % (sum(c.passed for c in checks), len(checks))
    if args.details:
        text += json.dumps({c.number: c.detail for c in checks}, indent=2, default=str) + "\n"
    return _Text(text, 0 if ok else 1)


class _Text:
    def __init__(self, text: str, code: int = 0):
        self.text, self.code = text, code


# -- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for randomized steps (default 0)")
    common.add_argument("--out", help="write the result here instead of standard output")
    common.add_argument("--jobs", type=int, default=1, help="parallel workers (default 1)")

    ap = argparse.ArgumentParser(prog="chebtrees", description="Plane trees, Shabat and Zolotarev polynomials.")
    sub = ap.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, fn, help):
        p = sub.add_parser(name, parents=[common], help=help)
        p.set_defaults(fn=fn)
        return p

    p = add("enumerate", cmd_enumerate, "list plane trees with N edges")
    p.add_argument("--edges", type=int, required=True)
    p.add_argument("--mirror", action="store_true", help="one tree per mirror pair")
    p.add_argument("--stars", action="store_true", help="keep the star")

    p = add("solve", cmd_solve, "Shabat polynomial of a tree")
    p.add_argument("--tree", required=True, help="tree JSON file or reference name")

    p = add("pullback", cmd_pullback, "preimage of a segment or arc")
    p.add_argument("--poly", required=True)
    p.add_argument("--arc", help="arc JSON with two or three anchors")
    p.add_argument("--svg", help="also write an SVG drawing")

    p = add("classify", cmd_classify, "critical values and passport of a polynomial")
    p.add_argument("--poly", required=True)

    p = add("track", cmd_track, "follow a family along a path of the driving parameter")
    p.add_argument("--family", help="catalog family name, or F1 / F2")
    p.add_argument("--path", help="anchors separated by commas (or semicolons)")
    p.add_argument("--driving", help="driving parameter (default: the first one)")
    p.add_argument("--start", help="starting values of dependent parameters, e.g. 'b=-1'")
    p.add_argument("--catalog", help="run a catalog path by id instead")

    p = add("scan", cmd_scan, "Chebyshev degenerations of a one-parameter family")
    p.add_argument("--family", required=True)
    p.add_argument("--driving")

    p = add("obstruct", cmd_obstruct, "decide whether a pair of trees is blocked")
    p.add_argument("--t1", required=True)
    p.add_argument("--t2", required=True)
    p.add_argument("--class", help="restrict to a trimmed passport class, e.g. '<2,2|2|2>'")
    p.add_argument("--no-components", action="store_true", help="passport test only")

    p = add("graph", cmd_graph, "blocked / not blocked status of every pair")
    p.add_argument("--edges", type=int, required=True)
    p.add_argument("--realize", action="store_true", help="mark pairs joined by a tracked catalog path")
    p.add_argument("--no-mirror", action="store_true", help="keep mirror images apart")

    p = add("degree5", cmd_degree5, "component membership of a quintic")
    p.add_argument("--abc", help="depressed coefficients a,b,c of p'")
    p.add_argument("--poly")
    p.add_argument("--tol", type=float, default=1e-8)

    p = add("degree7", cmd_degree7, "sample the degree-7 variety")
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--certify", help="instead, certify which components reach this tree")

    p = add("verify-paper", cmd_verify_paper, "run the acceptance checks")
    p.add_argument("--only", help="comma-separated check numbers")
    p.add_argument("--details", action="store_true", help="print the numbers behind each check")
    return ap


def _domain_errors() -> tuple[type, ...]:
    from chebtrees.planetree import TreeError
    from chebtrees.pullback import LiftDivergence, NotMatchingClass
    from chebtrees.shabat import NotChebyshev, StarTree
    from chebtrees.zhomotopy import (ConstraintNoConvergence, PassportJump, SingularConstraint,
                                     TrackNoConvergence, UnexpectedOrder, UnsupportedFamily)
    return (TreeError, NoConvergence, LiftDivergence, NotMatchingClass, NotChebyshev, StarTree,
            ConstraintNoConvergence, PassportJump, SingularConstraint, TrackNoConvergence,
            UnexpectedOrder, UnsupportedFamily, ValueError, ArithmeticError)


def run(argv: Sequence[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    if args.jobs < 1:
        parser.print_usage(sys.stderr)
        print("chebtrees: error: --jobs must be at least 1", file=sys.stderr)
        return 2
    try:
        result = args.fn(args)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print("chebtrees: error: %s" % e, file=sys.stderr)
        return 2
    except _domain_errors() as e:
        print("chebtrees: %s: %s" % (type(e).__name__, e), file=sys.stderr)
        return 1
    code = 0
    if isinstance(result, _Text):
        text, code = result.text, result.code
    else:
        text = json.dumps(result, indent=2, default=str) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
