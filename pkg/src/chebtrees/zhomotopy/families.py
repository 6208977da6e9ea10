"""One-parameter families of polynomials ``p = ∫ prod (x - r_i)^m_i dx``.

Some integrand roots are free parameters ``a, b, c, d``; equalities between
values of ``p`` cut the parameter space down to a curve (or a surface for
the degree-7 variety).  Constraint polynomials are built with sympy and
stripped of factors that vanish for trivial reasons, e.g. ``a - b`` in
``p(a) = p(b)`` or a power of the driving parameter.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import cached_property
from importlib import resources
from typing import Mapping, Sequence

import numpy as np
import sympy as sp

from chebtrees.polynum import CPoly

X = sp.Symbol("x")
PARAM_NAMES = ("a", "b", "c", "d")


class SingularConstraint(ValueError):
    """The constraints have no finite solution at this parameter value."""


class ConstraintNoConvergence(RuntimeError):
    pass


def parse_value(v) -> sp.Expr:
    """Number, ``[re, im]`` pair, or a sympy string such as ``"(-1+sqrt(3)*I)/2"``."""
    if isinstance(v, sp.Basic):
        return v
    if isinstance(v, (list, tuple)):
        return sp.nsimplify(v[0]) + sp.I * sp.nsimplify(v[1])
    if isinstance(v, str):
        return sp.sympify(v.replace("i", "I") if re.fullmatch(r"[-+*/()0-9.\si]+", v) else v,
                          locals={"I": sp.I, "sqrt": sp.sqrt})
    if isinstance(v, complex):
        return sp.Float(v.real) + sp.I * sp.Float(v.imag)
    return sp.nsimplify(v)


def to_complex(v) -> complex:
    return complex(sp.N(parse_value(v), 30))


_CONSTRAINT = re.compile(r"^\s*(p\(([^()]+)\)|[-+0-9./]+)\s*=\s*(p\(([^()]+)\)|[-+0-9./]+)\s*$")


@dataclass(frozen=True)
class Constraint:
    """``lhs = rhs`` where each side is ``p(point)`` or a constant."""

    text: str

    def sides(self) -> tuple[tuple[str, str], tuple[str, str]]:
        m = _CONSTRAINT.match(self.text)
        if not m:
            raise ValueError("cannot parse constraint %r" % self.text)
        left = ("p", m.group(2).strip()) if m.group(2) else ("const", m.group(1))
        right = ("p", m.group(4).strip()) if m.group(4) else ("const", m.group(3))
        return left, right


@dataclass(frozen=True)
class FamilySpec:
    """Integrand roots (location, multiplicity) and value constraints.

    A location is either a parameter name or a constant.
    """

    name: str
    roots: tuple[tuple[object, int], ...]
    constraints: tuple[str, ...] = ()
    notes: str = ""

    @cached_property
    def params(self) -> tuple[str, ...]:
        names = [loc for loc, _ in self.roots if isinstance(loc, str) and loc in PARAM_NAMES]
        return tuple(sorted(set(names), key=PARAM_NAMES.index))

    @cached_property
    def symbols(self) -> dict[str, sp.Symbol]:
        return {n: sp.Symbol(n) for n in self.params}

    def _loc(self, loc) -> sp.Expr:
        if isinstance(loc, str) and loc in self.symbols:
            return self.symbols[loc]
        return parse_value(loc)

    @property
    def degree(self) -> int:
        return sum(m for _, m in self.roots) + 1

    @cached_property
    def p_expr(self) -> sp.Expr:
        integrand = sp.Mul(*[(X - self._loc(loc)) ** m for loc, m in self.roots])
        return sp.expand(sp.integrate(sp.expand(integrand), (X, 0, X)))

    def critical_exprs(self) -> list[tuple[sp.Expr, int]]:
        return [(self._loc(loc), m) for loc, m in self.roots]

    def _side(self, side) -> sp.Expr:
        kind, body = side
        if kind == "const":
            return sp.nsimplify(body)
        return self.p_expr.subs(X, self._loc(body))

    def constraint_polys(self, driving: Sequence[str] = ()) -> list[sp.Expr]:
        """Constraint polynomials with trivial factors removed.

        Factors free of every non-driving parameter and factors ``u - v``
        for the two evaluation points of ``p(u) = p(v)`` are dropped.
        """
        dependent = [self.symbols[n] for n in self.params if n not in driving]
        out = []
        for c in self.constraints:
            left, right = Constraint(c).sides()
            expr = sp.expand(self._side(left) - self._side(right))
            if expr == 0:
                continue
            trivial = set()
            if left[0] == "p" and right[0] == "p":
                u, v = self._loc(left[1]), self._loc(right[1])
                trivial.add(sp.expand(u - v))
                trivial.add(sp.expand(v - u))
            _, factors = sp.factor_list(expr, *(dependent or list(self.symbols.values())))
            kept = sp.Integer(1)
            for f, e in factors:
                if sp.expand(f) in trivial:
                    continue
                if dependent and not (f.free_symbols & set(dependent)):
                    continue
                kept *= f ** e
            out.append(sp.expand(kept))
        return out

    def poly(self, values: Mapping[str, complex]) -> CPoly:
        """Numeric polynomial at a full parameter assignment."""
        factors = []
        for loc, m in self.roots:
            z = complex(values[loc]) if isinstance(loc, str) and loc in self.symbols else to_complex(loc)
            factors += [z] * m
        q = np.polynomial.polynomial.polyfromroots(factors) if factors else np.ones(1)
        return CPoly.from_array(np.polynomial.polynomial.polyint(np.asarray(q, dtype=complex)))

    def to_dict(self) -> dict:
        return {"name": self.name,
                "roots": [[loc if isinstance(loc, str) else _num_json(loc), m] for loc, m in self.roots],
                "constraints": list(self.constraints), "notes": self.notes}

    @classmethod
    def from_dict(cls, d: Mapping) -> "FamilySpec":
        roots = tuple((loc if isinstance(loc, str) else (complex(*loc) if isinstance(loc, list) else loc), int(m))
                      for loc, m in d["roots"])
        return cls(d["name"], roots, tuple(d.get("constraints", ())), d.get("notes", ""))


def _num_json(z):
    z = complex(z)
    return z.real if z.imag == 0 else [z.real, z.imag]


# -- solving the constraints -----------------------------------------------------

@dataclass
class _Solver:
    family: FamilySpec
    driving: tuple[str, ...]
    dependent: tuple[str, ...] = field(init=False)
    closed: dict | None = field(init=False, default=None)
    denominators: list = field(init=False, default_factory=list)

    def __post_init__(self):
        f = self.family
        self.dependent = tuple(n for n in f.params if n not in self.driving)
        self.eqs = f.constraint_polys(self.driving)
        dep = [f.symbols[n] for n in self.dependent]
        drv = [f.symbols[n] for n in self.driving]
        if len(self.eqs) != len(dep):
            raise ValueError("family %s: %d constraints for %d dependent parameters"
                             % (f.name, len(self.eqs), len(dep)))
        if dep and all(sp.Poly(e, *dep).total_degree() <= 1 for e in self.eqs):
            sol = sp.solve(self.eqs, dep, dict=True)
            if len(sol) == 1 and all(s in sol[0] for s in dep):
                self.closed = {str(s): sp.factor(sp.cancel(sol[0][s])) for s in dep}
                self.denominators = [sp.denom(sp.together(v)) for v in self.closed.values()]
                self._closed_fn = {k: sp.lambdify(drv, v, "mpmath") for k, v in self.closed.items()}
        if dep:
            self._F = sp.lambdify(drv + dep, self.eqs, "numpy")
            J = sp.Matrix(self.eqs).jacobian(dep)
            self._J = sp.lambdify(drv + dep, J, "numpy")

    def solve(self, drive: Mapping[str, complex], seed: Mapping[str, complex] | None,
              tol: float = 1e-12) -> dict[str, complex]:
        out = {k: complex(v) for k, v in drive.items()}
        if not self.dependent:
            return out
        dv = [complex(drive[n]) for n in self.driving]
        if self.closed is not None:
            import mpmath
            scale = 1 + max(abs(z) for z in dv) if dv else 1
            subs = {self.family.symbols[n]: drive[n] for n in self.driving}
            for den in self.denominators:
                val = complex(den.subs(subs).evalf(30)) if den.free_symbols else complex(den)
                if abs(val) < 1e-12 * scale ** max(1, sp.Poly(den, *self.family.symbols.values()).total_degree()):
                    raise SingularConstraint("denominator %s vanishes" % den)
            for k, fn in self._closed_fn.items():
                with mpmath.workdps(30):
                    out[k] = complex(fn(*dv))
            return out
        if seed is None:
            raise ConstraintNoConvergence("numeric constraints need a seed for %s" % (self.dependent,))
        u = np.array([complex(seed[n]) for n in self.dependent], dtype=complex)
        for _ in range(60):
            F = np.array(self._F(*dv, *u), dtype=complex)
            J = np.array(self._J(*dv, *u), dtype=complex)
            try:
                du = np.linalg.solve(J, -F)
            except np.linalg.LinAlgError:
                raise SingularConstraint("singular constraint Jacobian")
            u = u + du
            if np.linalg.norm(du) <= tol * (1 + np.linalg.norm(u)):
                break
        else:
            raise ConstraintNoConvergence("Newton on the constraints did not converge")
        F = np.array(self._F(*dv, *u), dtype=complex)
        if not np.all(np.isfinite(u)) or np.linalg.norm(F) > 1e-8 * (1 + np.linalg.norm(u)) ** self.family.degree:
            raise ConstraintNoConvergence("constraint residual too large")
        out.update({n: complex(z) for n, z in zip(self.dependent, u)})
        return out

    def jacobian_cond(self, values: Mapping[str, complex]) -> float:
        if not self.dependent:
            return 1.0
        dv = [values[n] for n in self.driving] + [values[n] for n in self.dependent]
        return float(np.linalg.cond(np.array(self._J(*dv), dtype=complex)))


_SOLVERS: dict = {}


def solver(f: FamilySpec, driving: Sequence[str]) -> _Solver:
    key = (f.name, f.roots, f.constraints, tuple(driving))
    if key not in _SOLVERS:
        _SOLVERS[key] = _Solver(f, tuple(driving))
    return _SOLVERS[key]


def resolve_constraints(f: FamilySpec, free: Mapping[str, object], seed: Mapping[str, complex] | None = None,
                        tol: float = 1e-12) -> dict[str, complex]:
    """Complete a driving-parameter assignment to all parameters.

    A rational closed form is used when the constraints are linear in the
    dependent parameters; otherwise Newton's method from ``seed``.
    Raises :class:`SingularConstraint` or :class:`ConstraintNoConvergence`.
    """
    drive = {k: to_complex(v) for k, v in free.items()}
    return solver(f, tuple(drive)).solve(drive, seed, tol)


# -- catalog -------------------------------------------------------------------

@dataclass(frozen=True)
class CatalogPath:
    family: str
    driving: str
    anchors: tuple
    start: Mapping[str, object]
    expect: Mapping[str, object]


def load_catalog() -> dict:
    raw = resources.files("chebtrees").joinpath("data/families.json").read_text()
    data = json.loads(raw)
    fams = {d["name"]: FamilySpec.from_dict(d) for d in data["families"]}
    paths = {p["id"]: p for p in data["paths"]}
    return {"families": fams, "paths": paths, "degenerations": data.get("degenerations", {})}


def family(name: str) -> FamilySpec:
    return load_catalog()["families"][name]
