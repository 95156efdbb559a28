"""Nullcone certificates: substitutions plus claimed identities, replayed exactly.

A certificate fixes matrices (canonical blocks or generic ``Skew`` matrices
in named parameters) and a list of branches.  A branch applies its
substitutions in order:

* ``["c1", "-(a1*a2 + b1*b2)/c2"]`` replaces a parameter.  A denominator
  must be a constant or one of the branch's declared nonzero expressions;
  it is cleared, which is harmless for claims of the form ``... = 0``.
* ``["c2^2", "(b2 + I*f2)*(e2 + I*f2)"]`` reduces modulo a relation
  ``c2^2 = R`` (R free of c2).

Each claim is checked after the first ``stage`` substitutions (all of them
by default) as an exact polynomial identity in the remaining parameters.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Sequence

from ..canonical import canonical_from_string
from ..corealg.poly import Polynomial, Variable, upper_pairs, var_key
from ..corealg.scalars import inv
from ..errors import MalformedCertificate
from ..genmat import Matrix
from .dsl import Evaluator, Frac, as_poly, const_value, generic_matrix, param_name, param_variable

CLAIM_KINDS = ("poly_zero", "matrix_zero", "matrix_equals")
_REDUCE_RE = re.compile(r"^([a-z]\d+)\^(\d+)$")


@dataclass
class Claim:
    kind: str
    payload: object
    label: str = ""
    stage: int | None = None

    def to_json(self) -> dict:
        out = {"kind": self.kind, "payload": self.payload}
        if self.label:
            out["label"] = self.label
        if self.stage is not None:
            out["stage"] = self.stage
        return out

    @classmethod
    def from_json(cls, data: dict) -> "Claim":
        try:
            return cls(data["kind"], data["payload"], data.get("label", ""), data.get("stage"))
        except (KeyError, TypeError) as exc:
            raise MalformedCertificate(f"bad claim {data!r}") from exc

    def describe(self) -> str:
        if self.label:
            return self.label
        if self.kind == "matrix_equals":
            return f"{self.payload['lhs']} = displayed matrix"
        return f"{self.payload} = 0"


@dataclass
class Branch:
    label: str
    substitutions: list[list[str]] = field(default_factory=list)
    claims: list[Claim] = field(default_factory=list)
    nonzero: list[str] = field(default_factory=list)
    lets: dict[str, str] = field(default_factory=dict)
    base: dict[str, str] = field(default_factory=dict)  # per-branch overrides

    def to_json(self) -> dict:
        out = {"label": self.label, "substitutions": [list(s) for s in self.substitutions],
               "claims": [c.to_json() for c in self.claims]}
        if self.base:
            out["base"] = dict(self.base)
        if self.nonzero:
            out["nonzero"] = list(self.nonzero)
        if self.lets:
            out["lets"] = dict(self.lets)
        return out

    @classmethod
    def from_json(cls, data: dict) -> "Branch":
        try:
            return cls(data.get("label", ""), [list(s) for s in data["substitutions"]],
                       [Claim.from_json(c) for c in data["claims"]],
                       list(data.get("nonzero", [])), dict(data.get("lets", {})),
                       dict(data.get("base", {})))
        except (KeyError, TypeError) as exc:
            raise MalformedCertificate(f"bad branch {data!r}") from exc


@dataclass
class NullconeCertificate:
    name: str
    n: int
    base: dict[str, str]  # matrix name -> "generic" or a canonical block string
    branches: list[Branch]
    description: str = ""
    source: str = ""

    @property
    def params(self) -> list[str]:
        out = []
        for name, spec in self.base.items():
            if spec == "generic":
                k = _matrix_index(name)
                out.extend(param_name(Variable(i, j, k), self.n) for i, j in upper_pairs(self.n))
        return out

    def matrices(self, override: dict[str, str] | None = None) -> dict[str, Matrix]:
        out = {}
        for name, spec in {**self.base, **(override or {})}.items():
            if spec == "generic":
                out[name] = generic_matrix(self.n, _matrix_index(name))
            else:
                m = canonical_from_string(spec).matrix
                if m.n != self.n:
                    raise MalformedCertificate(f"{name} = {spec} is not {self.n}x{self.n}")
                out[name] = m
        return out

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "n": self.n,
            "base": dict(self.base),
            "params": self.params,
            "description": self.description,
            "branches": [b.to_json() for b in self.branches],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    @classmethod
    def from_json(cls, data: dict) -> "NullconeCertificate":
        try:
            return cls(data["name"], int(data["n"]), dict(data["base"]),
                       [Branch.from_json(b) for b in data["branches"]], data.get("description", ""))
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedCertificate(f"bad certificate: {exc}") from exc

    def without_substitution(self, branch: int, index: int) -> "NullconeCertificate":
        """Copy with one substitution deleted (negative control)."""
        data = self.to_json()
        del data["branches"][branch]["substitutions"][index]
        cert = NullconeCertificate.from_json(data)
        cert.name = f"{self.name}-minus-{branch}.{index}"
        # drop stage markers past the end so the mutated certificate stays well-formed
        for c in cert.branches[branch].claims:
            if c.stage is not None and c.stage > len(cert.branches[branch].substitutions):
                c.stage = len(cert.branches[branch].substitutions)
        return cert


def _proportional(p: Polynomial, q: Polynomial) -> bool:
    if not p or not q or set(p.terms) != set(q.terms):
        return False
    key = next(iter(p.terms))
    return p == q.scale(p.terms[key] * inv(q.terms[key]))


def _matrix_index(name: str) -> int:
    m = re.match(r"^[A-Z](\d+)$", name)
    if not m:
        raise MalformedCertificate(f"matrix names look like A1, B2, ...; got {name!r}")
    return int(m.group(1))


# replay ------------------------------------------------------------------------------------


@dataclass
class _Step:
    kind: str  # "subs" or "reduce"
    var: int
    num: Polynomial
    den: Polynomial | None = None
    power: int = 1


@dataclass
class ClaimResult:
    branch: str
    claim: str
    passed: bool
    residual_terms: int = 0
    residual: str = ""

    def to_json(self) -> dict:
        out = {"branch": self.branch, "claim": self.claim, "passed": self.passed}
        if not self.passed:
            out["residual_terms"] = self.residual_terms
            out["residual"] = self.residual
        return out


@dataclass
class CertificateResult:
    name: str
    passed: bool
    claims_checked: int
    first_failure: ClaimResult | None = None
    results: list[ClaimResult] = field(default_factory=list)

    def to_json(self, verbose: bool = False) -> dict:
        out = {"name": self.name, "passed": self.passed, "claims_checked": self.claims_checked,
               "first_failure": self.first_failure.to_json() if self.first_failure else None}
        if verbose:
            out["claims"] = [r.to_json() for r in self.results]
        return out


def _compile_steps(cert: NullconeCertificate, branch: Branch, ev: Evaluator) -> list[_Step]:
    n = cert.n
    allowed_dens = []
    for text in branch.nonzero:
        v = ev.eval(text)
        if isinstance(v, (Matrix, Frac)):
            raise MalformedCertificate(f"nonzero assumption {text!r} must be a polynomial")
        allowed_dens.append(as_poly(v, n))
    steps, seen = [], set()
    for item in branch.substitutions:
        if not isinstance(item, (list, tuple)) or len(item) != 2:
            raise MalformedCertificate(f"substitution must be [symbol, expression], got {item!r}")
        sym, text = str(item[0]), item[1]
        red = _REDUCE_RE.match(sym)
        name, power = (red.group(1), int(red.group(2))) if red else (sym, 1)
        var = param_variable(name, n)
        if var is None:
            raise MalformedCertificate(f"{cert.name}/{branch.label}: {name!r} is not a parameter")
        idx = var.index(n)
        val = ev.eval(text)
        if isinstance(val, Matrix):
            raise MalformedCertificate(f"substitution for {sym} must be scalar")
        if isinstance(val, Frac):
            num, den = val.num, val.den
            c = const_value(den)
            if c is not None:
                num, den = num.scale(inv(c)), None
            elif not any(_proportional(den, a) for a in allowed_dens):
                raise MalformedCertificate(
                    f"{cert.name}/{branch.label}: denominator {den} of {sym} is not declared nonzero")
        else:
            num, den = as_poly(val, n), None
        if idx in num.variables() or (den is not None and idx in den.variables()):
            raise MalformedCertificate(f"{cert.name}/{branch.label}: {sym} occurs in its own replacement")
        if red:
            if power < 2 or den is not None:
                raise MalformedCertificate(f"reduction {sym} needs power >= 2 and a polynomial value")
            steps.append(_Step("reduce", idx, num, None, power))
        else:
            if name in seen:
                raise MalformedCertificate(f"{cert.name}/{branch.label}: {name} substituted twice")
            seen.add(name)
            steps.append(_Step("subs", idx, num, den))
    return steps


def _reduce(p: Polynomial, r: _Step) -> Polynomial:
    """Rewrite modulo den * x^power = num, where num has lower degree in x.

    With a denominator the result is scaled by a power of den (den != 0).
    """
    if r.den is None and r.var not in r.num.variables():
        return p.reduce_power(r.var, r.power, r.num)
    if r.num.degree_in(r.var) >= r.power or (r.den is not None and r.var in r.den.variables()):
        raise MalformedCertificate("a relation must lower the degree of its variable")
    while True:
        groups = p.split_by(r.var)
        top = max(groups, default=0)
        if top < r.power:
            return p
        head = groups[top]
        lower = p - head * Polynomial(p.n, {var_key(r.var, top): 1}, _trusted=True)
        shifted = head * Polynomial(p.n, {var_key(r.var, top - r.power): 1}, _trusted=True) * r.num
        p = (lower * r.den if r.den is not None else lower) + shifted


def _subs_relation(r: _Step, s: _Step) -> _Step:
    """Push the substitution ``s`` into the replacement side of relation ``r``."""
    touched = s.var in r.num.variables() or (r.den is not None and s.var in r.den.variables())
    if not touched:
        return r
    if s.den is None:
        num = r.num.substitute(s.var, s.num)
        den = r.den.substitute(s.var, s.num) if r.den is not None else None
        return _Step("reduce", r.var, num, den, r.power)
    one = Polynomial.const(r.num.n, 1)
    rden = r.den if r.den is not None else one
    m_num, m_den = r.num.degree_in(s.var), rden.degree_in(s.var)
    num = r.num.substitute(s.var, s.num, s.den) * s.den ** m_den if m_den else r.num.substitute(s.var, s.num, s.den)
    den = rden.substitute(s.var, s.num, s.den) * s.den ** m_num if m_num else rden.substitute(s.var, s.num, s.den)
    return _Step("reduce", r.var, num, den, r.power)


def _relations_after(steps: Sequence[_Step]) -> list[_Step]:
    out: list[_Step] = []
    for s in steps:
        if s.kind == "subs":
            out = [_subs_relation(r, s) for r in out]
        else:
            out.append(s)
    return out


def _apply(p: Polynomial, steps: Sequence[_Step], reductions: Sequence[_Step] = ()) -> Polynomial:
    reductions = list(reductions)
    for r in reductions:
        p = _reduce(p, r)
    for s in steps:
        if s.kind == "subs":
            p = p.substitute(s.var, s.num, s.den)
            reductions = [_subs_relation(r, s) for r in reductions]
            for r in reductions:
                p = _reduce(p, r)
        else:
            reductions.append(s)
            p = _reduce(p, s)
    return p


def _transform_matrix(m: Matrix, fn) -> Matrix:
    return Matrix([[fn(x) if isinstance(x, Polynomial) else x for x in row] for row in m.rows])


def _claim_polys(claim: Claim, ev: Evaluator, n: int) -> list[Polynomial]:
    if claim.kind == "poly_zero":
        v = ev.eval(claim.payload)
        if isinstance(v, (Matrix, Frac)):
            raise MalformedCertificate(f"poly_zero claim {claim.payload!r} is not a polynomial")
        return [as_poly(v, n)]
    if claim.kind == "matrix_zero":
        v = ev.eval(claim.payload)
        if not isinstance(v, Matrix):
            raise MalformedCertificate(f"matrix_zero claim {claim.payload!r} is not a matrix")
        return [as_poly(x, n) for r in v.rows for x in r]
    if claim.kind == "matrix_equals":
        try:
            lhs, rhs = claim.payload["lhs"], claim.payload["rhs"]
        except (TypeError, KeyError):
            raise MalformedCertificate("matrix_equals payload needs lhs and rhs") from None
        m = ev.eval(lhs)
        if not isinstance(m, Matrix) or len(rhs) != m.n or any(len(r) != m.n for r in rhs):
            raise MalformedCertificate("matrix_equals sides must be square of equal size")
        out = []
        for row, targets in zip(m.rows, rhs):
            for x, t in zip(row, targets):
                tv = ev.eval(t)
                if isinstance(tv, (Matrix, Frac)):
                    raise MalformedCertificate(f"matrix entry {t!r} is not a polynomial")
                out.append(as_poly(x, n) - as_poly(tv, n))
        return out
    raise MalformedCertificate(f"unknown claim kind {claim.kind!r}; expected one of {CLAIM_KINDS}")


def validate(cert: NullconeCertificate) -> None:
    """Raise MalformedCertificate unless every expression parses and stages fit."""
    for b in cert.branches:
        mats = cert.matrices(b.base)
        ev = Evaluator(cert.n, mats, b.lets)
        _compile_steps(cert, b, ev)
        for c in b.claims:
            if c.kind not in CLAIM_KINDS:
                raise MalformedCertificate(f"unknown claim kind {c.kind!r}")
            if c.stage is not None and not 0 <= c.stage <= len(b.substitutions):
                raise MalformedCertificate(f"claim stage {c.stage} out of range in {b.label}")


def check_certificate(cert: NullconeCertificate, stop_at_first: bool = False) -> CertificateResult:
    """Replay every claim on every branch; report the first failing one by name.

    Leading substitutions without a denominator are ring homomorphisms (modulo
    the reductions), so they are pushed into the matrix entries before any
    product is formed; the rest are applied to the claimed polynomials.
    """
    validate(cert)
    results: list[ClaimResult] = []
    first = None
    for b in cert.branches:
        mats = cert.matrices(b.base)
        steps = _compile_steps(cert, b, Evaluator(cert.n, mats, b.lets))
        hom = next((k for k, s in enumerate(steps) if s.den is not None), len(steps))
        evaluators: dict[int, Evaluator] = {}

        def evaluator(k: int) -> Evaluator:
            if k not in evaluators:
                pre = steps[:k]
                fn = lambda x: _apply(x, pre)
                evaluators[k] = Evaluator(cert.n, {name: _transform_matrix(m, fn) for name, m in mats.items()},
                                          b.lets, fn)
            return evaluators[k]

        for c in b.claims:
            upto = len(steps) if c.stage is None else c.stage
            k = min(hom, upto)
            rest = steps[k:upto]
            reds = _relations_after(steps[:k])
            residual = None
            for p in _claim_polys(c, evaluator(k), cert.n):
                r = _apply(p, rest, reds)
                if r:
                    residual = r
                    break
            res = ClaimResult(b.label, c.describe(), residual is None)
            if residual is not None:
                res.residual_terms = len(residual)
                text = str(residual)
                res.residual = text if len(text) <= 200 else text[:197] + "..."
                if first is None:
                    first = res
            results.append(res)
            if first is not None and stop_at_first:
                return CertificateResult(cert.name, False, len(results), first, results)
    return CertificateResult(cert.name, first is None, len(results), first, results)
