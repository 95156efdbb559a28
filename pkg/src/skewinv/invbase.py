"""Graded components of the invariant algebra and minimal generators.

The algebra is spanned in multidegree m by products of the generators
σ_t(B), B a primitive word (up to symmetry), whose multidegrees sum to m.
Its decomposable part D(m) is spanned by products of bases of lower
components.  Two ways to do the linear algebra:

* exact: rank of polynomial coefficient vectors over Q(i);
* sketch: values at seeded random integer points, eliminated mod p to
  *find* a combination, which is then replayed as an exact polynomial
  identity.  A sketch never certifies anything on its own: positive answers
  are replayed, negative answers are re-derived in exact mode.
"""

from __future__ import annotations

import itertools
import logging
import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

from .corealg.linalg import (DEFAULT_PRIME, CoeffMatrix, dense_mod_profile, express_in_span,
                             rank_and_basis, solve_exact)
from .corealg.poly import MultiDegree, Polynomial
from .corealg.scalars import format_scalar, simplify
from .errors import DegreeBoundExceeded, MixedMultidegree
from .genmat import (Assignment, Invariant, InvariantProduct, evaluate, skew_from_upper)
from .words import words_with_counts

log = logging.getLogger(__name__)

DEFAULT_MAX_DEGREE = 8


@dataclass(frozen=True)
class LinearCombination:
    """Σ coeff * product-of-invariants, all of one multidegree."""

    terms: tuple[tuple[object, InvariantProduct], ...]

    @classmethod
    def of(cls, *items) -> "LinearCombination":
        out = []
        for item in items:
            if isinstance(item, tuple):
                c, x = item
            else:
                c, x = 1, item
            out.append((simplify(c), _as_product(x)))
        return cls(tuple(out))

    @property
    def n(self) -> int:
        return self.terms[0][1].n

    @property
    def value(self) -> Polynomial:
        acc = Polynomial.zero(self.n)
        for c, p in self.terms:
            acc = acc + p.value.scale(c)
        return acc

    @property
    def mdeg(self) -> MultiDegree:
        degs = {tuple(p.mdeg) for _, p in self.terms}
        if len(degs) != 1:
            raise MixedMultidegree(f"combination mixes multidegrees {sorted(degs)}")
        return self.terms[0][1].mdeg

    @property
    def label(self) -> str:
        parts = []
        for c, p in self.terms:
            if c == 1:
                parts.append(p.label)
            elif c == -1:
                parts.append("-" + p.label)
            else:
                parts.append(f"({format_scalar(c).removesuffix('/1')})·{p.label}")
        return " + ".join(parts).replace("+ -", "- ")

    def evaluate_at(self, a: Assignment):
        acc = 0
        for c, p in self.terms:
            acc = acc + c * p.evaluate_at(a)
        return simplify(acc)


Target = Union[Invariant, InvariantProduct, LinearCombination]


def _as_product(x) -> InvariantProduct:
    if isinstance(x, InvariantProduct):
        return x
    if isinstance(x, Invariant):
        return InvariantProduct((x,))
    raise TypeError(f"not an invariant: {x!r}")


def _as_combination(x: Target) -> LinearCombination:
    if isinstance(x, LinearCombination):
        return x
    return LinearCombination.of(x)


def _pad(m: Sequence[int], d: int) -> MultiDegree:
    m = list(m)
    if len(m) > d and any(m[d:]):
        raise ValueError(f"multidegree {tuple(m)} needs more than d={d} matrices")
    return MultiDegree((m + [0] * d)[:d])


def sub_multidegrees(m: Sequence[int]) -> list[MultiDegree]:
    """All nonzero m' <= m componentwise, by total degree then lexicographically."""
    out = [MultiDegree(x) for x in itertools.product(*(range(t + 1) for t in m)) if any(x)]
    out.sort(key=lambda x: (x.total, tuple(x)))
    return out


def all_multidegrees(d: int, max_total: int) -> list[MultiDegree]:
    out = []
    for total in range(1, max_total + 1):
        for c in itertools.combinations_with_replacement(range(d), total):
            vec = [0] * d
            for k in c:
                vec[k] += 1
            out.append(MultiDegree(vec))
    out.sort(key=lambda x: (x.total, tuple(x)))
    return out


# certificates ---------------------------------------------------------------------------


@dataclass
class DecompositionCertificate:
    """target = Σ coeff * Π factors with every factor of lower degree."""

    target: LinearCombination
    combination: list[tuple[object, tuple[Invariant, ...]]]
    verified: bool = False

    def replay(self) -> bool:
        n = self.target.n
        deg = self.target.mdeg.total
        acc = Polynomial.zero(n)
        for c, factors in self.combination:
            if len(factors) < 2 or any(f.degree >= deg for f in factors):
                return False
            acc = acc + InvariantProduct(tuple(factors)).value.scale(c)
        self.verified = acc == self.target.value
        return self.verified

    def to_json(self) -> dict:
        return {
            "target": self.target.label,
            "mdeg": list(self.target.mdeg),
            "combination": [
                {"coeff": format_scalar(c), "factors": [f.label for f in fs]}
                for c, fs in self.combination
            ],
            "verified": self.verified,
        }


# graded components -----------------------------------------------------------------------


@dataclass
class GradedComponent:
    n: int
    d: int
    mdeg: MultiDegree
    basis: list[InvariantProduct]
    decomposable_dim: int
    source: list[str] = field(default_factory=list)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def new_generators(self) -> list[Invariant]:
        return [p.factors[0] for p in self.basis[self.decomposable_dim:]]

    @property
    def new_count(self) -> int:
        return self.dimension - self.decomposable_dim

    def coeff_matrix(self) -> CoeffMatrix:
        return CoeffMatrix.from_polynomials([p.value for p in self.basis])


def random_assignment(rng: random.Random, n: int, d: int, lo: int = -9, hi: int = 9) -> Assignment:
    s = n * (n - 1) // 2
    return Assignment([skew_from_upper([rng.randint(lo, hi) for _ in range(s)]) for _ in range(d)])


class InvariantAlgebra:
    """Components of R_-^{O(n)} for d matrices, up to a total-degree bound."""

    def __init__(self, n: int, d: int, max_degree: int = DEFAULT_MAX_DEGREE,
                 backend: str = "exact", prime: int = DEFAULT_PRIME, seed: int = 0):
        if n < 2 or d < 1:
            raise ValueError("need n >= 2 and d >= 1")
        self.n, self.d = n, d
        self.max_degree = max_degree
        self.backend = backend
        self.prime = prime
        self._gens: dict[MultiDegree, list[Invariant]] = {}
        self._components: dict[MultiDegree, GradedComponent] = {}
        # sketch state
        self._rng = random.Random(seed)
        self._points: list[Assignment] = []
        self._values: dict[Invariant, list[int]] = {}
        self._sketch_bases: dict[MultiDegree, list[InvariantProduct]] = {}
        self._sketch_points = 0

    # generators ----------------------------------------------------------------------

    def _check(self, m: Sequence[int]) -> MultiDegree:
        m = _pad(m, self.d)
        if m.total > self.max_degree:
            raise DegreeBoundExceeded(f"total degree {m.total} exceeds bound {self.max_degree}")
        return m

    def generators(self, m: Sequence[int]) -> list[Invariant]:
        """Nonzero σ_t(B), B primitive canonical, with multidegree m."""
        m = self._check(m)
        if m in self._gens:
            return self._gens[m]
        out = []
        for t in range(1, self.n + 1):
            if any(x % t for x in m):
                continue
            counts = [x // t for x in m]
            for w in words_with_counts(counts, primitive_only=True):
                inv = Invariant(t, w, self.n, self.d)
                if self._nonzero(inv):
                    out.append(inv)
        out.sort(key=Invariant.sort_key)
        self._gens[m] = out
        return out

    def _nonzero(self, inv: Invariant) -> bool:
        if inv.t == self.n and self.n % 2:
            return False  # det of a product of odd-size skew matrices
        return bool(inv.value)

    def _split_products(self, m: MultiDegree, bases) -> list[InvariantProduct]:
        seen = {}
        subs = [x for x in sub_multidegrees(m) if x != m]
        for m1 in subs:
            m2 = m - m1
            if tuple(m1) > tuple(m2):
                continue
            b1, b2 = bases(m1), bases(m2)
            for i, p in enumerate(b1):
                for j, q in enumerate(b2):
                    if m1 == m2 and j < i:
                        continue
                    prod = InvariantProduct(p.factors + q.factors)
                    seen.setdefault(prod.factors, prod)
        return sorted(seen.values(), key=lambda p: [f.sort_key() for f in p.factors])

    # exact components -----------------------------------------------------------------

    def component(self, m: Sequence[int]) -> GradedComponent:
        m = self._check(m)
        if m in self._components:
            return self._components[m]
        lower = self._split_products(m, lambda x: self.component(x).basis)
        gens = self.generators(m)
        rows = [p.value for p in lower] + [g.value for g in gens]
        res = rank_and_basis(CoeffMatrix.from_polynomials(rows), self.backend, self.prime)
        kept = set(res.pivot_rows)
        dec = [p for i, p in enumerate(lower) if i in kept]
        new = [InvariantProduct((g,)) for i, g in enumerate(gens) if len(lower) + i in kept]
        comp = GradedComponent(self.n, self.d, m, dec + new, len(dec),
                               [p.label for p in dec + new])
        self._components[m] = comp
        return comp

    def decomposable_span(self, m: Sequence[int]) -> list[InvariantProduct]:
        m = self._check(m)
        return self._split_products(m, lambda x: self.component(x).basis)

    def decompose_exact(self, target: Target) -> DecompositionCertificate | None:
        comb = _as_combination(target)
        m = self._check(comb.mdeg)
        lower = self._split_products(m, lambda x: self.component(x).basis)
        coeffs = express_in_span([p.value.terms for p in lower], comb.value.terms)
        if coeffs is None:
            return None
        cert = DecompositionCertificate(
            comb, [(c, p.factors) for c, p in zip(coeffs, lower) if c])
        if not cert.replay():
            raise AssertionError("exact decomposition failed replay")
        return cert

    # sketches -------------------------------------------------------------------------

    def _ensure_points(self, count: int) -> None:
        while len(self._points) < count:
            self._points.append(random_assignment(self._rng, self.n, self.d))

    def _gen_values(self, inv: Invariant, count: int) -> list[int]:
        vals = self._values.setdefault(inv, [])
        self._ensure_points(count)
        for a in self._points[len(vals):count]:
            vals.append(evaluate(inv, a))
        return vals[:count]

    def _product_values(self, p: InvariantProduct, count: int) -> list[int]:
        out = [1] * count
        for f in p.factors:
            vals = self._gen_values(f, count)
            out = [x * y for x, y in zip(out, vals)]
        return out

    def _sketch_basis(self, m: MultiDegree) -> list[InvariantProduct]:
        if m in self._sketch_bases:
            return self._sketch_bases[m]
        cands = self._split_products(m, self._sketch_basis) + [
            InvariantProduct((g,)) for g in self.generators(m)]
        cols = self._independent_columns(cands)
        basis = [cands[c] for c in cols]
        self._sketch_bases[m] = basis
        return basis

    def _independent_columns(self, cands: list[InvariantProduct], extra: list[int] | None = None):
        count = max(self._sketch_points, 24)
        while True:
            cols = [self._product_values(p, count) for p in cands]
            if extra is not None:
                cols.append(extra[:count] if len(extra) >= count else None)
            rows = [list(r) for r in zip(*cols)] if cols else []
            piv_cols, _ = dense_mod_profile(rows, self.prime) if rows else ([], [])
            if len(piv_cols) < count - 4:
                self._sketch_points = max(self._sketch_points, count)
                return piv_cols
            count *= 2

    def decompose_sketch(self, target: Target) -> DecompositionCertificate | None:
        """Search a decomposition on evaluation sketches and replay it exactly."""
        comb = _as_combination(target)
        m = self._check(comb.mdeg)
        cands = self._split_products(m, self._sketch_basis)
        count = max(self._sketch_points, 24)
        while True:
            gcols = [self._product_values(p, count) for p in cands]
            self._ensure_points(count)
            tvals = [comb.evaluate_at(a) for a in self._points[:count]]
            rows = [list(r) for r in zip(*(gcols + [tvals]))]
            piv_cols, piv_rows = dense_mod_profile(rows, self.prime)
            if len(piv_cols) < count - 4:
                break
            count *= 2
        self._sketch_points = max(self._sketch_points, count)
        if len(cands) in piv_cols:
            return None
        sel_rows = piv_rows
        a = [[gcols[c][r] for c in piv_cols] for r in sel_rows]
        b = [tvals[r] for r in sel_rows]
        coeffs = solve_exact(a, b)
        if coeffs is None:
            return None
        cert = DecompositionCertificate(
            comb, [(c, cands[k].factors) for c, k in zip(coeffs, piv_cols) if c])
        if cert.replay():
            return cert
        log.warning("sketch combination for %s failed exact replay", comb.label)
        return None


# module-level operations ----------------------------------------------------------------------

_ALGEBRAS: dict[tuple, InvariantAlgebra] = {}


def algebra(n: int, d: int, max_degree: int = DEFAULT_MAX_DEGREE, backend: str = "exact",
            prime: int = DEFAULT_PRIME) -> InvariantAlgebra:
    key = (n, d, max_degree, backend, prime)
    if key not in _ALGEBRAS:
        _ALGEBRAS[key] = InvariantAlgebra(n, d, max_degree, backend, prime)
    return _ALGEBRAS[key]


def invariant_span(n: int, d: int, mdeg: Sequence[int],
                   max_degree: int = DEFAULT_MAX_DEGREE) -> GradedComponent:
    return algebra(n, d, max_degree).component(mdeg)


def is_decomposable(inv: Target, n: int, d: int, max_degree: int = DEFAULT_MAX_DEGREE,
                    method: str = "auto") -> DecompositionCertificate | None:
    """Certificate that ``inv`` is a polynomial in lower-degree invariants, else None.

    ``method="auto"`` searches on sketches first; a miss is settled exactly.
    """
    alg = algebra(n, d, max_degree)
    if method in ("auto", "sketch"):
        cert = alg.decompose_sketch(inv)
        if cert is not None or method == "sketch":
            return cert
    return alg.decompose_exact(inv)


@dataclass
class GeneratorReport:
    n: int
    d: int
    max_total_degree: int
    rows: list[dict]

    @property
    def generators(self) -> list[Invariant]:
        return [g for r in self.rows for g in r["representatives"]]

    @property
    def count(self) -> int:
        return sum(r["new"] for r in self.rows)

    def profile(self) -> dict[tuple, int]:
        return {tuple(r["mdeg"]): r["new"] for r in self.rows if r["new"]}

    def count_by_total(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for r in self.rows:
            t = sum(r["mdeg"])
            out[t] = out.get(t, 0) + r["new"]
        return out

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "max_total_degree": self.max_total_degree,
            "degree_bound_note": f"checked in total degrees <= {self.max_total_degree} only",
            "generator_count": self.count,
            "generators": [g.label for g in self.generators],
            "components": [
                {"mdeg": list(r["mdeg"]), "dimension": r["dimension"], "new": r["new"],
                 "representatives": [g.label for g in r["representatives"]]}
                for r in self.rows
            ],
        }

    def to_csv(self) -> str:
        lines = ["mdeg,dimension,new_generators"]
        for r in self.rows:
            lines.append(f"\"{','.join(map(str, r['mdeg']))}\",{r['dimension']},{r['new']}")
        return "\n".join(lines) + "\n"


def minimal_generators(n: int, d: int, max_total_degree: int = 6, backend: str = "exact",
                       prime: int = DEFAULT_PRIME) -> GeneratorReport:
    alg = algebra(n, d, max(max_total_degree, DEFAULT_MAX_DEGREE), backend, prime)
    rows = []
    for m in all_multidegrees(d, max_total_degree):
        comp = alg.component(m)
        rows.append({"mdeg": tuple(m), "dimension": comp.dimension, "new": comp.new_count,
                     "representatives": comp.new_generators})
    return GeneratorReport(n, d, max_total_degree, rows)


def candidate_products(cands: Sequence[Invariant | InvariantProduct], m: Sequence[int]) -> list[InvariantProduct]:
    """All products of candidates (with repetition) of multidegree m."""
    m = MultiDegree(m)
    items = [(_as_product(c), MultiDegree(_pad(_as_product(c).mdeg, len(m)))) for c in cands]
    items = [(p, md) for p, md in items if md.total > 0 and md <= m]
    out = []

    def rec(start: int, remaining: MultiDegree, acc: tuple):
        if remaining.total == 0:
            out.append(InvariantProduct(acc))
            return
        for idx in range(start, len(items)):
            p, md = items[idx]
            if md <= remaining:
                rec(idx, remaining - md, acc + p.factors)

    rec(0, m, ())
    return out


def verify_generation(candidates: Sequence[Invariant], n: int, d: int,
                      max_total_degree: int, backend: str = "exact",
                      prime: int = DEFAULT_PRIME) -> tuple[bool, MultiDegree | None]:
    """Do products of the candidates span every component up to the bound?"""
    alg = algebra(n, d, max(max_total_degree, DEFAULT_MAX_DEGREE), backend, prime)
    for m in all_multidegrees(d, max_total_degree):
        gens = alg.generators(m)
        if not gens:
            continue
        prods = candidate_products(candidates, m)
        polys = [p.value for p in prods]
        base = rank_and_basis(CoeffMatrix.from_polynomials(polys), backend, prime).rank
        full = rank_and_basis(CoeffMatrix.from_polynomials(polys + [g.value for g in gens]),
                              backend, prime).rank
        if full > base:
            return False, m
    return True, None


def linear_rank(invs: Sequence[Target]) -> int:
    """Rank over Q(i) of the coefficient vectors of same-multidegree invariants."""
    combos = [_as_combination(x) for x in invs]
    degs = {tuple(c.mdeg) for c in combos}
    if len(degs) > 1:
        raise MixedMultidegree(f"invariants span multidegrees {sorted(degs)}")
    return rank_and_basis(CoeffMatrix.from_polynomials([c.value for c in combos])).rank


def quotient_dimension(invs: Sequence[Target], n: int, d: int) -> int:
    """Dimension of span(invs) modulo products of lower-degree invariants."""
    combos = [_as_combination(x) for x in invs]
    m = combos[0].mdeg
    alg = algebra(n, d)
    lower = [p.value for p in alg.decomposable_span(m)]
    base = rank_and_basis(CoeffMatrix.from_polynomials(lower)).rank
    full = rank_and_basis(CoeffMatrix.from_polynomials(lower + [c.value for c in combos])).rank
    return full - base


def inv(t: int, word: Iterable[int], n: int, d: int | None = None) -> Invariant:
    """Shorthand constructor: ``inv(1, (1, 2), 3)`` is tr(Y1 Y2) at n = 3."""
    word = tuple(word)
    return Invariant(t, word, n, d or max(word))


def prod(*xs) -> InvariantProduct:
    fs = []
    for x in xs:
        fs.extend(_as_product(x).factors)
    return InvariantProduct(tuple(fs))


__all__ = [
    "DecompositionCertificate", "GeneratorReport", "GradedComponent", "InvariantAlgebra",
    "LinearCombination", "invariant_span", "is_decomposable", "linear_rank",
    "minimal_generators", "quotient_dimension", "verify_generation", "inv", "prod",
]

