"""Generic and numeric skew-symmetric matrices, traces and σ_t of words.

One :class:`Matrix` type holds either polynomial entries (generic matrices
Y_k) or exact scalars (numeric matrices A_k); the arithmetic below never
cares which.  σ_t is the coefficient of λ^(n-t) in det(M + λE).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from pathlib import Path
from typing import Iterable, Sequence

from .corealg.poly import MultiDegree, Polynomial, pairs_count
from .corealg.scalars import format_scalar, parse_scalar, simplify
from .errors import BadLength, BadT, SizeMismatch
from .words import Word, canonical_rep, letter_counts, rotations


class Matrix:
    """Square matrix over polynomials or Q(i) scalars."""

    __slots__ = ("rows",)

    def __init__(self, rows: Sequence[Sequence[object]]):
        self.rows = [list(r) for r in rows]
        n = len(self.rows)
        if any(len(r) != n for r in self.rows):
            raise ValueError("matrix must be square")

    @property
    def n(self) -> int:
        return len(self.rows)

    @classmethod
    def zeros(cls, n: int) -> "Matrix":
        return cls([[0] * n for _ in range(n)])

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __matmul__(self, other: "Matrix") -> "Matrix":
        n = self.n
        if other.n != n:
            raise SizeMismatch(f"cannot multiply {n}x{n} by {other.n}x{other.n}")
        B = other.rows
        out = []
        for row in self.rows:
            nz = [(l, a) for l, a in enumerate(row) if a]
            new = []
            for j in range(n):
                acc = 0
                for l, a in nz:
                    b = B[l][j]
                    if b:
                        acc = acc + a * b
                new.append(acc)
            out.append(new)
        return Matrix(out)

    def __add__(self, other: "Matrix") -> "Matrix":
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        return Matrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self) -> "Matrix":
        return Matrix([[-a for a in r] for r in self.rows])

    def scale(self, c) -> "Matrix":
        return Matrix([[a * c if a else 0 for a in r] for r in self.rows])

    def __pow__(self, e: int) -> "Matrix":
        if e < 1:
            raise ValueError("only positive powers")
        out = self
        for _ in range(e - 1):
            out = out @ self
        return out

    def add_diagonal(self, c) -> "Matrix":
        rows = [list(r) for r in self.rows]
        for i in range(self.n):
            rows[i][i] = rows[i][i] + c
        return Matrix(rows)

    def transpose(self) -> "Matrix":
        return Matrix([list(col) for col in zip(*self.rows)])

    def trace(self):
        acc = 0
        for i in range(self.n):
            acc = acc + self.rows[i][i]
        return acc

    def is_zero(self) -> bool:
        return not any(a for r in self.rows for a in r)

    def is_skew(self) -> bool:
        n = self.n
        return all(
            (not self.rows[i][i]) and _eq(self.rows[j][i], -self.rows[i][j])
            for i in range(n) for j in range(i, n)
        )

    def __eq__(self, other):
        if not isinstance(other, Matrix) or other.n != self.n:
            return False
        return all(_eq(a, b) for r, s in zip(self.rows, other.rows) for a, b in zip(r, s))

    def direct_sum(self, other: "Matrix") -> "Matrix":
        n, m = self.n, other.n
        rows = [list(r) + [0] * m for r in self.rows]
        rows += [[0] * n + list(r) for r in other.rows]
        return Matrix(rows)

    def nonzero_count(self) -> int:
        return sum(1 for r in self.rows for a in r if a)

    def to_json(self):
        return [[_entry_json(a) for a in r] for r in self.rows]

    def __repr__(self):
        return "Matrix(" + repr([[str(a) for a in r] for r in self.rows]) + ")"


def _eq(a, b) -> bool:
    if isinstance(b, Polynomial) and not isinstance(a, Polynomial):
        a, b = b, a
    return a == b


def _entry_json(a):
    if isinstance(a, Polynomial):
        return a.to_json()
    return format_scalar(a)


class SkewMatrix(Matrix):
    """Matrix with A^T = -A, checked on construction."""

    __slots__ = ()

    def __init__(self, rows):
        super().__init__(rows)
        if not self.is_skew():
            raise ValueError("matrix is not skew-symmetric")

    def upper(self) -> list[object]:
        n = self.n
        return [self.rows[i][j] for i in range(n) for j in range(i + 1, n)]

    def to_json(self):
        return {"n": self.n, "upper": [_entry_json(a) for a in self.upper()]}

    @classmethod
    def from_json(cls, data) -> "SkewMatrix":
        m = skew_from_upper([parse_scalar(x) for x in data["upper"]])
        if "n" in data and data["n"] != m.n:
            raise BadLength(f"upper list does not match n={data['n']}")
        return m


def generic_skew(n: int, k: int) -> SkewMatrix:
    """Y_k: x_ij(k) above the diagonal, -x_ij(k) below."""
    if n < 2 or k < 1:
        raise ValueError("need n >= 2 and k >= 1")
    rows: list[list[object]] = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            x = Polynomial.var(n, i + 1, j + 1, k)
            rows[i][j] = x
            rows[j][i] = -x
    return SkewMatrix(rows)


def size_from_upper(s: int) -> int:
    n = 2
    while pairs_count(n) < s:
        n += 1
    if pairs_count(n) != s:
        raise BadLength(f"{s} is not n(n-1)/2 for any n >= 2")
    return n


def skew_from_upper(values: Sequence[object]) -> SkewMatrix:
    """Skew(a_1, ..., a_s): row-major fill of the strict upper triangle."""
    n = size_from_upper(len(values))
    rows: list[list[object]] = [[0] * n for _ in range(n)]
    it = iter(values)
    for i in range(n):
        for j in range(i + 1, n):
            v = next(it)
            v = v if isinstance(v, Polynomial) else simplify(v)
            rows[i][j] = v
            rows[j][i] = -v
    return SkewMatrix(rows)


# characteristic coefficients ---------------------------------------------------------


def sigmas(m: Matrix, upto: int | None = None) -> list[object]:
    """[σ_0, ..., σ_upto] of ``m`` by the Faddeev-LeVerrier recurrence.

    The recurrence gives c_t of det(λE - M) = Σ c_t λ^(n-t); σ_t = (-1)^t c_t.
    """
    n = m.n
    upto = n if upto is None else upto
    out = [1]
    Mk = m
    c_prev = None
    for t in range(1, upto + 1):
        if t > 1:
            Mk = m @ Mk.add_diagonal(c_prev)
        tr = Mk.trace()
        c = _div(-tr, t)
        out.append(c if t % 2 == 0 else -c)
        c_prev = c
    return out


def _div(x, t: int):
    if isinstance(x, Polynomial):
        return x.scale(Fraction(1, t))
    return simplify(x * Fraction(1, t)) if x else 0


def sigma(t: int, m: Matrix):
    if not 0 <= t <= m.n:
        raise BadT(f"t={t} outside 0..{m.n}")
    return sigmas(m, t)[t]


# words in generic matrices ---------------------------------------------------------------


@lru_cache(maxsize=None)
def _generic(n: int, k: int) -> SkewMatrix:
    return generic_skew(n, k)


@lru_cache(maxsize=None)
def _generic_product(n: int, w: Word) -> Matrix:
    if len(w) == 1:
        return _generic(n, w[0])
    return _generic_product(n, w[:-1]) @ _generic(n, w[-1])


def word_product(w: Sequence[int], n: int, assignment: "Assignment | None" = None) -> Matrix:
    """Y_{i1}...Y_{is}, or A_{i1}...A_{is} when an assignment is given."""
    w = tuple(w)
    if not w:
        raise ValueError("empty word")
    if assignment is None:
        return _generic_product(n, w)
    if assignment.n != n:
        raise SizeMismatch(f"assignment has n={assignment.n}, expected {n}")
    if max(w) > assignment.d:
        raise SizeMismatch(f"word uses Y_{max(w)} but only {assignment.d} matrices given")
    out = assignment.matrices[w[0] - 1]
    for x in w[1:]:
        out = out @ assignment.matrices[x - 1]
    return out


def _zero(n: int) -> Polynomial:
    return Polynomial.zero(n)


@lru_cache(maxsize=None)
def _trace_canonical(n: int, rep: Word) -> Polynomial:
    if len(rep) % 2 and min(rotations(rep[::-1])) == min(rotations(rep)):
        return _zero(n)
    head = _generic_product(n, rep[:-1]) if len(rep) > 1 else None
    last = _generic(n, rep[-1])
    if head is None:
        return _as_poly(n, last.trace())
    acc = _zero(n)
    for i in range(n):
        for j in range(n):
            a, b = head.rows[i][j], last.rows[j][i]
            if a and b:
                acc = acc + a * b
    return acc


def _as_poly(n: int, x) -> Polynomial:
    return x if isinstance(x, Polynomial) else Polynomial.const(n, x)


def trace_word(w: Sequence[int], n: int) -> Polynomial:
    """tr(Y_{i1}...Y_{is}) as an exact polynomial.

    Odd words whose reversal is a cyclic shift give zero without multiplying;
    other odd words such as (1, 2, 3) do not vanish.
    """
    cf = canonical_rep(tuple(w))
    p = _trace_canonical(n, cf.rep)
    return p if cf.trace_sign == 1 else -p


@lru_cache(maxsize=None)
def _sigma_canonical(t: int, n: int, rep: Word) -> Polynomial:
    if t == 1:
        return _trace_canonical(n, rep)
    if (t * len(rep)) % 2 and min(rotations(rep[::-1])) == min(rotations(rep)):
        # reversal maps the class to itself and flips the sign of σ_t
        return _zero(n)
    return _as_poly(n, sigmas(_generic_product(n, rep), t)[t])


def sigma_word(t: int, w: Sequence[int], n: int) -> Polynomial:
    """σ_t(Y_{i1}...Y_{is}) as an exact polynomial."""
    if not 1 <= t <= n:
        raise BadT(f"t={t} outside 1..{n}")
    cf = canonical_rep(tuple(w))
    p = _sigma_canonical(t, n, cf.rep)
    return p if cf.sigma_sign(t) == 1 else -p


def clear_caches() -> None:
    for f in (_generic, _generic_product, _trace_canonical, _sigma_canonical):
        f.cache_clear()


# invariants ---------------------------------------------------------------------------


def _word_label(w: Word) -> str:
    parts = []
    i = 0
    while i < len(w):
        j = i
        while j < len(w) and w[j] == w[i]:
            j += 1
        run = j - i
        parts.append(f"Y{w[i]}" if run == 1 else f"Y{w[i]}^{run}")
        i = j
    return " ".join(parts)


@dataclass(frozen=True)
class Invariant:
    """σ_t of a word in the generic matrices (t = 1 is the trace)."""

    t: int
    word: Word
    n: int
    d: int = 0

    def __post_init__(self):
        object.__setattr__(self, "word", tuple(self.word))
        if not 1 <= self.t <= self.n:
            raise BadT(f"t={self.t} outside 1..{self.n}")
        if self.d == 0:
            object.__setattr__(self, "d", max(self.word))

    @cached_property
    def value(self) -> Polynomial:
        return sigma_word(self.t, self.word, self.n)

    @property
    def mdeg(self) -> MultiDegree:
        return MultiDegree(self.t * c for c in letter_counts(self.word, self.d))

    @property
    def degree(self) -> int:
        return self.t * len(self.word)

    @property
    def label(self) -> str:
        if self.t == 1:
            return f"tr({_word_label(self.word)})"
        inner = _word_label(self.word)
        return f"σ{self.t}({inner})"

    @property
    def factors(self) -> tuple["Invariant", ...]:
        return (self,)

    def evaluate_at(self, a: "Assignment"):
        return evaluate(self, a)

    def sort_key(self):
        return (self.t, len(self.word), self.word)

    def __str__(self):
        return self.label


@dataclass(frozen=True)
class InvariantProduct:
    """Product of invariants, kept as a sorted multiset of factors."""

    factors: tuple[Invariant, ...]

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(sorted(self.factors, key=Invariant.sort_key)))

    @cached_property
    def value(self) -> Polynomial:
        n = self.factors[0].n
        out = Polynomial.const(n, 1)
        for f in self.factors:
            out = out * f.value
        return out

    @property
    def n(self) -> int:
        return self.factors[0].n

    @property
    def mdeg(self) -> MultiDegree:
        total = MultiDegree(())
        for f in self.factors:
            total = total + f.mdeg
        return total

    @property
    def degree(self) -> int:
        return sum(f.degree for f in self.factors)

    @property
    def label(self) -> str:
        parts = []
        i = 0
        fs = self.factors
        while i < len(fs):
            j = i
            while j < len(fs) and fs[j] == fs[i]:
                j += 1
            parts.append(fs[i].label if j - i == 1 else f"{fs[i].label}^{j - i}")
            i = j
        return "·".join(parts)

    def evaluate_at(self, a: "Assignment"):
        out = 1
        for f in self.factors:
            out = out * evaluate(f, a)
        return simplify(out)

    def __str__(self):
        return self.label


def product_of(*invs) -> InvariantProduct:
    fs = []
    for x in invs:
        fs.extend(x.factors)
    return InvariantProduct(tuple(fs))


# numeric evaluation -----------------------------------------------------------------------


@dataclass
class Assignment:
    matrices: list[SkewMatrix] = field(default_factory=list)

    def __post_init__(self):
        if not self.matrices:
            raise ValueError("assignment needs at least one matrix")
        n = self.matrices[0].n
        for m in self.matrices:
            if m.n != n:
                raise SizeMismatch("all matrices must share one size")
            if not isinstance(m, SkewMatrix):
                raise ValueError("assignment matrices must be skew-symmetric")

    @property
    def n(self) -> int:
        return self.matrices[0].n

    @property
    def d(self) -> int:
        return len(self.matrices)

    def values(self) -> dict[int, object]:
        """Variable-index -> value map for polynomial evaluation."""
        out = {}
        m = pairs_count(self.n)
        for k, A in enumerate(self.matrices):
            for pos, v in enumerate(A.upper()):
                if v:
                    out[k * m + pos] = v
        return out

    def to_json(self):
        return {"matrices": [m.to_json() for m in self.matrices]}

    @classmethod
    def from_json(cls, data) -> "Assignment":
        items = data["matrices"] if isinstance(data, dict) else data
        return cls([SkewMatrix.from_json(x) for x in items])

    @classmethod
    def load(cls, path: str | Path) -> "Assignment":
        return cls.from_json(json.loads(Path(path).read_text()))


def evaluate(inv: Invariant, a: Assignment):
    """Value of ``inv`` at the numeric matrices ``a``."""
    if inv.n != a.n:
        raise SizeMismatch(f"invariant has n={inv.n}, assignment n={a.n}")
    if isinstance(inv, InvariantProduct):
        return inv.evaluate_at(a)
    prod = word_product(inv.word, a.n, a)
    return simplify(sigmas(prod, inv.t)[inv.t])


def cayley_hamilton_residual(n: int) -> Matrix:
    """Σ_{i=0}^{n} U^(n-i) σ_i(U) for U = Y_1; zero for skew U."""
    U = _generic(n, 1)
    s = sigmas(U)
    acc = Matrix.zeros(n)
    power = Matrix.identity(n)
    for i in range(n, -1, -1):
        if s[i]:
            acc = acc + power.scale(s[i])
        if i:
            power = power @ U
    return acc


def poly_matrix_values(m: Matrix) -> Iterable[object]:
    for r in m.rows:
        yield from r
