"""Exact and modular rank computations over Q(i).

Rows are sparse ``{column: scalar}`` dicts over a shared column index.
The exact backend eliminates over Q(i) directly; the modular backend maps
Z[i]-coefficients into F_p (p = 1 mod 4, i -> sqrt(-1)) or into
F_p[i] = F_{p^2} (p = 3 mod 4).  Both maps are ring homomorphisms, so a
nonzero minor mod p is nonzero over Q(i) and the modular rank is a lower
bound on the exact one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Hashable, Sequence

import numpy as np

from ..errors import BadPrime
from .poly import Polynomial
from .scalars import GaussianRational, inv, real_imag, simplify

DEFAULT_PRIME = 1_000_003


@dataclass
class CoeffMatrix:
    """Sparse rows sharing one ordered column index."""

    rows: list[dict[Hashable, object]]
    columns: list[Hashable] = field(default_factory=list)

    @classmethod
    def from_polynomials(cls, polys: Sequence[Polynomial]) -> "CoeffMatrix":
        cols = sorted({k for p in polys for k in p.terms})
        return cls([dict(p.terms) for p in polys], cols)

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[object]]) -> "CoeffMatrix":
        width = max((len(r) for r in rows), default=0)
        return cls([{c: v for c, v in enumerate(r) if v} for r in rows], list(range(width)))

    def __len__(self):
        return len(self.rows)


@dataclass
class RankResult:
    rank: int
    pivot_rows: list[int]
    backend: str
    prime: int | None = None


# primes and modular fields ------------------------------------------------------


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if p % q == 0:
            return p == q
    d, s = p - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


def _sqrt_minus_one(p: int) -> int:
    for a in range(2, p):
        if pow(a, (p - 1) // 2, p) == p - 1:
            return pow(a, (p - 1) // 4, p)
    raise ValueError("no square root of -1")


class ModField:
    """F_p when p = 1 mod 4, F_p[i] when p = 3 mod 4.  Elements of F_p[i]
    are pairs (a, b) meaning a + b*i."""

    def __init__(self, p: int):
        if not is_prime(p) or p <= 5:
            raise BadPrime(f"modulus must be a prime > 5, got {p}")
        self.p = p
        self.split = p % 4 == 1
        self.root = _sqrt_minus_one(p) if self.split else None

    def _rat(self, q: Fraction) -> int:
        num, den = q.numerator, q.denominator
        if den % self.p == 0:
            raise BadPrime(f"prime {self.p} divides denominator {den}")
        return num * pow(den, -1, self.p) % self.p

    def embed(self, x):
        re_, im_ = real_imag(x)
        a, b = self._rat(re_), self._rat(im_)
        if self.split:
            return (a + b * self.root) % self.p
        return (a, b)

    def is_zero(self, x) -> bool:
        return x == 0 if self.split else x == (0, 0)

    def mul(self, x, y):
        p = self.p
        if self.split:
            return x * y % p
        return ((x[0] * y[0] - x[1] * y[1]) % p, (x[0] * y[1] + x[1] * y[0]) % p)

    def sub(self, x, y):
        p = self.p
        if self.split:
            return (x - y) % p
        return ((x[0] - y[0]) % p, (x[1] - y[1]) % p)

    def inv(self, x):
        p = self.p
        if self.split:
            return pow(x, -1, p)
        n = (x[0] * x[0] + x[1] * x[1]) % p
        ni = pow(n, -1, p)
        return (x[0] * ni % p, (-x[1]) * ni % p)


# elimination -------------------------------------------------------------------


class _Echelon:
    """Incremental echelon form; the pivot of a row is its least column."""

    def __init__(self, is_zero: Callable, mul: Callable, sub: Callable, invert: Callable,
                 order: dict):
        self.is_zero, self.mul, self.sub, self.invert = is_zero, mul, sub, invert
        self.order = order
        self.pivots: dict[Hashable, dict] = {}

    def reduce(self, row: dict, allowed: Callable[[Hashable], bool] | None = None) -> dict:
        r = {c: v for c, v in row.items() if not self.is_zero(v)}
        key = self.order.__getitem__
        while True:
            hits = [c for c in r if c in self.pivots and (allowed is None or allowed(c))]
            if not hits:
                return r
            c = min(hits, key=key)
            f = r[c]
            for cc, pv in self.pivots[c].items():
                cur = r.get(cc)
                nv = self.sub(_zero_like(pv) if cur is None else cur, self.mul(f, pv))
                if self.is_zero(nv):
                    r.pop(cc, None)
                else:
                    r[cc] = nv

    def add(self, row: dict) -> bool:
        r = self.reduce(row)
        if not r:
            return False
        lead = min(r, key=self.order.__getitem__)
        s = self.invert(r[lead])
        self.pivots[lead] = {c: self.mul(v, s) for c, v in r.items()}
        return True


def _zero_like(v):
    return (0, 0) if isinstance(v, tuple) else 0


def _exact_ops():
    return dict(
        is_zero=lambda v: not v,
        mul=lambda a, b: simplify(a * b),
        sub=lambda a, b: simplify(a - b),
        invert=inv,
    )


def _column_order(m: CoeffMatrix) -> dict:
    cols = list(m.columns) or sorted({c for r in m.rows for c in r}, key=repr)
    order = {c: i for i, c in enumerate(cols)}
    for r in m.rows:
        for c in r:
            if c not in order:
                order[c] = len(order)
    return order


def rank_and_basis(m: CoeffMatrix, backend: str = "exact", prime: int = DEFAULT_PRIME) -> RankResult:
    """Rank of ``m`` and the indices of the greedily chosen independent rows."""
    order = _column_order(m)
    if backend == "exact":
        ech = _Echelon(order=order, **_exact_ops())
        kept = [i for i, r in enumerate(m.rows) if ech.add(r)]
        return RankResult(len(kept), kept, "exact")
    if backend.startswith("modular"):
        F = ModField(prime)
        ech = _Echelon(F.is_zero, F.mul, F.sub, F.inv, order)
        kept = [i for i, r in enumerate(m.rows) if ech.add({c: F.embed(v) for c, v in r.items()})]
        return RankResult(len(kept), kept, "modular", prime)
    raise ValueError(f"unknown backend {backend!r}")


def express_in_span(rows: Sequence[dict], target: dict) -> list[object] | None:
    """Exact coefficients c with target = Σ c_i rows_i, or None if outside the span."""
    m = CoeffMatrix(list(rows) + [target])
    order = _column_order(m)
    base = len(order)
    for i in range(len(rows)):
        order[("tag", i)] = base + i
    ech = _Echelon(order=order, **_exact_ops())
    for i, r in enumerate(rows):
        tagged = dict(r)
        tagged[("tag", i)] = 1
        ech.add(tagged)
    is_tag = lambda c: isinstance(c, tuple) and len(c) == 2 and c[0] == "tag"
    residual = ech.reduce(target, allowed=lambda c: not is_tag(c))
    if any(not is_tag(c) for c in residual):
        return None
    coeffs = [0] * len(rows)
    for c, v in residual.items():
        coeffs[c[1]] = simplify(-v)
    return coeffs


# dense helpers used by evaluation sketches ------------------------------------------


def dense_mod_profile(a: Sequence[Sequence[int]], p: int = DEFAULT_PRIME) -> tuple[list[int], list[int]]:
    """Row-echelon profile of an integer matrix mod p (p < 2**31).

    Returns ``(pivot_columns, pivot_rows)``: the columns are the greedy
    left-to-right independent columns, the rows are rows that make the
    corresponding square submatrix invertible mod p.
    """
    if p >= 2 ** 31:
        raise BadPrime("dense modular elimination needs p < 2**31")
    A = np.array([[x % p for x in row] for row in a], dtype=np.int64).reshape(len(a), -1)
    nrows, ncols = A.shape
    row_ids = list(range(nrows))
    piv_cols, piv_rows = [], []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            A[[r, k]] = A[[k, r]]
            row_ids[r], row_ids[k] = row_ids[k], row_ids[r]
        inv_p = pow(int(A[r, c]), -1, p)
        A[r] = (A[r] * inv_p) % p
        col = A[:, c].copy()
        col[r] = 0
        mask = col != 0
        if mask.any():
            A[mask] = (A[mask] - np.outer(col[mask], A[r])) % p
        piv_cols.append(c)
        piv_rows.append(row_ids[r])
        r += 1
    return piv_cols, piv_rows


def solve_exact(a: Sequence[Sequence[object]], b: Sequence[object]) -> list[object] | None:
    """Solve a square nonsingular system over Q(i) by Gauss-Jordan elimination.

    Returns None when the system is singular.
    """
    n = len(a)
    M = [[simplify(x) for x in row] + [simplify(bi)] for row, bi in zip(a, b)]
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c]), None)
        if piv is None:
            return None
        M[c], M[piv] = M[piv], M[c]
        s = inv(M[c][c])
        M[c] = [simplify(x * s) for x in M[c]]
        for r in range(n):
            if r != c and M[r][c]:
                f = M[r][c]
                M[r] = [simplify(x - f * y) for x, y in zip(M[r], M[c])]
    return [M[r][n] for r in range(n)]


def bareiss_rank(a: Sequence[Sequence[int]]) -> int:
    """Exact rank of an integer (or Gaussian-integer) matrix, fraction-free."""
    M = [list(row) for row in a]
    if not M:
        return 0
    nrows, ncols = len(M), len(M[0])
    rank, prev = 0, 1
    for c in range(ncols):
        piv = next((r for r in range(rank, nrows) if M[r][c]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        p = M[rank][c]
        for r in range(rank + 1, nrows):
            rc = M[r][c]
            row_r, row_p = M[r], M[rank]
            for cc in range(c + 1, ncols):
                v = p * row_r[cc] - rc * row_p[cc]
                row_r[cc] = _exact_div(v, prev)
            row_r[c] = 0
        prev = p
        rank += 1
        if rank == nrows:
            break
    return rank


def _exact_div(v, d):
    if isinstance(v, int) and isinstance(d, int):
        q, r = divmod(v, d)
        if r:
            raise ArithmeticError("Bareiss division was not exact")
        return q
    return simplify(v / d) if not isinstance(v, GaussianRational) else v / d
