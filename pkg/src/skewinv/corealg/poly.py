"""Sparse multivariate polynomials in the variables x_ij(k), 1 <= i < j <= n.

A monomial is stored as one packed integer: the exponent of the variable
with index ``v`` occupies bits ``[EXP_BITS*v, EXP_BITS*(v+1))``.  Monomial
multiplication is then integer addition.  Variable index 0 is x_12(1), the
largest variable; see :meth:`Variable.index` for the full order.

Polynomials over different ``n`` never mix; the number of matrices ``d`` is
not part of the ring, so σ_2(Y_1) and tr(Y_1 Y_2) can be added directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Mapping

from ..errors import NonHomogeneous, ZeroPolynomial
from .scalars import format_scalar, parse_scalar, simplify

EXP_BITS = 8
_MASK = (1 << EXP_BITS) - 1
MAX_DEGREE = _MASK


def pairs_count(n: int) -> int:
    return n * (n - 1) // 2


def pair_position(n: int, i: int, j: int) -> int:
    """0-based row-major position of (i, j), i < j, in the strict upper triangle."""
    if not 1 <= i < j <= n:
        raise ValueError(f"bad index pair ({i}, {j}) for n={n}")
    return (i - 1) * n - (i - 1) * i // 2 + (j - i - 1)


def upper_pairs(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(1, n) for j in range(i + 1, n + 1)]


@dataclass(frozen=True)
class Variable:
    """x_ij(k).  Ordered so that x_ij(k) > x_pq(l) iff k < l, or k = l and
    (i, j) precedes (p, q) row-major."""

    i: int
    j: int
    k: int

    def index(self, n: int) -> int:
        return (self.k - 1) * pairs_count(n) + pair_position(n, self.i, self.j)

    @staticmethod
    def from_index(n: int, v: int) -> "Variable":
        m = pairs_count(n)
        k, pos = divmod(v, m)
        i, j = upper_pairs(n)[pos]
        return Variable(i, j, k + 1)

    def __str__(self):
        if self.i < 10 and self.j < 10:
            return f"x{self.i}{self.j}({self.k})"
        return f"x{self.i},{self.j}({self.k})"


def _unpack(key: int) -> Iterator[tuple[int, int]]:
    v = 0
    while key:
        e = key & _MASK
        if e:
            yield v, e
        key >>= EXP_BITS
        v += 1


def _key_degree(key: int) -> int:
    d = 0
    while key:
        d += key & _MASK
        key >>= EXP_BITS
    return d


def _lex_tuple(key: int, width: int) -> tuple[int, ...]:
    out = [0] * width
    for v, e in _unpack(key):
        out[v] = e
    return tuple(out)


def var_key(v: int, e: int = 1) -> int:
    return e << (EXP_BITS * v)


class Monomial:
    """Product of variables; compared lexicographically on exponent vectors
    listed from the largest variable down."""

    __slots__ = ("n", "key")

    def __init__(self, n: int, key: int):
        self.n = n
        self.key = key

    @classmethod
    def from_exponents(cls, n: int, exps: Mapping[Variable, int]) -> "Monomial":
        key = 0
        for var, e in exps.items():
            if e < 0 or e > MAX_DEGREE:
                raise ValueError(f"exponent {e} out of range")
            key += var_key(var.index(n), e)
        return cls(n, key)

    @property
    def exponents(self) -> dict[Variable, int]:
        return {Variable.from_index(self.n, v): e for v, e in _unpack(self.key)}

    @property
    def degree(self) -> int:
        return _key_degree(self.key)

    def _cmp_tuple(self, other: "Monomial") -> tuple[tuple, tuple]:
        w = max(self.key.bit_length(), other.key.bit_length()) // EXP_BITS + 1
        return _lex_tuple(self.key, w), _lex_tuple(other.key, w)

    def __lt__(self, other: "Monomial") -> bool:
        a, b = self._cmp_tuple(other)
        return a < b

    def __gt__(self, other: "Monomial") -> bool:
        a, b = self._cmp_tuple(other)
        return a > b

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(self.n, self.key + other.key)

    def __eq__(self, other):
        return isinstance(other, Monomial) and self.n == other.n and self.key == other.key

    def __hash__(self):
        return hash((self.n, self.key))

    def __str__(self):
        parts = []
        for v, e in _unpack(self.key):
            s = str(Variable.from_index(self.n, v))
            parts.append(s if e == 1 else f"{s}^{e}")
        return "*".join(parts) if parts else "1"

    __repr__ = __str__


class MultiDegree(tuple):
    """(t_1, ..., t_d); ``+`` adds componentwise."""

    def __new__(cls, degrees: Iterable[int]):
        return super().__new__(cls, tuple(int(t) for t in degrees))

    @property
    def total(self) -> int:
        return sum(self)

    def __add__(self, other):
        a, b = list(self), list(other)
        w = max(len(a), len(b))
        a += [0] * (w - len(a))
        b += [0] * (w - len(b))
        return MultiDegree(x + y for x, y in zip(a, b))

    def __sub__(self, other):
        return MultiDegree(x - y for x, y in zip(self, other))

    def __le__(self, other):
        return all(x <= y for x, y in zip(self, other))

    def __repr__(self):
        return f"MultiDegree{tuple(self)}"


class Polynomial:
    """Immutable sparse polynomial over Q(i) in the ring R_-(n).

    ``terms`` maps packed monomial keys to nonzero coefficients.
    """

    def __init__(self, n: int, terms: Mapping[int, object] | None = None, *, _trusted=False):
        self.n = n
        if _trusted:
            self.terms = terms
        else:
            self.terms = {k: simplify(c) for k, c in (terms or {}).items() if c}

    # constructors -----------------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "Polynomial":
        return cls(n, {}, _trusted=True)

    @classmethod
    def const(cls, n: int, c) -> "Polynomial":
        c = simplify(c)
        return cls(n, {0: c} if c else {}, _trusted=True)

    @classmethod
    def var(cls, n: int, i: int, j: int, k: int) -> "Polynomial":
        return cls(n, {var_key(Variable(i, j, k).index(n)): 1}, _trusted=True)

    @classmethod
    def from_monomials(cls, n: int, items: Iterable[tuple[Mapping[Variable, int], object]]):
        acc: dict[int, object] = {}
        for exps, c in items:
            k = Monomial.from_exponents(n, exps).key
            acc[k] = acc.get(k, 0) + c
        return cls(n, acc)

    # basic protocol ----------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.n == other.n and self.terms == other.terms
        try:
            c = simplify(other)
        except TypeError:
            return NotImplemented
        if not c:
            return not self.terms
        return self.terms == {0: c}

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def _coerce(self, other) -> "Polynomial | None":
        if isinstance(other, Polynomial):
            if other.n != self.n:
                raise ValueError(f"ring mismatch: n={self.n} vs n={other.n}")
            return other
        try:
            return Polynomial.const(self.n, other)
        except TypeError:
            return None

    # arithmetic ---------------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if len(o.terms) > len(self.terms):
            big, small = o.terms, self.terms
        else:
            big, small = self.terms, o.terms
        out = dict(big)
        for k, c in small.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                del out[k]
        return Polynomial(self.n, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.n, {k: -c for k, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def scale(self, c) -> "Polynomial":
        c = simplify(c)
        if not c:
            return Polynomial.zero(self.n)
        if c == 1:
            return self
        out = {}
        for k, v in self.terms.items():
            p = v * c
            if type(p) is not int:
                p = simplify(p)
            out[k] = p
        return Polynomial(self.n, out, _trusted=True)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        if other.n != self.n:
            raise ValueError(f"ring mismatch: n={self.n} vs n={other.n}")
        a, b = self.terms, other.terms
        if not a or not b:
            return Polynomial.zero(self.n)
        if self.degree + other.degree > MAX_DEGREE:
            raise OverflowError("total degree exceeds packed-exponent capacity")
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            ((kb, cb),) = b.items()
            if kb == 0:
                return self.scale(cb) if a is self.terms else other.scale(cb)
        out: dict[int, object] = {}
        get = out.get
        items_b = list(b.items())
        for ka, ca in a.items():
            for kb, cb in items_b:
                k = ka + kb
                out[k] = get(k, 0) + ca * cb
        clean = {}
        for k, c in out.items():
            if c:
                clean[k] = c if type(c) is int else simplify(c)
        return Polynomial(self.n, clean, _trusted=True)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            return NotImplemented
        result = Polynomial.const(self.n, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    # structure ----------------------------------------------------------------

    @cached_property
    def degree(self) -> int:
        """Maximal total degree of a term (-1 for the zero polynomial)."""
        if not self.terms:
            return -1
        return max(_key_degree(k) for k in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {_key_degree(k) for k in self.terms}
        return len(degs) <= 1

    def variables(self) -> set[int]:
        out = set()
        for k in self.terms:
            for v, _ in _unpack(k):
                out.add(v)
        return out

    def degree_in(self, v: int) -> int:
        shift = EXP_BITS * v
        return max(((k >> shift) & _MASK for k in self.terms), default=0)

    def items(self) -> Iterator[tuple[Monomial, object]]:
        for k, c in self.terms.items():
            yield Monomial(self.n, k), c

    def coefficient(self, mono: Monomial | Mapping[Variable, int]):
        if not isinstance(mono, Monomial):
            mono = Monomial.from_exponents(self.n, mono)
        return self.terms.get(mono.key, 0)

    def sorted_terms(self) -> list[tuple[Monomial, object]]:
        """Terms from the highest monomial down (degree first, then lex)."""
        width = max((k.bit_length() for k in self.terms), default=0) // EXP_BITS + 1
        keyed = [(_key_degree(k), _lex_tuple(k, width), k) for k in self.terms]
        keyed.sort(reverse=True)
        return [(Monomial(self.n, k), self.terms[k]) for _, _, k in keyed]

    # calculus and substitution -------------------------------------------------

    def derivative(self, v: int) -> "Polynomial":
        shift = EXP_BITS * v
        unit = 1 << shift
        out = {}
        for k, c in self.terms.items():
            e = (k >> shift) & _MASK
            if e:
                out[k - unit] = c * e
        return Polynomial(self.n, out, _trusted=True)

    def evaluate(self, values: Mapping[int, object]):
        """Exact value at a point given as ``{variable index: scalar}``;
        missing variables are zero."""
        total = 0
        for k, c in self.terms.items():
            term = c
            for v, e in _unpack(k):
                x = values.get(v, 0)
                if not x:
                    term = 0
                    break
                term = term * (x if e == 1 else x ** e)
            if term:
                total = total + term
        return simplify(total)

    def split_by(self, v: int) -> dict[int, "Polynomial"]:
        """Coefficients of powers of variable ``v``."""
        shift = EXP_BITS * v
        groups: dict[int, dict[int, object]] = {}
        for k, c in self.terms.items():
            e = (k >> shift) & _MASK
            groups.setdefault(e, {})[k - (e << shift)] = c
        return {e: Polynomial(self.n, t, _trusted=True) for e, t in groups.items()}

    def substitute(self, v: int, num: "Polynomial", den: "Polynomial | None" = None) -> "Polynomial":
        """Replace variable ``v`` by ``num/den``.

        With a denominator, the result is the numerator after clearing
        ``den**m`` where ``m`` is the degree of ``self`` in ``v``; it vanishes
        exactly when the substituted rational function does (for den != 0).
        """
        groups = self.split_by(v)
        if set(groups) <= {0}:
            return self
        m = max(groups)
        out = Polynomial.zero(self.n)
        num_pows = [Polynomial.const(self.n, 1)]
        for _ in range(m):
            num_pows.append(num_pows[-1] * num)
        if den is None:
            for e, rest in groups.items():
                out = out + rest * num_pows[e]
            return out
        den_pows = [Polynomial.const(self.n, 1)]
        for _ in range(m):
            den_pows.append(den_pows[-1] * den)
        for e, rest in groups.items():
            out = out + rest * num_pows[e] * den_pows[m - e]
        return out

    def reduce_power(self, v: int, e: int, replacement: "Polynomial") -> "Polynomial":
        """Rewrite modulo ``x_v**e - replacement`` (replacement free of x_v)."""
        if v in replacement.variables():
            raise ValueError("replacement must not contain the reduced variable")
        groups = self.split_by(v)
        if max(groups, default=0) < e:
            return self
        out = Polynomial.zero(self.n)
        rep_pows = [Polynomial.const(self.n, 1)]
        for a, rest in groups.items():
            q, r = divmod(a, e)
            while len(rep_pows) <= q:
                rep_pows.append(rep_pows[-1] * replacement)
            out = out + rest * rep_pows[q] * Polynomial(self.n, {var_key(v, r): 1}, _trusted=True)
        return out

    # printing and serialization ---------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono, c in self.sorted_terms():
            cs = format_scalar(c)
            if cs.endswith("/1") and "*i" not in cs:
                cs = cs[:-2]
            if mono.key == 0:
                parts.append(cs)
            elif c == 1:
                parts.append(str(mono))
            elif c == -1:
                parts.append("-" + str(mono))
            else:
                parts.append(f"({cs})*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"Polynomial(n={self.n}, {self})"

    def to_json(self) -> list[dict]:
        out = []
        for mono, c in self.sorted_terms():
            exps = sorted(mono.exponents.items(), key=lambda it: it[0].index(self.n))
            out.append({
                "monomial": [[var.i, var.j, var.k, e] for var, e in exps],
                "coeff": format_scalar(c),
            })
        return out

    @classmethod
    def from_json(cls, n: int, data: list[dict]) -> "Polynomial":
        items = []
        for term in data:
            exps = {Variable(i, j, k): e for i, j, k, e in term["monomial"]}
            items.append((exps, parse_scalar(term["coeff"])))
        return cls.from_monomials(n, items)


# free functions matching the module contract -------------------------------------


def poly_arith(a: Polynomial, b, op: str) -> Polynomial:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "scale":
        return a.scale(b)
    raise ValueError(f"unknown op {op!r}")


def mdeg(f: Polynomial, d: int | None = None) -> MultiDegree:
    """Shared multidegree of all terms of ``f``."""
    if not f.terms:
        raise ZeroPolynomial("mdeg of the zero polynomial is undefined")
    m = pairs_count(f.n)
    found = None
    top = 0
    for key in f.terms:
        degs: dict[int, int] = {}
        for v, e in _unpack(key):
            kk = v // m
            degs[kk] = degs.get(kk, 0) + e
        t = tuple(sorted(degs.items()))
        if found is None:
            found = t
        elif t != found:
            raise NonHomogeneous(f"terms have different multidegrees: {found} vs {t}")
        top = max([top] + [kk + 1 for kk in degs])
    width = top if d is None else d
    if width < top:
        raise ValueError(f"polynomial involves matrix {top} > d={d}")
    vec = [0] * width
    for kk, e in found:
        vec[kk] = e
    return MultiDegree(vec)


def hterm(f: Polynomial) -> Monomial:
    """Highest monomial of a degree-homogeneous polynomial."""
    if not f.terms:
        raise ZeroPolynomial("hterm of the zero polynomial")
    if not f.is_homogeneous():
        raise NonHomogeneous("hterm needs a polynomial homogeneous in total degree")
    width = max(k.bit_length() for k in f.terms) // EXP_BITS + 1
    best = max(f.terms, key=lambda k: _lex_tuple(k, width))
    return Monomial(f.n, best)
