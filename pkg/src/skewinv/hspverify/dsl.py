"""A small, safe expression language for proof-replay certificates.

Names
  ``a2``, ``f13`` ...  the entry of matrix k (trailing digits) at the
                       row-major upper position given by the letter
                       (a = (1,2), b = (1,3), ...); i.e. x_ij(k)
  ``A1``, ``B3`` ...   matrices declared in the certificate base
  ``I``                the imaginary unit
  lets                 names bound by the branch

Functions: ``tr(M)``, ``det(M)``, ``sigma(t, M)``, ``entry(M, r, c)``
(1-based), ``transpose(M)``.  ``*`` is the matrix product between matrices.
Only ``ast`` nodes listed below are accepted; nothing is ever ``eval``-ed.
"""

from __future__ import annotations

import ast
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping

from ..corealg.poly import Polynomial, Variable, pairs_count, upper_pairs
from ..corealg.scalars import I, GaussianRational, inv, simplify
from ..errors import MalformedCertificate
from ..genmat import Matrix, sigma

LETTERS = "abcdefghijklmnopqrstuvwxyz"
PARAM_RE = re.compile(r"^([a-z])(\d+)$")

Scalar = (int, Fraction, GaussianRational)


@dataclass(frozen=True)
class Frac:
    """num/den with den assumed nonzero; only legal on the right of a substitution."""

    num: Polynomial
    den: Polynomial


def param_variable(name: str, n: int) -> Variable | None:
    m = PARAM_RE.match(name)
    if not m:
        return None
    pos = LETTERS.index(m.group(1))
    k = int(m.group(2))
    if pos >= pairs_count(n) or k < 1:
        return None
    i, j = upper_pairs(n)[pos]
    return Variable(i, j, k)


def param_name(v: Variable, n: int) -> str:
    return f"{LETTERS[upper_pairs(n).index((v.i, v.j))]}{v.k}"


def generic_matrix(n: int, k: int) -> Matrix:
    rows: list[list[object]] = [[0] * n for _ in range(n)]
    for i, j in upper_pairs(n):
        x = Polynomial.var(n, i, j, k)
        rows[i - 1][j - 1] = x
        rows[j - 1][i - 1] = -x
    return Matrix(rows)


def const_value(x):
    """The scalar behind a constant polynomial, else None."""
    if isinstance(x, Scalar):
        return x
    if isinstance(x, Polynomial) and not x.variables():
        return x.terms.get(0, 0) if x else 0
    return None


def as_poly(x, n: int) -> Polynomial:
    if isinstance(x, Polynomial):
        return x
    if isinstance(x, Scalar):
        return Polynomial.const(n, x)
    raise MalformedCertificate(f"expected a scalar expression, got {type(x).__name__}")


class Evaluator:
    def __init__(self, n: int, matrices: Mapping[str, Matrix], lets: Mapping[str, str] | None = None,
                 param_hook: Callable[[Polynomial], Polynomial] | None = None):
        self.n = n
        self.param_hook = param_hook
        self.matrices = dict(matrices)
        self._let_src = dict(lets or {})
        self._let_val: dict[str, object] = {}
        self._active: set[str] = set()

    # entry points ---------------------------------------------------------------

    def eval(self, text: str):
        try:
            tree = ast.parse(str(text), mode="eval")
        except SyntaxError as exc:
            raise MalformedCertificate(f"cannot parse {text!r}: {exc.msg}") from None
        return self._node(tree.body)

    # nodes ------------------------------------------------------------------------

    def _node(self, node):
        if isinstance(node, ast.Constant):
            if isinstance(node.value, bool) or not isinstance(node.value, int):
                raise MalformedCertificate(f"only integer literals are allowed, got {node.value!r}")
            return node.value
        if isinstance(node, ast.Name):
            return self._name(node.id)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = self._node(node.operand)
            return self._neg(v) if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            a, b = self._node(node.left), self._node(node.right)
            if isinstance(node.op, ast.Add):
                return self._add(a, b)
            if isinstance(node.op, ast.Sub):
                return self._add(a, self._neg(b))
            if isinstance(node.op, ast.Mult):
                return self._mul(a, b)
            if isinstance(node.op, ast.Div):
                return self._div(a, b)
            if isinstance(node.op, ast.Pow):
                e = const_value(b)
                if not isinstance(e, int) or e < 1:
                    raise MalformedCertificate("exponents must be positive integers")
                return self._pow(a, e)
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and not node.keywords:
            return self._call(node.func.id, [self._node(x) for x in node.args])
        raise MalformedCertificate(f"unsupported syntax: {ast.dump(node)[:60]}")

    def _name(self, name: str):
        if name == "I":
            return I
        if name in self._let_src:
            if name not in self._let_val:
                if name in self._active:
                    raise MalformedCertificate(f"cyclic definition of {name!r}")
                self._active.add(name)
                self._let_val[name] = self.eval(self._let_src[name])
                self._active.discard(name)
            return self._let_val[name]
        if name in self.matrices:
            return self.matrices[name]
        v = param_variable(name, self.n)
        if v is not None:
            x = Polynomial.var(self.n, v.i, v.j, v.k)
            return self.param_hook(x) if self.param_hook else x
        raise MalformedCertificate(f"unknown name {name!r}")

    def _call(self, fn: str, args: list):
        def need_matrix(x):
            if not isinstance(x, Matrix):
                raise MalformedCertificate(f"{fn} expects a matrix")
            return x

        if fn == "tr" and len(args) == 1:
            return need_matrix(args[0]).trace()
        if fn == "det" and len(args) == 1:
            m = need_matrix(args[0])
            return sigma(m.n, m)
        if fn == "sigma" and len(args) == 2:
            t = const_value(args[0])
            if not isinstance(t, int):
                raise MalformedCertificate("sigma(t, M) needs an integer t")
            return sigma(t, need_matrix(args[1]))
        if fn == "entry" and len(args) == 3:
            r, c = const_value(args[1]), const_value(args[2])
            m = need_matrix(args[0])
            if not (isinstance(r, int) and isinstance(c, int) and 1 <= r <= m.n and 1 <= c <= m.n):
                raise MalformedCertificate("entry(M, r, c) needs 1-based integer indices")
            return m.rows[r - 1][c - 1]
        if fn == "transpose" and len(args) == 1:
            return need_matrix(args[0]).transpose()
        raise MalformedCertificate(f"unknown function {fn}/{len(args)}")

    # arithmetic ------------------------------------------------------------------------

    def _neg(self, a):
        if isinstance(a, Frac):
            return Frac(-a.num, a.den)
        return -a

    def _frac(self, a) -> Frac:
        if isinstance(a, Frac):
            return a
        return Frac(as_poly(a, self.n), Polynomial.const(self.n, 1))

    def _add(self, a, b):
        if isinstance(a, Matrix) != isinstance(b, Matrix):
            raise MalformedCertificate("cannot add a matrix and a scalar")
        if isinstance(a, Frac) or isinstance(b, Frac):
            x, y = self._frac(a), self._frac(b)
            if x.den == y.den:
                return Frac(x.num + y.num, x.den)
            return Frac(x.num * y.den + y.num * x.den, x.den * y.den)
        if isinstance(a, Scalar) and isinstance(b, Scalar):
            return simplify(a + b)
        return a + b

    def _mul(self, a, b):
        if isinstance(a, Matrix) and isinstance(b, Matrix):
            return a @ b
        if isinstance(a, Matrix) or isinstance(b, Matrix):
            m, c = (a, b) if isinstance(a, Matrix) else (b, a)
            if isinstance(c, Frac):
                raise MalformedCertificate("matrices cannot be scaled by fractions")
            return m.scale(c)
        if isinstance(a, Frac) or isinstance(b, Frac):
            x, y = self._frac(a), self._frac(b)
            return Frac(x.num * y.num, x.den * y.den)
        if isinstance(a, Scalar) and isinstance(b, Scalar):
            return simplify(a * b)
        if isinstance(a, Scalar):
            return b.scale(a)
        if isinstance(b, Scalar):
            return a.scale(b)
        return a * b

    def _div(self, a, b):
        if isinstance(b, Matrix):
            raise MalformedCertificate("cannot divide by a matrix")
        c = const_value(b) if not isinstance(b, Frac) else None
        if c is not None:
            if not c:
                raise MalformedCertificate("division by zero")
            return self._mul(a, inv(simplify(c)))
        if isinstance(a, Matrix):
            raise MalformedCertificate("matrices can only be divided by constants")
        x, y = self._frac(a), self._frac(b)
        return Frac(x.num * y.den, x.den * y.num)

    def _pow(self, a, e: int):
        if isinstance(a, Matrix):
            return a ** e
        if isinstance(a, Frac):
            return Frac(a.num ** e, a.den ** e)
        if isinstance(a, Scalar):
            return simplify(a ** e)
        return a ** e
