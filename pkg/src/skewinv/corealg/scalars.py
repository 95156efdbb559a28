"""Exact scalars of Q(i).

Rational numbers are plain ``int``/``Fraction`` values; numbers with a
nonzero imaginary part are :class:`GaussianRational`.  Every arithmetic
result is passed through :func:`simplify`, so a value with zero imaginary
part always comes back as a real number.  Equality and hashing agree across
the three representations.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational as _Rational
from typing import Union

Scalar = Union[int, Fraction, "GaussianRational"]


def _q(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, _Rational):
        return Fraction(x.numerator, x.denominator)
    raise TypeError(f"not a rational: {x!r}")


def simplify(x):
    """Return the cheapest exact representation of ``x``."""
    if type(x) is int:
        return x
    if isinstance(x, GaussianRational):
        if x.im == 0:
            x = x.re
        else:
            return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, bool):
        return int(x)
    if isinstance(x, int):
        return int(x)
    raise TypeError(f"unsupported scalar {x!r}")


class GaussianRational:
    """a + b*i with a, b rational and i**2 = -1."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _q(re)
        self.im = _q(im)

    @staticmethod
    def of(x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        return GaussianRational(x, 0)

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, GaussianRational):
            return simplify(GaussianRational(self.re + other.re, self.im + other.im))
        if isinstance(other, (int, Fraction)):
            return simplify(GaussianRational(self.re + other, self.im))
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if isinstance(other, (GaussianRational, int, Fraction)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return (-self) + other
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, GaussianRational):
            a, b, c, d = self.re, self.im, other.re, other.im
            return simplify(GaussianRational(a * c - b * d, a * d + b * c))
        if isinstance(other, (int, Fraction)):
            return simplify(GaussianRational(self.re * other, self.im * other))
        return NotImplemented

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("GaussianRational division by zero")
        return simplify(GaussianRational(self.re / n, -self.im / n))

    def __truediv__(self, other):
        if isinstance(other, GaussianRational):
            return self * other.inverse()
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("GaussianRational division by zero")
            return simplify(GaussianRational(self.re / other, self.im / other))
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return GaussianRational.of(self.inverse()) ** (-e)
        result, base = 1, self
        while e:
            if e & 1:
                result = base * result
            base = base * base
            e >>= 1
        return simplify(result) if not isinstance(result, GaussianRational) else result

    # comparison -----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        return format_scalar(self)


I = GaussianRational(0, 1)


def real_imag(x) -> tuple[Fraction, Fraction]:
    if isinstance(x, GaussianRational):
        return x.re, x.im
    return _q(x), Fraction(0)


def conj(x):
    if isinstance(x, GaussianRational):
        return x.conjugate()
    return x


def inv(x):
    if isinstance(x, GaussianRational):
        return x.inverse()
    if x == 0:
        raise ZeroDivisionError("division by zero")
    return simplify(Fraction(1) / _q(x))


# serialization -------------------------------------------------------------


def _fmt_q(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def format_scalar(x) -> str:
    """Serialize as ``"num/den"`` with an optional ``"+num/den*i"`` part."""
    re_, im_ = real_imag(x)
    s = _fmt_q(re_)
    if im_:
        s += f"+{_fmt_q(im_)}*i"
    return s


_SCALAR_RE = re.compile(
    r"^\s*(?P<re>[+-]?\d+(?:/\d+)?)?\s*"
    r"(?:(?P<sign>[+-])\s*(?P<im>[+-]?\d+(?:/\d+)?)?\s*\*?\s*i)?\s*$"
)


def parse_scalar(s) -> Scalar:
    """Inverse of :func:`format_scalar`; also accepts ints and ``"3/4-1/2*i"``."""
    if isinstance(s, (int, Fraction, GaussianRational)):
        return simplify(s)
    text = str(s).strip()
    m = _SCALAR_RE.match(text)
    if not m or (m.group("re") is None and m.group("sign") is None):
        if text in ("i", "+i"):
            return I
        if text == "-i":
            return -I
        raise ValueError(f"bad scalar string {s!r}")
    re_ = Fraction(m.group("re")) if m.group("re") else Fraction(0)
    im_ = Fraction(0)
    if m.group("sign"):
        im_ = Fraction(m.group("im")) if m.group("im") else Fraction(1)
        if m.group("sign") == "-":
            im_ = -im_
    return simplify(GaussianRational(re_, im_))
