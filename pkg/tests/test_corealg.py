from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skewinv.corealg.linalg import CoeffMatrix, express_in_span, rank_and_basis
from skewinv.corealg.poly import Monomial, MultiDegree, Polynomial, Variable, hterm, mdeg
from skewinv.corealg.scalars import GaussianRational, I, format_scalar, parse_scalar, simplify
from skewinv.errors import NonHomogeneous, ZeroPolynomial
from skewinv.genmat import sigma_word, trace_word


def x(i, j, k=1, n=3):
    return Polynomial.var(n, i, j, k)


rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
gaussians = st.builds(GaussianRational, rationals, rationals)


# scalars


def test_i_squared():
    assert simplify(I * I) == -1


def test_one_plus_i_squared_is_2i():
    assert (1 + I) * (1 + I) == GaussianRational(0, 2)


def test_k3_sigma2_cancellation():
    a = (1 + I) * Fraction(1, 2)
    b = (-1 + I) * Fraction(1, 2)
    assert simplify(a * a + b * b) == 0


@given(gaussians, gaussians, gaussians)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a


@given(gaussians)
def test_inverse(a):
    if simplify(a) != 0:
        assert simplify(a * a.inverse()) == 1


@given(gaussians)
def test_conjugation_is_involution(a):
    assert a.conjugate().conjugate() == a


@given(gaussians)
def test_scalar_roundtrip(a):
    assert parse_scalar(format_scalar(a)) == simplify(a)


def test_scalar_format_shape():
    assert format_scalar(Fraction(3, 4)) == "3/4"
    assert format_scalar(GaussianRational(1, 2)) == "1/1+2/1*i"


# polynomials


def test_additive_inverse():
    assert not (x(1, 2) + (-x(1, 2)))
    assert x(1, 2) - x(1, 2) == Polynomial.zero(3)


def test_mdeg_examples():
    assert mdeg(x(1, 2, 1) * x(1, 3, 2)) == (1, 1)
    assert mdeg(trace_word((1, 2, 2, 1, 2, 2), 3)) == (2, 4)
    assert mdeg(trace_word((1, 2, 3), 3)) == (1, 1, 1)
    with pytest.raises(NonHomogeneous):
        mdeg(x(1, 2, 1) + x(1, 3, 2))


def test_mdeg_zero_polynomial():
    with pytest.raises(ZeroPolynomial):
        mdeg(Polynomial.zero(3))


def test_trace_y1_y2_squared_vanishes():
    # Y2^2 is symmetric and Y1 skew, so this trace has no multidegree
    assert not trace_word((1, 2, 2), 3)
    with pytest.raises(ZeroPolynomial):
        mdeg(trace_word((1, 2, 2), 3))


def test_hterm_examples():
    assert hterm(sigma_word(2, (1,), 3)) == Monomial.from_exponents(3, {Variable(1, 2, 1): 2})
    want = Monomial.from_exponents(5, {Variable(1, 2, 1): 2, Variable(3, 4, 1): 2})
    assert hterm(sigma_word(4, (1,), 5)) == want
    assert hterm(x(1, 3) - x(1, 2)) == Monomial.from_exponents(3, {Variable(1, 2, 1): 1})


def test_hterm_errors():
    with pytest.raises(ZeroPolynomial):
        hterm(Polynomial.zero(3))
    with pytest.raises(NonHomogeneous):
        hterm(x(1, 2) + x(1, 2) * x(1, 3))


def test_variable_order():
    # earlier matrix index wins, then row-major position
    assert hterm(x(2, 3, 1) + x(1, 2, 2)) == Monomial.from_exponents(3, {Variable(2, 3, 1): 1})
    assert hterm(x(1, 3) + x(2, 3)) == Monomial.from_exponents(3, {Variable(1, 3, 1): 1})


pairs3 = st.sampled_from([(1, 2), (1, 3), (2, 3)])
small_monos = st.lists(st.tuples(pairs3, st.integers(1, 2)), min_size=1, max_size=3)


def _homogeneous(items, deg=2):
    out = Polynomial.zero(3)
    for c, ((i, j), k) in enumerate(items, start=1):
        term = Polynomial.const(3, c)
        for _ in range(deg):
            term = term * x(i, j, k)
        out = out + term
    return out


@given(small_monos, small_monos)
@settings(max_examples=60)
def test_hterm_multiplicative(a, b):
    f, g = _homogeneous(a), _homogeneous(b)
    assert hterm(f * g) == hterm(f) * hterm(g)


@given(small_monos, small_monos)
@settings(max_examples=60)
def test_mdeg_additive(a, b):
    f, g = _homogeneous(a, 1), _homogeneous(b, 1)
    try:
        mf, mg = mdeg(f, 2), mdeg(g, 2)
    except NonHomogeneous:
        return
    assert mdeg(f * g, 2) == MultiDegree(mf) + MultiDegree(mg)


@given(small_monos, small_monos, small_monos)
@settings(max_examples=40)
def test_ring_laws(a, b, c):
    f, g, h = _homogeneous(a, 1), _homogeneous(b, 2), _homogeneous(c, 1)
    assert f * (g + h) == f * g + f * h
    assert (f * g) * h == f * (g * h)
    assert f + g == g + f


def test_polynomial_json_roundtrip():
    f = sigma_word(2, (1, 2), 3)
    assert Polynomial.from_json(3, f.to_json()) == f


# linear algebra


def test_rank_examples():
    X, Y = x(1, 2), x(1, 3)
    assert rank_and_basis(CoeffMatrix.from_polynomials([X * X, X * Y])).rank == 2
    f = X * X + Y * Y
    assert rank_and_basis(CoeffMatrix.from_polynomials([f, f.scale(2)])).rank == 1


def test_express_in_span():
    X, Y = x(1, 2), x(1, 3)
    rows = [(X * X).terms, (X * Y).terms]
    assert express_in_span(rows, (X * X * 3 + X * Y).terms) == [3, 1]
    assert express_in_span(rows, (Y * Y).terms) is None


int_rows = st.lists(st.lists(st.integers(-4, 4), min_size=4, max_size=4), min_size=1, max_size=5)


@given(int_rows, st.randoms(use_true_random=False))
def test_rank_invariant_under_scaling_and_permutation(rows, rnd):
    r = rank_and_basis(CoeffMatrix.from_dense(rows)).rank
    scaled = [[v * (k + 2) for v in row] for k, row in enumerate(rows)]
    rnd.shuffle(scaled)
    assert rank_and_basis(CoeffMatrix.from_dense(scaled)).rank == r


@given(int_rows)
def test_modular_rank_lower_bound(rows):
    m = CoeffMatrix.from_dense(rows)
    assert rank_and_basis(m, "modular", 7).rank <= rank_and_basis(m).rank
    assert rank_and_basis(m, "modular").rank == rank_and_basis(m).rank


def test_gaussian_rank():
    # (1, i) and (i, -1) are proportional over Q(i)
    m = CoeffMatrix.from_dense([[1, I], [I, -1]])
    assert rank_and_basis(m).rank == 1
    assert rank_and_basis(m, "modular").rank == 1
