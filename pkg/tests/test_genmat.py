import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skewinv.canonical import BlockSpec, build_block
from skewinv.corealg.poly import Polynomial
from skewinv.corealg.scalars import I
from skewinv.errors import BadLength, BadT, SizeMismatch
from skewinv.genmat import (Assignment, Invariant, Matrix, cayley_hamilton_residual, evaluate, generic_skew,
                            sigma, sigma_word, sigmas, skew_from_upper, trace_word, word_product)
from skewinv.invbase import random_assignment


def x(i, j, k, n):
    return Polynomial.var(n, i, j, k)


def naive_det(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    total = 0
    for c in range(n):
        minor = [row[:c] + row[c + 1:] for row in m[1:]]
        total = total + (-1) ** c * m[0][c] * naive_det(minor)
    return total


def elementary_from_minors(m: Matrix, t: int):
    # σ_t = sum of principal t x t minors
    from itertools import combinations
    total = 0
    for idx in combinations(range(m.n), t):
        total = total + naive_det([[m.rows[r][c] for c in idx] for r in idx])
    return total


def test_generic_skew_examples():
    Y = generic_skew(2, 1)
    assert Y.rows[0][1] == x(1, 2, 1, 2) and Y.rows[1][0] == -x(1, 2, 1, 2)
    assert not Y.rows[0][0]
    Y = generic_skew(3, 2)
    assert [Y.rows[0][1], Y.rows[0][2], Y.rows[1][2]] == [x(1, 2, 2, 3), x(1, 3, 2, 3), x(2, 3, 2, 3)]
    for n in (2, 3, 4):
        assert generic_skew(n, 1).transpose() == -generic_skew(n, 1)


def test_skew_from_upper():
    m = skew_from_upper([1 + I, 0, -1 + I])
    k3 = build_block(BlockSpec("K_odd", 1))
    assert m == k3.scale(2)
    assert skew_from_upper([0] * 6).is_zero()
    with pytest.raises(BadLength):
        skew_from_upper([1, 2])


def test_word_product_examples():
    n = 2
    m = word_product((1, 1), n)
    sq = x(1, 2, 1, n) * x(1, 2, 1, n)
    assert m == Matrix.identity(2).scale(-sq)
    a = Assignment([skew_from_upper([1, 0, 0]), skew_from_upper([0, 1, 0])])
    assert word_product((1, 2), 3, a).trace() == 0
    assert word_product((1,), 3) == generic_skew(3, 1)


def test_trace_examples():
    assert trace_word((1, 2), 2) == (x(1, 2, 1, 2) * x(1, 2, 2, 2)).scale(-2)
    for n in (2, 3, 5):
        assert not trace_word((1,), n)
    want = sum((x(i, j, 1, 3) * x(i, j, 2, 3) for i, j in ((1, 2), (1, 3), (2, 3))), Polynomial.zero(3))
    assert trace_word((1, 2), 3) == want.scale(-2)


def test_odd_traces():
    # reversal is a rotation: forced to vanish
    for w in ((1,), (1, 1, 2), (1, 2, 2, 1, 2)):
        assert not trace_word(w, 4)
    # reversal is not a rotation: the mirror image has the opposite trace
    assert trace_word((1, 2, 3), 3)
    assert trace_word((1, 3, 2), 3) == -trace_word((1, 2, 3), 3)


def test_sigma_examples():
    want = x(1, 2, 1, 3) ** 2 + x(1, 3, 1, 3) ** 2 + x(2, 3, 1, 3) ** 2
    assert sigma_word(2, (1,), 3) == want
    assert not sigma_word(1, (1,), 3) and not sigma_word(3, (1,), 3)
    assert sigma_word(2, (1,), 2) == x(1, 2, 1, 2) ** 2
    with pytest.raises(BadT):
        sigma_word(4, (1,), 3)
    with pytest.raises(BadT):
        Invariant(0, (1,), 3)


def test_faddeev_matches_minors():
    for n in (3, 4):
        m = word_product((1, 2), n)
        for t in range(1, n + 1):
            assert sigma(t, m) == elementary_from_minors(m, t)


def test_sigma_top_is_determinant():
    m = word_product((1, 2), 3)
    assert sigma(3, m) == naive_det(m.rows)


def test_sigma2_trace_identity():
    for n in (2, 3, 4):
        for w in ((1,), (1, 2), (1, 2, 3), (1, 1, 2)):
            M = word_product(w, n)
            assert sigma(2, M) * 2 == -(M @ M).trace() + M.trace() * M.trace()


words = st.lists(st.integers(1, 3), min_size=1, max_size=4).map(tuple)


@given(words, st.integers(0, 3))
@settings(max_examples=40, deadline=None)
def test_cyclic_invariance(w, r):
    r %= len(w)
    u = w[r:] + w[:r]
    for t in (1, 2):
        assert sigma_word(t, w, 3) == sigma_word(t, u, 3)


@given(words, st.integers(1, 3))
@settings(max_examples=40, deadline=None)
def test_reversal_symmetry(w, t):
    assert sigma_word(t, w, 3) == sigma_word(t, w[::-1], 3).scale((-1) ** (t * len(w)))


@given(words, st.integers(1, 4), st.integers(0, 10 ** 6))
@settings(max_examples=40, deadline=None)
def test_evaluation_commutes(w, t, seed):
    n = 4
    a = random_assignment(random.Random(seed), n, 3, -3, 3)
    inv = Invariant(t, w, n, 3)
    direct = sigmas(word_product(w, n, a))[t]
    assert evaluate(inv, a) == direct
    assert inv.value.evaluate(a.values()) == direct


def test_evaluate_examples():
    k3 = build_block(BlockSpec("K_odd", 1))
    a = Assignment([k3])
    assert evaluate(Invariant(2, (1,), 3), a) == 0
    j = skew_from_upper([1, 0, 0])
    assert evaluate(Invariant(1, (1, 2), 3), Assignment([j, j])) == -2
    z = Assignment([skew_from_upper([0, 0, 0])] * 2)
    assert evaluate(Invariant(2, (1, 2), 3), z) == 0
    with pytest.raises(SizeMismatch):
        evaluate(Invariant(2, (1,), 4), a)


def test_cayley_hamilton():
    for n in range(2, 6):
        assert cayley_hamilton_residual(n).is_zero()


def test_assignment_json_roundtrip(tmp_path):
    a = Assignment([skew_from_upper([Fraction(1, 2), I, -3]), skew_from_upper([0, 1, 2])])
    p = tmp_path / "m.json"
    p.write_text(json.dumps(a.to_json()))
    b = Assignment.load(p)
    assert [m.upper() for m in b.matrices] == [m.upper() for m in a.matrices]
