import itertools

from hypothesis import given, settings
from hypothesis import strategies as st

from skewinv.genmat import trace_word
from skewinv.words import (canonical_rep, enumerate_words, format_word, is_primitive, orbit, parse_word,
                           rotations)

words = st.lists(st.integers(1, 3), min_size=1, max_size=6).map(tuple)


def test_primitive_examples():
    assert is_primitive((1, 2))
    assert not is_primitive((1, 2, 1, 2))
    assert is_primitive((1, 1, 2))
    assert not is_primitive((1, 1))


def test_canonical_examples():
    cf = canonical_rep((1, 3, 2))
    assert cf.rep == (1, 2, 3) and cf.trace_sign == -1
    cf = canonical_rep((2, 1))
    assert cf.rep == (1, 2) and cf.trace_sign == 1
    assert canonical_rep((1, 1, 2)).sigma_sign(2) == 1


def test_enumerate_examples():
    assert [c.representative for c in enumerate_words(1, 3, primitive_only=True)] == [(1,)]
    assert [c.representative for c in enumerate_words(2, 2, primitive_only=True)] == [(1,), (2,), (1, 2)]
    cls = {c.representative: c for c in enumerate_words(3, 3)}
    assert (1, 3, 2) in cls[(1, 2, 3)].members


def test_word_format_roundtrip():
    assert parse_word("1,2,3") == (1, 2, 3)
    assert format_word((1, 2, 3)) == "1,2,3"


@given(words)
def test_rep_is_least_member(w):
    cf = canonical_rep(w)
    assert cf.rep == min(orbit(w))
    assert cf.rep in orbit(w)


@given(words)
def test_rep_is_invariant_on_orbit(w):
    rep = canonical_rep(w).rep
    assert all(canonical_rep(u).rep == rep for u in orbit(w))


@given(words)
def test_primitivity_matches_definition(w):
    powers = any(len(w) % p == 0 and w[:p] * (len(w) // p) == w for p in range(1, len(w)))
    assert is_primitive(w) == (not powers)


def test_orbit_partition():
    for d, s in ((2, 5), (3, 4)):
        classes = enumerate_words(d, s)
        seen = [m for c in classes for m in c.members]
        allw = [w for k in range(1, s + 1) for w in itertools.product(range(1, d + 1), repeat=k)]
        assert sorted(seen) == sorted(allw)
        assert len(seen) == len(set(seen))


@given(words)
@settings(max_examples=60, deadline=None)
def test_trace_sign_against_direct(w):
    cf = canonical_rep(w)
    for n in (3, 4):
        assert trace_word(w, n) == trace_word(cf.rep, n).scale(cf.trace_sign)


@given(words)
@settings(max_examples=40, deadline=None)
def test_reversal_parity(w):
    rev = trace_word(w[::-1], 4)
    assert rev == trace_word(w, 4).scale(-1 if len(w) % 2 else 1)


def test_rotations_count():
    assert len(rotations((1, 2, 3))) == 3
