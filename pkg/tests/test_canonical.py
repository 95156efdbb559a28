from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from skewinv.canonical import (BlockSpec, a_block, b_block, build_block, c_block, canonical_from_string,
                               direct_sum, nilpotent_representatives, parse_blocks, sigma_profile)
from skewinv.corealg.scalars import I, simplify
from skewinv.errors import BadSize, UnsupportedSize
from skewinv.genmat import skew_from_upper

H = Fraction(1, 2)


def half(*upper):
    return skew_from_upper([simplify(x * H) for x in upper])


def test_literals():
    assert build_block(BlockSpec("K_even", 2, 0)) == half(1, I, 0, 0, I, -1)
    assert build_block(BlockSpec("K_odd", 1)) == half(1 + I, 0, -1 + I)
    assert build_block(BlockSpec("K_odd", 2)) == half(1, 0, I, 0, 1 + I, 0, I, -1 + I, 0, -1)


def test_direct_sums():
    q1 = direct_sum([BlockSpec("K_odd", 1), BlockSpec("Zero", 1)])
    assert q1.matrix == half(1 + I, 0, 0, -1 + I, 0, 0)
    assert direct_sum([BlockSpec("K_odd", 1), BlockSpec("Zero", 2)]).n == 5
    assert direct_sum([BlockSpec("Zero", 3)]).matrix.is_zero()
    with pytest.raises(BadSize):
        direct_sum([])


def test_representatives():
    assert [len(nilpotent_representatives(n)) for n in (3, 4, 5)] == [1, 2, 3]
    for n in (3, 4, 5):
        for rep in nilpotent_representatives(n):
            assert rep.n == n and rep.matrix.is_skew()
            assert all(not s for s in sigma_profile(rep.matrix))
    with pytest.raises(UnsupportedSize):
        nilpotent_representatives(6)


@pytest.mark.parametrize("p", range(1, 7))
def test_nonzero_counts(p):
    assert a_block(p).nonzero_count() == 2 * (p - 1)
    assert b_block(p).nonzero_count() == 2 * (p - 1)
    assert c_block(p).nonzero_count() == p


def test_b_block_two_is_identity():
    assert b_block(2).rows == [[1, 0], [0, 1]]


def test_grammar():
    assert [str(b) for b in parse_blocks("K3;0:1")] == ["K3", "0:1"]
    assert str(parse_blocks("K4:mu=1/2")[0]) == "K4:mu=1/2"
    for bad in ("K1", "K3:mu=1", "X4", ""):
        with pytest.raises(BadSize):
            parse_blocks(bad)
    assert canonical_from_string("K4:mu=0;0:1").label == "K4:mu=0;0:1"


def test_mu_nonzero_not_nilpotent():
    m = build_block(BlockSpec("K_even", 2, 1))
    assert any(sigma_profile(m))


specs = st.one_of(
    st.builds(BlockSpec, st.just("K_even"), st.integers(1, 3), st.sampled_from([0, 1, Fraction(1, 3), I])),
    st.builds(BlockSpec, st.just("K_odd"), st.integers(1, 3)),
    st.builds(BlockSpec, st.just("Zero"), st.integers(1, 3)),
)


@given(st.lists(specs, min_size=1, max_size=3))
def test_skew_and_size(blocks):
    cm = direct_sum(blocks)
    assert cm.matrix.is_skew()
    assert cm.n == sum(b.size for b in blocks)
