import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skewinv.corealg.linalg import CoeffMatrix, rank_and_basis
from skewinv.errors import DegreeBoundExceeded, MixedMultidegree
from skewinv.genmat import trace_word
from skewinv.invbase import (LinearCombination, all_multidegrees, candidate_products, inv, invariant_span,
                             is_decomposable, linear_rank, minimal_generators, prod, quotient_dimension,
                             verify_generation)


def test_span_examples():
    c = invariant_span(3, 2, (1, 1))
    assert c.dimension == 1
    assert c.basis[0].label == "tr(Y1 Y2)"
    assert invariant_span(3, 1, (1,)).dimension == 0


def test_span_n2_bidegree_22():
    # at n = 2, tr(Y1Y2)^2 = 4 sigma_2(Y1) sigma_2(Y2), so the component is a line
    c = invariant_span(2, 2, (2, 2))
    assert c.dimension == 1
    s = prod(inv(2, (1,), 2, 2), inv(2, (2,), 2, 2)).value
    t = prod(inv(1, (1, 2), 2, 2), inv(1, (1, 2), 2, 2)).value
    assert t == s.scale(4)


def test_degree_bound():
    with pytest.raises(DegreeBoundExceeded):
        invariant_span(3, 2, (5, 5))


def test_four_trace_certificate():
    cert = is_decomposable(inv(1, (1, 2, 3, 4), 3, 4), 3, 4)
    assert cert is not None and cert.replay()
    lhs = trace_word((1, 2, 3, 4), 3).scale(4)
    rhs = trace_word((1, 2), 3) * trace_word((3, 4), 3) + trace_word((1, 4), 3) * trace_word((2, 3), 3)
    assert lhs == rhs
    assert all(len(fs) >= 2 for _, fs in cert.combination)


def test_indecomposable():
    assert is_decomposable(inv(2, (1,), 3, 1), 3, 1) is None
    assert is_decomposable(inv(1, (1, 2, 3), 3, 3), 3, 3) is None
    assert is_decomposable(inv(1, (1, 2, 3), 3, 3), 3, 3, method="exact") is None


def test_sketch_agrees_with_exact():
    target = inv(1, (1, 1, 2, 2), 3, 2)
    a = is_decomposable(target, 3, 2, method="sketch")
    b = is_decomposable(target, 3, 2, method="exact")
    assert (a is None) == (b is None)
    assert a is None or (a.replay() and b.replay())


def test_mingens_examples():
    rep = minimal_generators(3, 3, 6)
    assert rep.count == 7
    assert sum(rep.count_by_total().get(t, 0) for t in (4, 5, 6)) == 0
    labels = {g.label for g in rep.generators}
    assert "tr(Y1 Y2 Y3)" in labels and "σ2(Y3)" in labels
    assert sorted(g.label for g in minimal_generators(2, 2, 6).generators) == ["tr(Y1 Y2)", "σ2(Y1)", "σ2(Y2)"]
    assert [g.label for g in minimal_generators(3, 1, 6).generators] == ["σ2(Y1)"]


def test_mingens_csv_and_json():
    rep = minimal_generators(2, 2, 4)
    assert rep.to_csv().splitlines()[0] == "mdeg,dimension,new_generators"
    js = rep.to_json()
    assert js["generator_count"] == 3 and "4" in js["degree_bound_note"]


def test_mingens_modular_backend_agrees():
    a = minimal_generators(3, 2, 6)
    b = minimal_generators(3, 2, 6, backend="modular")
    assert a.profile() == b.profile()


def test_verify_generation_examples():
    h = [inv(2, (1,), 3, 2), inv(2, (2,), 3, 2), inv(1, (1, 2), 3, 2)]
    assert verify_generation(h, 3, 2, 6) == (True, None)
    ok, where = verify_generation([inv(2, (1,), 3, 2)], 3, 2, 2)
    assert not ok and tuple(where) == (0, 2)
    assert verify_generation([inv(2, (1,), 5, 1), inv(4, (1,), 5, 1)], 5, 1, 8)[0]


def test_linear_rank_examples():
    s = [inv(1, (1, 1, 2, 2), 4, 2), inv(2, (1, 2), 4, 2), prod(inv(2, (1,), 4, 2), inv(2, (2,), 4, 2)),
         prod(inv(1, (1, 2), 4, 2), inv(1, (1, 2), 4, 2))]
    assert linear_rank(s) == 4
    f = inv(2, (1, 2), 3, 2)
    assert linear_rank([f, f]) == 1
    assert linear_rank([inv(1, (1, 2, 3), 3), inv(1, (1, 3, 2), 3)]) == 1
    with pytest.raises(MixedMultidegree):
        linear_rank([inv(2, (1,), 3, 2), inv(2, (2,), 3, 2)])


def test_quotient_dimension_22():
    assert quotient_dimension([inv(1, (1, 1, 2, 2), 4, 2), inv(2, (1, 2), 4, 2)], 4, 2) == 2


def test_linear_combination_label_and_value():
    lc = LinearCombination.of(inv(1, (1, 2), 3), (-2, inv(1, (1, 2), 3)))
    assert lc.value == inv(1, (1, 2), 3).value.scale(-1)


def test_candidate_products():
    prods = candidate_products([inv(2, (1,), 3, 2), inv(1, (1, 2), 3, 2)], (2, 2))
    assert sorted(p.label for p in prods) == ["tr(Y1 Y2)^2"]


def test_multidegree_order():
    ms = all_multidegrees(2, 2)
    assert [tuple(m) for m in ms[:2]] == [(0, 1), (1, 0)]
    assert all(a.total <= b.total for a, b in zip(ms, ms[1:]))


@given(st.sampled_from([(3, 2, (2, 2)), (3, 2, (1, 3)), (4, 2, (2, 2)), (3, 3, (1, 1, 2))]))
@settings(max_examples=4, deadline=None)
def test_component_rows_homogeneous(case):
    n, d, m = case
    comp = invariant_span(n, d, m)
    assert all(tuple(p.mdeg) == m for p in comp.basis)
    rk = rank_and_basis(CoeffMatrix.from_polynomials([p.value for p in comp.basis])).rank
    assert rk == comp.dimension
    assert 0 <= comp.decomposable_dim <= comp.dimension


@given(st.sampled_from([(1, 1, 2, 2), (1, 2, 1, 2), (1, 1, 1, 2), (1, 1, 2, 1, 2, 2)]))
@settings(max_examples=4, deadline=None)
def test_certificates_replay(w):
    cert = is_decomposable(inv(1, w, 3, 2), 3, 2)
    if cert is not None:
        assert cert.replay()
