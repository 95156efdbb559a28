import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skewinv.errors import MalformedCertificate, SizeMismatch, UnsupportedCase
from skewinv.genmat import Assignment, skew_from_upper
from skewinv.hspverify import (Branch, Claim, NullconeCertificate, builtin_certificates, certificate_by_name,
                               check_certificate, expected_count, h_r, hsp_elements, jacobian_rank, validate,
                               verify_hsp, verify_independence)
from skewinv.hspverify.catalog import n3_induction
from skewinv.invbase import inv, random_assignment


def test_family_counts():
    for case, d, want in (("A", 2, 3), ("A", 3, 6), ("A", 4, 9), ("B", None, 6), ("C", None, 12), ("D", None, 10)):
        fs = hsp_elements(case, d)
        assert len(fs) == want
        n = {"A": 3, "B": 4, "C": 4, "D": 5}[case]
        assert len(fs) == expected_count(n, d or {"B": 2, "C": 3, "D": 2}[case])


def test_family_a_d2_elements():
    assert [f.label for f in hsp_elements("A", 2)] == ["σ2(Y1)", "σ2(Y2)", "tr(Y1 Y2)"]


def test_family_errors():
    with pytest.raises(UnsupportedCase, match="sigma_2"):
        hsp_elements("A", 1)
    with pytest.raises(UnsupportedCase):
        hsp_elements("B", 3)
    with pytest.raises(UnsupportedCase):
        hsp_elements("E")
    with pytest.raises(UnsupportedCase):
        h_r(7, 3)


def test_h_r_values():
    assert h_r(4, 3).value == inv(1, (1, 3), 3, 3).value
    assert h_r(5, 4).value == inv(1, (1, 4), 3, 4).value + inv(1, (2, 3), 3, 4).value


def test_jacobian_examples():
    s = inv(2, (1,), 3, 1)
    pt = Assignment([skew_from_upper([1, 2, 3])])
    assert jacobian_rank([s], pt) == 1
    assert jacobian_rank([s.value, s.value.scale(2)], pt) == 1
    with pytest.raises(SizeMismatch):
        jacobian_rank([s], Assignment([skew_from_upper([1, 2, 3, 4, 5, 6])]))


def test_independence_examples():
    r = verify_independence(hsp_elements("B"), seed=0)
    assert r.certified and r.rank == 6
    r = verify_independence(hsp_elements("D"), seed=0)
    assert r.certified and r.rank == 10
    s = inv(2, (1,), 3, 1).value
    r = verify_independence([s, s * s], seed=0)
    assert r.status == "inconclusive" and r.attempts == 5 and r.rank <= 1


@given(st.integers(0, 10 ** 6), st.lists(st.integers(-3, 3), min_size=9, max_size=9))
@settings(max_examples=25, deadline=None)
def test_jacobian_rank_invariant_under_recombination(seed, coeffs):
    fs = [f.value for f in hsp_elements("A", 2)]
    m = [coeffs[0:3], coeffs[3:6], coeffs[6:9]]
    det = (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
           + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))
    # all three have degree 2, so the recombination stays homogeneous
    gs = [fs[0].scale(r[0]) + fs[1].scale(r[1]) + fs[2].scale(r[2]) for r in m]
    pt = random_assignment(random.Random(seed), 3, 2)
    if det:
        assert jacobian_rank(gs, pt) == jacobian_rank(fs, pt)
    else:
        assert jacobian_rank(gs, pt) <= jacobian_rank(fs, pt)


def test_catalog():
    certs = builtin_certificates()
    assert len(certs) == 9
    assert {c.name for c in certs} == {"N3_TRABC", "N3_INDUCTION", "N4_Q1", "N4_Q2", "N4_ABC_Q1", "N4_ABC_Q2",
                                       "N5_Q1", "N5_Q3", "N5_Q2"}
    with pytest.raises(UnsupportedCase):
        certificate_by_name("N6")


@pytest.mark.parametrize("name", ["N3_TRABC", "N3_INDUCTION", "N4_Q1", "N4_Q2", "N4_ABC_Q1", "N4_ABC_Q2",
                                  "N5_Q1", "N5_Q3", "N5_Q2"])
def test_certificate_passes(name):
    res = check_certificate(certificate_by_name(name))
    assert res.passed, res.first_failure
    assert res.claims_checked > 0


def test_induction_for_larger_d():
    assert check_certificate(n3_induction(4)).passed


def test_n5_q1_has_both_signs():
    labels = [b.label for b in certificate_by_name("N5_Q1").branches]
    assert len(labels) == 4


def test_n4_abc_q2_contents():
    cert = certificate_by_name("N4_ABC_Q2")
    claims = [c.describe() for b in cert.branches for c in b.claims]
    assert any(c.kind == "matrix_equals" for b in cert.branches for c in b.claims)
    assert len(claims) >= 4


def test_mutated_certificate_fails_with_name():
    cert = certificate_by_name("N4_Q1").without_substitution(0, 2)
    res = check_certificate(cert, stop_at_first=True)
    assert not res.passed
    assert res.first_failure.claim == "hypothesis sigma(2,A2) = 0 holds"


@pytest.mark.parametrize("index", range(4))
def test_every_deletion_in_n4_q1_is_detected(index):
    res = check_certificate(certificate_by_name("N4_Q1").without_substitution(0, index), stop_at_first=True)
    assert not res.passed


def test_json_roundtrip():
    for cert in builtin_certificates():
        data = json.loads(cert.dumps())
        assert {"name", "base", "params", "branches"} <= set(data)
        again = NullconeCertificate.from_json(data)
        assert again.to_json() == cert.to_json()


def test_json_roundtrip_still_passes():
    cert = NullconeCertificate.from_json(json.loads(certificate_by_name("N4_Q2").dumps()))
    assert check_certificate(cert).passed


def _tiny(subs, claims, nonzero=()):
    return NullconeCertificate("T", 3, {"A1": "generic"}, [Branch("b", subs, claims, list(nonzero))])


def test_malformed():
    with pytest.raises(MalformedCertificate):
        validate(_tiny([["z9", "0"]], [Claim("poly_zero", "tr(A1)")]))
    with pytest.raises(MalformedCertificate):
        validate(_tiny([["a1", "1/b1"]], [Claim("poly_zero", "tr(A1)")]))
    with pytest.raises(MalformedCertificate):
        validate(_tiny([["a1", "a1 + 1"]], [Claim("poly_zero", "tr(A1)")]))
    with pytest.raises(MalformedCertificate):
        validate(_tiny([], [Claim("no_such_kind", "tr(A1)")]))
    with pytest.raises(MalformedCertificate):
        NullconeCertificate.from_json({"name": "x"})


def test_declared_denominator_is_accepted():
    cert = _tiny([["a1", "c1/b1"]], [Claim("poly_zero", "b1*a1 - c1")], ["b1"])
    assert check_certificate(cert).passed


def test_simple_claims():
    ok = _tiny([["a1", "0"], ["b1", "0"]], [Claim("poly_zero", "sigma(2,A1) - c1**2")])
    assert check_certificate(ok).passed
    bad = _tiny([["a1", "0"]], [Claim("poly_zero", "sigma(2,A1) - c1**2")])
    res = check_certificate(bad)
    assert not res.passed and res.first_failure.residual_terms == 1


def test_verify_hsp_reports():
    r = verify_hsp("A", 3)
    assert r.passed and r.count == 6 and r.independence.rank == 6
    assert "3 <= r <= 5" in r.notes[0]
    js = r.to_json()
    assert js["verdict"] == "pass" and js["count_check"]["ok"]
    assert all(js["sigma_vanishing"].values())
    r = verify_hsp("C")
    assert r.passed and r.count == 12
    with pytest.raises(UnsupportedCase):
        verify_hsp("A", 1)
