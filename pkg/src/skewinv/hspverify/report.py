"""Combined h.s.p. verification: count, independence, nullcone replays."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..canonical import nilpotent_representatives, sigma_profile
from .catalog import CERTIFICATES_FOR_CASE, builtin_certificates, n3_induction
from .certificates import CertificateResult, check_certificate
from .families import expected_count, family_d, family_n, h_r_discrepancy, hsp_elements
from .independence import DEFAULT_RETRIES, IndependenceResult, verify_independence


@dataclass
class VerificationReport:
    family: str
    n: int
    d: int
    elements: list[str]
    count: int
    expected_count: int
    independence: IndependenceResult
    nullcone: list[CertificateResult]
    sigma_vanishing: dict[str, bool]
    notes: list[str] = field(default_factory=list)

    @property
    def count_ok(self) -> bool:
        return self.count == self.expected_count

    @property
    def passed(self) -> bool:
        return (self.count_ok and self.independence.certified
                and all(c.passed for c in self.nullcone) and all(self.sigma_vanishing.values()))

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "n": self.n,
            "d": self.d,
            "elements": self.elements,
            "count_check": {"count": self.count, "expected": self.expected_count, "ok": self.count_ok},
            "independence": self.independence.to_json(),
            "nullcone": [c.to_json() for c in self.nullcone],
            "sigma_vanishing": self.sigma_vanishing,
            "notes": self.notes,
            "verdict": self.verdict,
        }


def _certificates_for(case: str, d: int):
    wanted = CERTIFICATES_FOR_CASE[case]
    out = []
    for cert in builtin_certificates():
        if cert.name not in wanted:
            continue
        if cert.name == "N3_INDUCTION":
            if d < 3:
                continue  # the induction starts at l = 3
            cert = n3_induction(d)
        out.append(cert)
    return out


def sigma_vanishing(n: int) -> dict[str, bool]:
    return {rep.label: all(not s for s in sigma_profile(rep.matrix))
            for rep in nilpotent_representatives(n)}


def verify_hsp(case: str, d: int | None = None, seed: int = 0,
               retries: int = DEFAULT_RETRIES) -> VerificationReport:
    n, d = family_n(case), family_d(case, d)
    fs = hsp_elements(case, d)
    ind = verify_independence(fs, seed=seed, max_retries=retries, d=d)
    certs = [check_certificate(c) for c in _certificates_for(case, d)]
    notes = [h_r_discrepancy(d)] if case == "A" else []
    return VerificationReport(case, n, d, [f.label for f in fs], len(fs), expected_count(n, d),
                              ind, certs, sigma_vanishing(n), notes)
