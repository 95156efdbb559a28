"""Homogeneous systems of parameters: families, independence, nullcone certificates."""

from .catalog import builtin_certificates, certificate_by_name
from .certificates import (Branch, CertificateResult, Claim, NullconeCertificate, check_certificate,
                           validate)
from .families import expected_count, h_r, hsp_elements
from .independence import IndependenceResult, jacobian, jacobian_rank, verify_independence
from .report import VerificationReport, verify_hsp

__all__ = [
    "Branch", "CertificateResult", "Claim", "IndependenceResult", "NullconeCertificate",
    "VerificationReport", "builtin_certificates", "certificate_by_name", "check_certificate",
    "expected_count", "h_r", "hsp_elements", "jacobian", "jacobian_rank", "validate",
    "verify_hsp", "verify_independence",
]
