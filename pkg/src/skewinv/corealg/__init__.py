"""Exact scalars, multigraded sparse polynomials and linear algebra."""

from .linalg import CoeffMatrix, DEFAULT_PRIME, RankResult, rank_and_basis
from .poly import Monomial, MultiDegree, Polynomial, Variable, hterm, mdeg, poly_arith
from .scalars import GaussianRational, I, format_scalar, parse_scalar, simplify

__all__ = [
    "CoeffMatrix", "DEFAULT_PRIME", "GaussianRational", "I", "Monomial", "MultiDegree",
    "Polynomial", "RankResult", "Variable", "format_scalar", "hterm", "mdeg",
    "parse_scalar", "poly_arith", "rank_and_basis", "simplify",
]
