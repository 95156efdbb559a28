"""Algebraic independence via the rank of the Jacobian at a point.

Over a field of characteristic zero, f_1..f_s are algebraically independent
iff their Jacobian has rank s at a generic point; rank s at one explicit
point is therefore a certificate.  A lower rank proves nothing, so sampling
never reports dependence, only "inconclusive".
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from ..corealg.linalg import CoeffMatrix, rank_and_basis
from ..corealg.poly import Polynomial, pairs_count
from ..errors import SizeMismatch
from ..genmat import Assignment
from ..invbase import random_assignment

DEFAULT_RETRIES = 5
SAMPLE_RANGE = (-9, 9)


def _poly(f) -> Polynomial:
    return f if isinstance(f, Polynomial) else f.value


def _shape(fs: Sequence) -> tuple[int, int]:
    polys = [_poly(f) for f in fs]
    ns = {p.n for p in polys}
    if len(ns) != 1:
        raise SizeMismatch(f"functions live on different matrix sizes {sorted(ns)}")
    n = ns.pop()
    d = 1
    for f, p in zip(fs, polys):
        d = max(d, getattr(f, "d", 0) or 0, *(v // pairs_count(n) + 1 for v in p.variables()))
    return n, d


def jacobian(fs: Sequence, point: Assignment) -> list[list[object]]:
    n, d = _shape(fs)
    if point.n != n:
        raise SizeMismatch(f"point has {point.n}x{point.n} matrices, functions need {n}x{n}")
    if point.d < d:
        raise SizeMismatch(f"point has {point.d} matrices, functions need {d}")
    values = point.values()
    nvars = point.d * pairs_count(n)
    return [[_poly(f).derivative(v).evaluate(values) for v in range(nvars)] for f in fs]


def jacobian_rank(fs: Sequence, point: Assignment) -> int:
    return rank_and_basis(CoeffMatrix.from_dense(jacobian(fs, point))).rank


@dataclass
class IndependenceResult:
    status: str  # "certified" or "inconclusive"
    rank: int
    size: int
    attempts: int
    seed: int
    point: Assignment | None = None
    ranks: list[int] = field(default_factory=list)

    @property
    def certified(self) -> bool:
        return self.status == "certified"

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "rank": self.rank,
            "size": self.size,
            "attempts": self.attempts,
            "seed": self.seed,
            "point": self.point.to_json() if self.point is not None else None,
        }


def verify_independence(fs: Sequence, seed: int = 0, max_retries: int = DEFAULT_RETRIES,
                        d: int | None = None) -> IndependenceResult:
    """Sample integer points (entries in [-9, 9]) until the Jacobian has full row rank."""
    n, need_d = _shape(fs)
    d = max(d or 0, need_d)
    rng = random.Random(seed)
    best, ranks = 0, []
    for attempt in range(1, max_retries + 1):
        point = random_assignment(rng, n, d, *SAMPLE_RANGE)
        r = jacobian_rank(fs, point)
        ranks.append(r)
        best = max(best, r)
        if r == len(fs):
            return IndependenceResult("certified", r, len(fs), attempt, seed, point, ranks)
    return IndependenceResult("inconclusive", best, len(fs), max_retries, seed, None, ranks)
