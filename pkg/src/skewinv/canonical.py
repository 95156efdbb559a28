"""Canonical skew-symmetric blocks K^(2p)_mu, K^(2p+1) over Q(i).

Block grammar: ``"K3"`` (odd block of size 3), ``"K4:mu=0"`` (even block of
size 4 with parameter mu, default 0), ``"0:2"`` (2x2 zero block); direct sums
are joined by ``";"``, e.g. ``"K3;0:1"``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .corealg.scalars import I, format_scalar, parse_scalar, simplify
from .errors import BadSize, UnsupportedSize
from .genmat import Matrix, SkewMatrix, sigmas

HALF = Fraction(1, 2)


def a_block(p: int) -> Matrix:
    """Tridiagonal: +1 above, -1 below the diagonal."""
    rows = [[0] * p for _ in range(p)]
    for r in range(p - 1):
        rows[r][r + 1] = 1
        rows[r + 1][r] = -1
    return Matrix(rows)


def b_block(p: int) -> Matrix:
    """Ones on the two anti-diagonals r + c = p + 1 and r + c = p + 3
    (1-based); the identity for p = 2, zero for p = 1."""
    rows = [[0] * p for _ in range(p)]
    for r in range(p):
        for c in range(p):
            if r + c + 2 in (p, p + 2):
                rows[r][c] = 1
    return Matrix(rows)


def c_block(p: int) -> Matrix:
    """The anti-diagonal permutation matrix."""
    return Matrix([[1 if r + c == p - 1 else 0 for c in range(p)] for r in range(p)])


@dataclass(frozen=True)
class BlockSpec:
    kind: str  # "K_even", "K_odd" or "Zero"
    p: int
    mu: object = 0

    def __post_init__(self):
        if self.kind not in ("K_even", "K_odd", "Zero"):
            raise BadSize(f"unknown block kind {self.kind!r}")
        if self.p < 1:
            raise BadSize("block parameter p must be positive")

    @property
    def size(self) -> int:
        return {"K_even": 2 * self.p, "K_odd": 2 * self.p + 1, "Zero": self.p}[self.kind]

    def __str__(self):
        if self.kind == "Zero":
            return f"0:{self.p}"
        if self.kind == "K_odd":
            return f"K{self.size}"
        return f"K{self.size}:mu={format_scalar(self.mu).removesuffix('/1')}"


def build_block(spec: BlockSpec) -> SkewMatrix:
    p = spec.p
    if spec.kind == "Zero":
        return SkewMatrix([[0] * p for _ in range(p)])
    A, B = a_block(p), b_block(p)
    if spec.kind == "K_even":
        mu = simplify(parse_scalar(spec.mu))
        top = (B.scale(I) + c_block(p).scale(2 * mu)).rows
        rows = [A.rows[r] + top[r] for r in range(p)]
        rows += [[-x for x in top[r]] + [-x for x in A.rows[r]] for r in range(p)]
        return SkewMatrix(Matrix(rows).scale(HALF).rows)
    # K_odd: middle row/column couples the last basis vector of the first
    # half with the first basis vector of the second half
    n = 2 * p + 1
    rows = [[0] * n for _ in range(n)]
    iB = B.scale(I).rows
    for r in range(p):
        for c in range(p):
            rows[r][c] = A.rows[r][c]
            rows[r][p + 1 + c] = iB[r][c]
            rows[p + 1 + r][c] = -iB[r][c]
            rows[p + 1 + r][p + 1 + c] = -A.rows[r][c]
    rows[p - 1][p] = 1 + I
    rows[p][p - 1] = -1 - I
    rows[p][p + 1] = -1 + I
    rows[p + 1][p] = 1 - I
    return SkewMatrix(Matrix(rows).scale(HALF).rows)


@dataclass
class CanonicalMatrix:
    blocks: list[BlockSpec]
    matrix: SkewMatrix

    @property
    def n(self) -> int:
        return self.matrix.n

    @property
    def label(self) -> str:
        return ";".join(str(b) for b in self.blocks)

    def to_json(self):
        return {"blocks": self.label, "matrix": self.matrix.to_json()}


def direct_sum(blocks: list[BlockSpec]) -> CanonicalMatrix:
    if not blocks:
        raise BadSize("direct sum of no blocks")
    m = build_block(blocks[0])
    for b in blocks[1:]:
        m = m.direct_sum(build_block(b))
    return CanonicalMatrix(list(blocks), SkewMatrix(m.rows))


_BLOCK_RE = re.compile(r"^K(\d+)(?::mu=(.+))?$")


def parse_blocks(text: str) -> list[BlockSpec]:
    out = []
    for part in str(text).split(";"):
        part = part.strip()
        if not part:
            continue
        if part.startswith("0:"):
            out.append(BlockSpec("Zero", int(part[2:])))
            continue
        m = _BLOCK_RE.match(part)
        if not m:
            raise BadSize(f"bad block spec {part!r}")
        size = int(m.group(1))
        if size < 2:
            raise BadSize(f"canonical block K{size} does not exist")
        if size % 2:
            if m.group(2) is not None:
                raise BadSize("odd blocks take no mu")
            out.append(BlockSpec("K_odd", (size - 1) // 2))
        else:
            mu = parse_scalar(m.group(2)) if m.group(2) is not None else 0
            out.append(BlockSpec("K_even", size // 2, mu))
    if not out:
        raise BadSize("empty block list")
    return out


def canonical_from_string(text: str) -> CanonicalMatrix:
    return direct_sum(parse_blocks(text))


_REPRESENTATIVES = {
    3: ["K3"],
    4: ["K3;0:1", "K4:mu=0"],
    5: ["K3;0:2", "K4:mu=0;0:1", "K5"],
}


def nilpotent_representatives(n: int) -> list[CanonicalMatrix]:
    """Orbit representatives of nonzero n x n skew matrices with all σ_t = 0."""
    if n not in _REPRESENTATIVES:
        raise UnsupportedSize(f"representatives are tabulated for n = 3, 4, 5 only, got {n}")
    return [canonical_from_string(s) for s in _REPRESENTATIVES[n]]


def sigma_profile(m: Matrix) -> list[object]:
    """[σ_1, ..., σ_n] of a numeric matrix."""
    return sigmas(m)[1:]
