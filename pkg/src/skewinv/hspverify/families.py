"""The four h.s.p. families for n = 3, 4, 5."""

from __future__ import annotations

from ..errors import UnsupportedCase
from ..genmat import Invariant
from ..invbase import LinearCombination

FAMILY_SIZE = {"A": 3, "B": 4, "C": 4, "D": 5}
FIXED_D = {"B": 2, "C": 3, "D": 2}


def family_n(case: str) -> int:
    try:
        return FAMILY_SIZE[case]
    except KeyError:
        raise UnsupportedCase(f"unknown family {case!r}; expected one of A, B, C, D") from None


def family_d(case: str, d: int | None) -> int:
    family_n(case)
    if case in FIXED_D:
        if d is not None and d != FIXED_D[case]:
            raise UnsupportedCase(f"family {case} is defined for d = {FIXED_D[case]} only, got d = {d}")
        return FIXED_D[case]
    if d is None:
        raise UnsupportedCase("family A needs d")
    if d == 1:
        raise UnsupportedCase(
            "family A needs d >= 2; for one 3x3 matrix the invariants form the polynomial "
            "algebra on sigma_2(Y1), which is itself the h.s.p. (the counting formula does not apply)")
    if d < 1:
        raise UnsupportedCase(f"d must be positive, got {d}")
    return d


def expected_count(n: int, d: int) -> int:
    return n * (n - 1) * (d - 1) // 2


def h_r(r: int, d: int) -> LinearCombination:
    """Σ tr(Y_i Y_j) over i < j <= d with i + j = r (n = 3)."""
    terms = [Invariant(1, (i, r - i), 3, d) for i in range(1, d + 1) if i < r - i <= d]
    if not terms:
        raise UnsupportedCase(f"h_{r} is an empty sum for d = {d}")
    return LinearCombination.of(*terms)


def hsp_elements(case: str, d: int | None = None) -> list:
    """Elements of the family, as Invariants or (for h_r) LinearCombinations."""
    n, d = family_n(case), family_d(case, d)

    def s(t, w):
        return Invariant(t, tuple(w), n, d)

    if case == "A":
        out: list = [s(2, (i,)) for i in range(1, d + 1)]
        # the nonempty sums only: 3 <= r <= 2d - 1
        out += [h_r(r, d) for r in range(3, 2 * d)]
        return out
    if case == "B":
        return [s(2, (1,)), s(2, (2,)), s(4, (1,)), s(4, (2,)), s(1, (1, 2)), s(1, (1, 1, 2, 2))]
    if case == "C":
        out = []
        for i in range(1, 4):
            out += [s(2, (i,)), s(4, (i,))]
        for i in range(1, 4):
            for j in range(i + 1, 4):
                out += [s(1, (i, j)), s(1, (i, i, j, j))]
        return out
    return [s(2, (1,)), s(2, (2,)), s(4, (1,)), s(4, (2,)), s(1, (1, 2)), s(1, (1, 1, 2, 2)),
            s(1, (1, 1, 1, 2)), s(1, (1, 2, 2, 2)), s(1, (1, 1, 1, 1, 2, 2)), s(1, (1, 1, 2, 2, 2, 2))]


def element_label(f) -> str:
    return f.label


def h_r_discrepancy(d: int) -> str:
    return (f"h_r taken for 3 <= r <= {2 * d - 1}; the stated upper limit {2 * d + 1} would add "
            f"empty sums (zero polynomials), which cannot be algebraically independent")
