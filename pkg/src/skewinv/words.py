"""Words in the generic skew matrices Y_1..Y_d and their symmetry classes.

A word is a tuple of letters in 1..d standing for the product
Y_{i1} ... Y_{is}.  Cyclic shifts leave every σ_t unchanged; reversal
equals (-1)^s times transposition, so it multiplies σ_t by (-1)^(t*s).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import NamedTuple, Sequence

Word = tuple[int, ...]


def parse_word(text: str) -> Word:
    letters = tuple(int(x) for x in str(text).replace(" ", "").split(",") if x)
    if not letters or any(x < 1 for x in letters):
        raise ValueError(f"bad word {text!r}")
    return letters


def format_word(w: Sequence[int]) -> str:
    return ",".join(str(x) for x in w)


def letter_counts(w: Sequence[int], d: int | None = None) -> tuple[int, ...]:
    d = max(w) if d is None else d
    counts = [0] * d
    for x in w:
        counts[x - 1] += 1
    return tuple(counts)


def rotations(w: Word) -> list[Word]:
    return [w[i:] + w[:i] for i in range(len(w))]


def is_primitive(w: Sequence[int]) -> bool:
    """True unless ``w`` is a proper power u^m, m >= 2."""
    w = tuple(w)
    s = len(w)
    for p in range(1, s):
        if s % p == 0 and w[:p] * (s // p) == w:
            return False
    return True


class CanonicalForm(NamedTuple):
    rep: Word
    trace_sign: int
    reversed: bool
    length: int

    def sigma_sign(self, t: int) -> int:
        """σ_t(w) = sigma_sign(t) * σ_t(rep)."""
        if self.reversed:
            return -1 if (t * self.length) % 2 else 1
        return 1


def canonical_rep(w: Sequence[int]) -> CanonicalForm:
    """Least word among cyclic shifts of ``w`` and of its reversal."""
    w = tuple(w)
    direct = min(rotations(w))
    mirrored = min(rotations(w[::-1]))
    s = len(w)
    if direct <= mirrored:
        return CanonicalForm(direct, 1, False, s)
    return CanonicalForm(mirrored, -1 if s % 2 else 1, True, s)


@dataclass(frozen=True)
class WordClass:
    representative: Word
    members: tuple[Word, ...]
    reversal_parity: int

    @property
    def length(self) -> int:
        return len(self.representative)

    def __str__(self):
        return format_word(self.representative)


def orbit(w: Word) -> tuple[Word, ...]:
    return tuple(sorted(set(rotations(w)) | set(rotations(w[::-1]))))


def enumerate_words(d: int, max_len: int, primitive_only: bool = False,
                    min_len: int = 1) -> list[WordClass]:
    """One class per symmetry orbit of words of length ``min_len..max_len``."""
    if d < 1 or max_len < 1:
        raise ValueError("need d >= 1 and max_len >= 1")
    out = []
    for s in range(min_len, max_len + 1):
        seen = set()
        for w in itertools.product(range(1, d + 1), repeat=s):
            if w in seen:
                continue
            members = orbit(w)
            seen.update(members)
            rep = members[0]
            if primitive_only and not is_primitive(rep):
                continue
            out.append(WordClass(rep, members, s % 2))
    out.sort(key=lambda c: (c.length, c.representative))
    return out


def words_with_counts(counts: Sequence[int], primitive_only: bool = True) -> list[Word]:
    """Canonical representatives of all word classes with the given letter counts."""
    reps = set()
    for perm in _multiset_words(list(counts)):
        rep = canonical_rep(perm).rep
        if not primitive_only or is_primitive(rep):
            reps.add(rep)
    return sorted(reps)


def _multiset_words(counts: list[int], prefix: Word = ()):
    if not any(counts):
        yield prefix
        return
    for k, c in enumerate(counts):
        if c:
            counts[k] -= 1
            yield from _multiset_words(counts, prefix + (k + 1,))
            counts[k] += 1
