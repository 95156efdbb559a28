"""Reproducible checks of the invariant-theoretic results the library encodes.

Each ``criterion_*`` function returns a :class:`CheckResult`; ``run_all``
collects them in a fixed order.  Everything is exact: identities are
polynomial equalities and ranks are computed over Q(i).
"""

from __future__ import annotations

import random
import time
from fractions import Fraction
from dataclasses import dataclass, field
from typing import Callable

from .canonical import BlockSpec, a_block, b_block, build_block, direct_sum, nilpotent_representatives, sigma_profile
from .corealg.poly import Monomial, Polynomial, Variable, hterm, mdeg
from .corealg.scalars import I, simplify
from .errors import NonHomogeneous
from .genmat import (Matrix, cayley_hamilton_residual, generic_skew, sigma, sigmas, skew_from_upper,
                     trace_word, word_product)
from .hspverify import check_certificate, verify_hsp, verify_independence
from .hspverify.catalog import n4_q1
from .hspverify.families import h_r_discrepancy
from .invbase import (LinearCombination, inv, is_decomposable, linear_rank, minimal_generators, prod,
                      quotient_dimension, random_assignment, verify_generation)
from .words import enumerate_words

HALF = Fraction(1, 2)


@dataclass
class CheckResult:
    number: int
    title: str
    passed: bool
    details: dict = field(default_factory=dict)
    seconds: float = 0.0

    def to_json(self, timing: bool = False) -> dict:
        out = {"criterion": self.number, "title": self.title,
               "verdict": "pass" if self.passed else "fail", "details": self.details}
        if timing:
            out["seconds"] = round(self.seconds, 3)
        return out


def _items(checks: dict[str, bool]) -> tuple[bool, dict]:
    return all(checks.values()), {"checks": checks}


# 1 ---------------------------------------------------------------------------------------

def low_degree_identities(sizes=range(2, 6)) -> dict[str, bool]:
    out = {}
    for n in sizes:
        Y1 = generic_skew(n, 1)
        s = sigmas(Y1)
        for t in range(1, n + 1, 2):
            out[f"n={n}: sigma_{t}(Y1) = 0"] = not s[t]
        if n >= 2:
            lhs = trace_word((1, 3, 2), n) + trace_word((1, 2, 3), n)
            out[f"n={n}: tr(Y1Y3Y2) + tr(Y1Y2Y3) = 0"] = not lhs
        for w in ((1,), (1, 2), (1, 2, 3)):
            M = word_product(w, n)
            tr = M.trace()
            res = sigma(2, M) * 2 + (M @ M).trace() - tr * tr
            label = "Y" + "Y".join(map(str, w))
            out[f"n={n}: 2 sigma_2(M) + tr(M^2) - tr(M)^2 = 0, M = {label}"] = not res
    return out


def criterion_1() -> CheckResult:
    ok, det = _items(low_degree_identities())
    return CheckResult(1, "low-degree trace and sigma identities, n = 2..5", ok, det)


# 2 ---------------------------------------------------------------------------------------

def four_trace_identity() -> bool:
    n = 3
    lhs = (trace_word((1, 2, 3, 4), n) * 4 - trace_word((1, 2), n) * trace_word((3, 4), n)
           - trace_word((1, 4), n) * trace_word((2, 3), n))
    return not lhs


def long_trace_decomposability(n: int = 3, d: int = 4, lengths=(4, 5)) -> dict:
    zero, certified, failed = 0, 0, []
    for wc in enumerate_words(d, max(lengths), min_len=min(lengths)):
        f = inv(1, wc.representative, n, d)
        if not f.value:
            zero += 1
            continue
        cert = is_decomposable(f, n, d)
        if cert is not None and cert.replay():
            certified += 1
        else:
            failed.append(wc.representative)
    return {"words_checked": certified + len(failed), "identically_zero": zero,
            "certified": certified, "failed": [list(w) for w in failed]}


def criterion_2() -> CheckResult:
    ident = four_trace_identity()
    dec = long_trace_decomposability()
    return CheckResult(2, "four-matrix trace identity at n = 3 and long traces decompose", ident and not dec["failed"],
                       {"identity_4tr1234": ident, "decomposability": dec})


# 3 ---------------------------------------------------------------------------------------

def n3_generating_set(d: int, n: int = 3) -> list:
    out = [inv(2, (i,), n, d) for i in range(1, d + 1)]
    out += [inv(1, (i, j), n, d) for i in range(1, d + 1) for j in range(i + 1, d + 1)]
    out += [inv(1, (i, j, k), n, d) for i in range(1, d + 1) for j in range(i + 1, d + 1)
            for k in range(j + 1, d + 1)]
    return out


def _profile_by_shape(profile: dict[tuple, int]) -> dict[str, int]:
    out: dict[str, int] = {}
    for m, c in profile.items():
        shape = str(tuple(sorted((x for x in m if x), reverse=True)))
        out[shape] = out.get(shape, 0) + c
    return out


def criterion_3() -> CheckResult:
    rep = minimal_generators(3, 3, 6)
    shapes = _profile_by_shape(rep.profile())
    by_total = rep.count_by_total()
    high = sum(by_total.get(t, 0) for t in (4, 5, 6))
    gen = {}
    for d in (2, 3, 4):
        ok, where = verify_generation(n3_generating_set(d), 3, d, 6)
        gen[f"d={d}"] = ok if ok else f"fails at {tuple(where)}"
    ok = (rep.count == 7 and shapes == {"(2,)": 3, "(1, 1)": 3, "(1, 1, 1)": 1} and high == 0
          and all(v is True for v in gen.values()))
    return CheckResult(3, "minimal generators for n = 3", ok,
                       {"generator_count": rep.count, "generators": [g.label for g in rep.generators],
                        "profile": shapes, "new_in_degrees_4_to_6": high, "verify_generation": gen})


# 4 ---------------------------------------------------------------------------------------

def expected_hterm(n: int, k: int) -> Monomial:
    return Monomial.from_exponents(n, {Variable(2 * i - 1, 2 * i, 1): 2 for i in range(1, k + 1)})


def criterion_4() -> CheckResult:
    rep = minimal_generators(2, 3, 6)
    labels = sorted(g.label for g in rep.generators)
    expected = sorted([inv(2, (i,), 2, 3).label for i in (1, 2, 3)]
                      + [inv(1, (i, j), 2, 3).label for i in (1, 2, 3) for j in (1, 2, 3) if i < j])
    n5, where = verify_generation([inv(2, (1,), 5, 1), inv(4, (1,), 5, 1)], 5, 1, 8)
    hterms = {}
    for n in (5, 6):
        for k in range(1, min(3, n // 2) + 1):
            got = hterm(sigma(2 * k, generic_skew(n, 1)))
            hterms[f"n={n}, k={k}"] = {"hterm": str(got), "ok": got == expected_hterm(n, k)}
    ok = labels == expected and n5 and all(v["ok"] for v in hterms.values())
    return CheckResult(4, "n = 2 generators, n = 5 with one matrix, highest terms", ok,
                       {"n2_d3_generators": labels, "n2_expected": expected,
                        "n5_d1_generation_deg8": n5 if n5 else f"fails at {tuple(where)}",
                        "hterms": hterms})


# 5 ---------------------------------------------------------------------------------------

HSP_RUNS = [("A", 2), ("A", 3), ("A", 4), ("B", None), ("C", None), ("D", None)]


def criterion_5(seed: int = 0, retries: int = 5) -> CheckResult:
    rows, ok = {}, True
    for case, d in HSP_RUNS:
        r = verify_hsp(case, d, seed=seed, retries=retries)
        key = case if d is None else f"{case}, d={d}"
        rows[key] = {"count": r.count, "expected": r.expected_count, "rank": r.independence.rank,
                     "attempts": r.independence.attempts,
                     "certificates": {c.name: c.passed for c in r.nullcone}, "verdict": r.verdict}
        ok = ok and r.passed
    return CheckResult(5, "homogeneous systems of parameters", ok, {"families": rows})


# 6 ---------------------------------------------------------------------------------------

def _half_skew(*upper) -> Matrix:
    return skew_from_upper([simplify(x * HALF) for x in upper])


def literal_matrices() -> dict[str, tuple[Matrix, Matrix]]:
    """(built, literal) pairs for the named canonical matrices."""
    one_i = 1 + I
    return {
        "K3": (build_block(BlockSpec("K_odd", 1)), _half_skew(one_i, 0, -1 + I)),
        "Q1 (n=4)": (direct_sum([BlockSpec("K_odd", 1), BlockSpec("Zero", 1)]).matrix,
                     _half_skew(one_i, 0, 0, -1 + I, 0, 0)),
        "Q2": (build_block(BlockSpec("K_even", 2, 0)), _half_skew(1, I, 0, 0, I, -1)),
        "Q3": (build_block(BlockSpec("K_odd", 2)), _half_skew(1, 0, I, 0, one_i, 0, I, -1 + I, 0, -1)),
    }


def criterion_6() -> CheckResult:
    literals = {k: a == b for k, (a, b) in literal_matrices().items()}
    vanishing = {}
    for n in (3, 4, 5):
        for rep in nilpotent_representatives(n):
            vanishing[f"n={n}: {rep.label}"] = all(not s for s in sigma_profile(rep.matrix))
    nonzeros = {f"p={p}": (a_block(p).nonzero_count(), b_block(p).nonzero_count()) for p in range(1, 7)}
    counts_ok = all(a == b == 2 * (int(k[2:]) - 1) for k, (a, b) in nonzeros.items())
    ok = all(literals.values()) and all(vanishing.values()) and counts_ok
    return CheckResult(6, "canonical forms", ok,
                       {"literals": literals, "sigma_vanishing": vanishing,
                        "nonzeros_A_B": {k: list(v) for k, v in nonzeros.items()}})


# 7 ---------------------------------------------------------------------------------------

SIGMA4_WORDS = [(1, 1, 1, 1, 2, 2, 2, 2), (1, 1, 1, 2, 2, 2, 1, 2), (1, 1, 1, 2, 1, 2, 2, 2),
                (1, 1, 2, 2, 1, 2, 1, 2), (1, 1, 2, 1, 2, 2, 1, 2), (1, 1, 2, 1, 2, 1, 2, 2)]


def sigma3_relation(n: int) -> LinearCombination:
    """σ_3(Y1Y2) + tr(Y1³Y2³) + tr(Y1²Y2²Y1Y2) + tr(Y1²Y2Y1Y2²)."""
    return LinearCombination.of(inv(3, (1, 2), n, 2), inv(1, (1, 1, 1, 2, 2, 2), n, 2),
                                inv(1, (1, 1, 2, 2, 1, 2), n, 2), inv(1, (1, 1, 2, 1, 2, 2), n, 2))


def sigma4_relation(n: int = 5) -> LinearCombination:
    """σ_4(Y1Y2) + σ_2(Y1²Y2²) minus six bidegree-(4,4) traces; decomposable at n = 5."""
    return LinearCombination.of(inv(4, (1, 2), n, 2), inv(2, (1, 1, 2, 2), n, 2),
                                *[(-1, inv(1, w, n, 2)) for w in SIGMA4_WORDS])


def _decomp(target, n: int, d: int) -> dict:
    t0 = time.perf_counter()
    cert = is_decomposable(target, n, d)
    ok = cert is not None and cert.replay()
    return {"target": target.label, "decomposable": ok, "terms": len(cert.combination) if cert else 0,
            "seconds": round(time.perf_counter() - t0, 3)}


def criterion_7() -> CheckResult:
    rows = {
        "n=4 sigma_3 relation": _decomp(sigma3_relation(4), 4, 2),
        "n=5 sigma_3 relation": _decomp(sigma3_relation(5), 5, 2),
        "n=5 sigma_4 relation": _decomp(sigma4_relation(5), 5, 2),
        "n=5 tr(Y1^5 Y2)": _decomp(inv(1, (1, 1, 1, 1, 1, 2), 5, 2), 5, 2),
    }
    ch = {f"n={n}": cayley_hamilton_residual(n).is_zero() for n in range(2, 6)}
    for r in rows.values():
        r.pop("seconds")  # keep the payload deterministic
    ok = all(r["decomposable"] for r in rows.values()) and all(ch.values())
    return CheckResult(7, "congruences and Cayley-Hamilton", ok,
                       {"decompositions": rows, "cayley_hamilton_zero": ch})


# 8 ---------------------------------------------------------------------------------------

def section7_set(n: int = 4) -> list:
    return [inv(1, (1, 1, 2, 2), n, 2), inv(2, (1, 2), n, 2),
            prod(inv(2, (1,), n, 2), inv(2, (2,), n, 2)), prod(inv(1, (1, 2), n, 2), inv(1, (1, 2), n, 2))]


def criterion_8() -> CheckResult:
    rank = linear_rank(section7_set())
    q = quotient_dimension([inv(1, (1, 1, 2, 2), 4, 2), inv(2, (1, 2), 4, 2)], 4, 2)
    return CheckResult(8, "rank computation in bidegree (2,2), n = 4", rank == 4 and q == 2,
                       {"linear_rank": rank, "quotient_dimension_22": q})


# 9 ---------------------------------------------------------------------------------------

def trace_sign_record(max_s: int = 6) -> dict:
    """tr(Y1...Ys) at n = 2 against 2 x_1...x_s and 2(-1)^(s/2) x_1...x_s."""
    rows = []
    for s in range(2, max_s + 1, 2):
        w = tuple(range(1, s + 1))
        mono = Polynomial.const(2, 1)
        for k in w:
            mono = mono * Polynomial.var(2, 1, 2, k)
        direct = trace_word(w, 2)
        rows.append({"s": s, "direct": str(direct), "matches_stated": direct == mono.scale(2),
                     "matches_signed": direct == mono.scale(2 * (-1) ** (s // 2))})
    return {"item": "n = 2 trace formula sign",
            "stated": "tr(Y_i1...Y_is) = 2 x_i1...x_is for even s",
            "resolution": "direct multiplication is used: 2(-1)^(s/2) x_i1...x_is",
            "evidence": rows, "ok": all(r["matches_signed"] for r in rows)}


def hr_range_record(d: int = 3) -> dict:
    empty = [r for r in range(3, 2 * d + 2)
             if not [i for i in range(1, d + 1) if i < r - i <= d]]
    return {"item": "h_r index range for family A",
            "stated": "3 <= r <= 2d+1", "resolution": h_r_discrepancy(d),
            "evidence": {"d": d, "empty_r": empty}, "ok": empty == [2 * d, 2 * d + 1]}


def sigma_index_record(seed: int = 0) -> dict:
    """Σ U^(5-i) σ_i(.) at n = 5 with σ of U (vanishes) versus σ of V (does not)."""
    a = random_assignment(random.Random(seed), 5, 2)
    U, V = a.matrices

    def residual(src: Matrix) -> Matrix:
        s = sigmas(src)
        acc, power = Matrix.zeros(5), Matrix.identity(5)
        for i in range(5, -1, -1):
            acc = acc + power.scale(s[i])
            power = power @ U
        return acc

    with_u, with_v = residual(U).is_zero(), residual(V).is_zero()
    return {"item": "Cayley-Hamilton index at n = 5",
            "stated": "sum U^(5-i) sigma_i(V) = 0",
            "resolution": "implemented with sigma_i(U)",
            "evidence": {"seed": seed, "sigma_of_U_vanishes": with_u, "sigma_of_V_vanishes": with_v,
                         "symbolic_sigma_of_U_vanishes": cayley_hamilton_residual(5).is_zero()},
            "ok": with_u and not with_v}


def discrepancy_notes(seed: int = 0) -> list[dict]:
    return [trace_sign_record(), hr_range_record(), sigma_index_record(seed)]


def criterion_9(seed: int = 0) -> CheckResult:
    notes = discrepancy_notes(seed)
    return CheckResult(9, "discrepancy records", len(notes) == 3 and all(x["ok"] for x in notes),
                       {"notes": notes})


# 10 --------------------------------------------------------------------------------------

def criterion_10(seed: int = 0) -> CheckResult:
    mutated = check_certificate(n4_q1().without_substitution(0, 2), stop_at_first=True)
    named = (not mutated.passed) and bool(mutated.first_failure)
    s = inv(2, (1,), 3, 1)
    dep = verify_independence([s.value, s.value * s.value], seed=seed)
    try:
        mdeg(Polynomial.var(3, 1, 2, 1) + Polynomial.var(3, 1, 2, 1) ** 2)
        raised = False
    except NonHomogeneous:
        raised = True
    ok = named and dep.status == "inconclusive" and raised
    return CheckResult(10, "negative controls", ok,
                       {"mutated_certificate": {"passed": mutated.passed, "failed_claim": mutated.first_failure.claim if mutated.first_failure else None},
                        "dependent_pair": dep.status, "nonhomogeneous_mdeg_raises": raised})


CRITERIA: dict[int, Callable[..., CheckResult]] = {
    1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5,
    6: criterion_6, 7: criterion_7, 8: criterion_8, 9: criterion_9, 10: criterion_10,
}
SEEDED = {5, 9, 10}


def run_criterion(number: int, seed: int = 0) -> CheckResult:
    t0 = time.perf_counter()
    fn = CRITERIA[number]
    res = fn(seed=seed) if number in SEEDED else fn()
    res.seconds = time.perf_counter() - t0
    return res


def run_all(seed: int = 0, numbers=None) -> list[CheckResult]:
    return [run_criterion(k, seed) for k in (numbers or sorted(CRITERIA))]


def identities_suite() -> list[CheckResult]:
    """Low-degree identities, the four-trace identity, Cayley-Hamilton and the bidegree (2,2) rank."""
    ch = {f"n={n}": cayley_hamilton_residual(n).is_zero() for n in range(2, 6)}
    return [run_criterion(1), run_criterion(2),
            CheckResult(7, "Cayley-Hamilton residual", all(ch.values()), {"cayley_hamilton_zero": ch}),
            run_criterion(8)]
